#pragma once

#include <resonance/exterior.hpp>
#include <resonance/rational.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace resonance {

// Dense matrix over the rationals. Labels are optional and carried only for
// report output.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const {
        return entries_[static_cast<std::size_t>(r) * cols_ + c];
    }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> entries_;
};

// Incremental reduced row echelon form. Insert rows one at a time; the
// accumulator keeps a mutually reduced pivot set with monic leading entries.
class RrefAccumulator {
public:
    explicit RrefAccumulator(int cols) : cols_(cols) {}

    // Returns true when the row was independent and became a pivot row.
    bool insert(std::vector<Rational> row);

    // In-place reduction of an arbitrary vector against the pivot rows.
    void reduce(std::vector<Rational>& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }
    const std::vector<int>& pivot_columns() const { return pivot_cols_; }
    std::vector<int> free_columns() const;

private:
    int cols_;
    std::vector<std::vector<Rational>> rows_;  // sorted by pivot column
    std::vector<int> pivot_cols_;
};

int rank(const RationalMatrix& m);

// Exact determinant via fraction-free Bareiss elimination on the
// denominator-cleared integer matrix. Throws std::invalid_argument for
// non-square input.
Rational determinant(const RationalMatrix& m);

// Basis of the right kernel { v : M v = 0 }, normalized so each vector's
// first nonzero coordinate is 1 and the set is in reduced column echelon
// form. Empty exactly when rank == cols.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

std::vector<Rational> mat_vec(const RationalMatrix& m, std::span<const Rational> v);

// Canonical normal form of a span: reduced vectors, leading entry 1,
// pairwise distinct leading coordinates, sorted by leading coordinate.
std::vector<std::vector<Rational>> column_echelon_normalize(
    std::vector<std::vector<Rational>> vectors);

// Linear form sum_v c_v * x_v in the point coordinates; no constant term.
class LinearForm {
public:
    void add(int var, const Rational& coeff);
    Rational evaluate(std::span<const Rational> point) const;
    Rational coefficient(int var) const;
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<int, Rational>& coefficients() const { return coeffs_; }
    LinearForm negated() const;

    std::string to_string(int n) const;  // renders variables as a(p,q)

    friend bool operator==(const LinearForm&, const LinearForm&) = default;

private:
    std::map<int, Rational> coeffs_;
};

// Matrix of linear forms in the N point variables, stored sparsely.
// Specializing at a point evaluates every entry.
class LinFormMatrix {
public:
    LinFormMatrix() = default;
    LinFormMatrix(int rows, int cols, int nvars);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }

    void add(int r, int c, int var, const Rational& coeff);
    void set(int r, int c, LinearForm f);
    const LinearForm& entry(int r, int c) const;  // zero form when absent

    const std::map<std::pair<int, int>, LinearForm>& entries() const { return entries_; }

    std::vector<Monomial> row_monomials;
    std::vector<std::string> col_labels;

private:
    int rows_ = 0;
    int cols_ = 0;
    int nvars_ = 0;
    std::map<std::pair<int, int>, LinearForm> entries_;
};

RationalMatrix specialize(const LinFormMatrix& m, std::span<const Rational> point);

// Sparse exact elimination over arbitrary column keys. Rows are
// content-normalized integer combinations; pivots are claimed by leading key
// in insertion order, which keeps results deterministic. Used for the large
// Hilbert-series spans and for the kernel ranks of specialized psi matrices.
struct SparseTerm {
    std::uint64_t key;
    Integer value;
};
using SparseRow = std::vector<SparseTerm>;  // ascending keys, nonzero values

class SparseEliminator {
public:
    // Reduces against existing pivots; surviving rows become pivots.
    void add_row(SparseRow row);

    int rank() const { return static_cast<int>(pivots_.size()); }
    const std::map<std::uint64_t, SparseRow>& pivots() const { return pivots_; }

private:
    std::map<std::uint64_t, SparseRow> pivots_;
};

}  // namespace resonance
