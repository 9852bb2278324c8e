#include <resonance/linalg.hpp>

#include <algorithm>
#include <stdexcept>

namespace resonance {

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("RationalMatrix: negative shape");
    entries_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

bool RrefAccumulator::insert(std::vector<Rational> row) {
    if (static_cast<int>(row.size()) != cols_)
        throw std::invalid_argument("RrefAccumulator: row length mismatch");
    reduce(row);
    int lead = -1;
    for (int c = 0; c < cols_; ++c) {
        if (row[c] != 0) {
            lead = c;
            break;
        }
    }
    if (lead < 0) return false;

    const Rational inv = 1 / row[lead];
    for (int c = lead; c < cols_; ++c) {
        if (row[c] != 0) row[c] *= inv;
    }
    // Keep the pivot set mutually reduced.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational f = rows_[i][lead];
        if (f == 0) continue;
        for (int c = lead; c < cols_; ++c) {
            if (row[c] != 0) rows_[i][c] -= f * row[c];
        }
    }
    const auto pos = std::lower_bound(pivot_cols_.begin(), pivot_cols_.end(), lead);
    const auto idx = static_cast<std::size_t>(pos - pivot_cols_.begin());
    pivot_cols_.insert(pos, lead);
    rows_.insert(rows_.begin() + idx, std::move(row));
    return true;
}

void RrefAccumulator::reduce(std::vector<Rational>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const int p = pivot_cols_[i];
        const Rational f = v[p];
        if (f == 0) continue;
        const auto& pivot = rows_[i];
        for (int c = p; c < cols_; ++c) {
            if (pivot[c] != 0) v[c] -= f * pivot[c];
        }
    }
}

std::vector<int> RrefAccumulator::free_columns() const {
    std::vector<int> out;
    std::size_t k = 0;
    for (int c = 0; c < cols_; ++c) {
        if (k < pivot_cols_.size() && pivot_cols_[k] == c) {
            ++k;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

int rank(const RationalMatrix& m) {
    RrefAccumulator acc(m.cols());
    std::vector<Rational> row(m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) row[c] = m.at(r, c);
        acc.insert(row);
        if (acc.rank() == m.cols()) break;
    }
    return acc.rank();
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const int n = m.rows();
    if (n == 0) return Rational(1);

    // Clear denominators row by row, run integer Bareiss, divide back out.
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Integer scale = 1;
    for (int r = 0; r < n; ++r) {
        Integer lcm = 1;
        for (int c = 0; c < n; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                                            m.at(r, c).get_den().get_mpz_t());
        for (int c = 0; c < n; ++c) {
            const Rational v = m.at(r, c) * Rational(lcm);
            a[r][c] = v.get_num();
        }
        scale *= lcm;
    }

    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r) {
                if (a[r][k] != 0) {
                    swap_row = r;
                    break;
                }
            }
            if (swap_row < 0) return Rational(0);
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                Integer t = a[r][c] * a[k][k] - a[r][k] * a[k][c];
                mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][k] = 0;
        }
        prev = a[k][k];
    }
    Rational det(a[n - 1][n - 1], scale);
    det.canonicalize();
    return sign > 0 ? det : Rational(-det);
}

std::vector<std::vector<Rational>> column_echelon_normalize(
    std::vector<std::vector<Rational>> vectors) {
    std::vector<std::vector<Rational>> done;
    while (!vectors.empty()) {
        // Pick the vector with the smallest leading coordinate.
        std::size_t best = vectors.size();
        int best_lead = -1;
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            int lead = -1;
            for (std::size_t c = 0; c < vectors[i].size(); ++c) {
                if (vectors[i][c] != 0) {
                    lead = static_cast<int>(c);
                    break;
                }
            }
            if (lead < 0) continue;  // zero vector, dropped
            if (best == vectors.size() || lead < best_lead) {
                best = i;
                best_lead = lead;
            }
        }
        if (best == vectors.size()) break;

        std::vector<Rational> v = std::move(vectors[best]);
        vectors.erase(vectors.begin() + static_cast<std::ptrdiff_t>(best));
        const Rational inv = 1 / v[best_lead];
        for (auto& x : v) x *= inv;
        for (auto& w : vectors) {
            const Rational f = w[best_lead];
            if (f == 0) continue;
            for (std::size_t c = 0; c < w.size(); ++c) w[c] -= f * v[c];
        }
        for (auto& w : done) {
            const Rational f = w[best_lead];
            if (f == 0) continue;
            for (std::size_t c = 0; c < w.size(); ++c) w[c] -= f * v[c];
        }
        done.push_back(std::move(v));
    }
    return done;
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    RrefAccumulator acc(m.cols());
    std::vector<Rational> row(m.cols());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) row[c] = m.at(r, c);
        acc.insert(row);
        if (acc.rank() == m.cols()) break;
    }

    const auto& pivots = acc.pivot_columns();
    std::vector<std::vector<Rational>> out;
    for (int f : acc.free_columns()) {
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = -acc.rows()[i][f];
        }
        out.push_back(std::move(v));
    }
    return column_echelon_normalize(std::move(out));
}

std::vector<Rational> mat_vec(const RationalMatrix& m, std::span<const Rational> v) {
    if (static_cast<int>(v.size()) != m.cols())
        throw std::invalid_argument("mat_vec: vector length mismatch");
    std::vector<Rational> out(m.rows(), Rational(0));
    for (int r = 0; r < m.rows(); ++r) {
        Rational acc(0);
        for (int c = 0; c < m.cols(); ++c) {
            if (m.at(r, c) != 0 && v[c] != 0) acc += m.at(r, c) * v[c];
        }
        out[r] = acc;
    }
    return out;
}

void LinearForm::add(int var, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = coeffs_.emplace(var, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Rational LinearForm::evaluate(std::span<const Rational> point) const {
    Rational acc(0);
    for (const auto& [var, c] : coeffs_) {
        if (point[var] != 0) acc += c * point[var];
    }
    return acc;
}

Rational LinearForm::coefficient(int var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

LinearForm LinearForm::negated() const {
    LinearForm out;
    for (const auto& [var, c] : coeffs_) out.coeffs_.emplace(var, -c);
    return out;
}

std::string LinearForm::to_string(int n) const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [var, c] : coeffs_) {
        std::string coef;
        if (c == 1) {
            coef = first ? "" : "+";
        } else if (c == -1) {
            coef = "-";
        } else {
            coef = (c > 0 && !first) ? "+" + rational_to_string(c) + "*"
                                     : rational_to_string(c) + "*";
        }
        out += coef + "a(" + label_name(label_of(var, n)) + ")";
        first = false;
    }
    return out;
}

namespace {
const LinearForm kZeroForm{};
}

LinFormMatrix::LinFormMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars) {
    if (rows < 0 || cols < 0 || nvars < 0)
        throw std::invalid_argument("LinFormMatrix: negative shape");
}

void LinFormMatrix::add(int r, int c, int var, const Rational& coeff) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("LinFormMatrix::add: index out of range");
    auto& form = entries_[{r, c}];
    form.add(var, coeff);
    if (form.is_zero()) entries_.erase({r, c});
}

void LinFormMatrix::set(int r, int c, LinearForm f) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("LinFormMatrix::set: index out of range");
    if (f.is_zero()) {
        entries_.erase({r, c});
    } else {
        entries_[{r, c}] = std::move(f);
    }
}

const LinearForm& LinFormMatrix::entry(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? kZeroForm : it->second;
}

RationalMatrix specialize(const LinFormMatrix& m, std::span<const Rational> point) {
    if (static_cast<int>(point.size()) != m.nvars())
        throw std::invalid_argument("specialize: point has wrong number of coordinates");
    RationalMatrix out(m.rows(), m.cols());
    for (const auto& [rc, form] : m.entries()) {
        out.at(rc.first, rc.second) = form.evaluate(point);
    }
    return out;
}

namespace {

// Divide a row by the gcd of its entries and make the leading entry positive.
void normalize_row(SparseRow& row) {
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& t : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.value.get_mpz_t());
        if (g == 1) break;
    }
    const bool flip = row.front().value < 0;
    if (g == 1 && !flip) return;
    for (auto& t : row) {
        if (g != 1) mpz_divexact(t.value.get_mpz_t(), t.value.get_mpz_t(), g.get_mpz_t());
        if (flip) t.value = -t.value;
    }
}

// row := a*row - b*pivot, merged by key; the shared leading key cancels.
SparseRow combine(const SparseRow& row, const SparseRow& pivot, const Integer& a,
                  const Integer& b) {
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].key < pivot[j].key)) {
            out.push_back({row[i].key, a * row[i].value});
            ++i;
        } else if (i == row.size() || pivot[j].key < row[i].key) {
            out.push_back({pivot[j].key, -b * pivot[j].value});
            ++j;
        } else {
            Integer v = a * row[i].value - b * pivot[j].value;
            if (v != 0) out.push_back({row[i].key, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void SparseEliminator::add_row(SparseRow row) {
    while (!row.empty()) {
        auto it = pivots_.find(row.front().key);
        if (it == pivots_.end()) {
            normalize_row(row);
            pivots_.emplace(row.front().key, std::move(row));
            return;
        }
        const SparseRow& pivot = it->second;
        Integer g;
        mpz_gcd(g.get_mpz_t(), pivot.front().value.get_mpz_t(), row.front().value.get_mpz_t());
        Integer a = pivot.front().value / g;
        Integer b = row.front().value / g;
        row = combine(row, pivot, a, b);
        normalize_row(row);
    }
}

}  // namespace resonance
