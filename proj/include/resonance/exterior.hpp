#pragma once

#include <resonance/rational.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace resonance {

// Degree-one generators e_{p,q}, 1 <= p != q <= n. Flat indices enumerate the
// ordered pairs (p,q) lexicographically, so row/column labels are
// reproducible across runs.
struct GeneratorLabel {
    int p = 0;
    int q = 0;

    friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

inline constexpr int kMaxGeneratorBits = 64;

int generator_count(int n);  // n(n-1)

// Position of (p,q) among lexicographically ordered distinct pairs.
// Throws std::invalid_argument for p == q or out-of-range labels.
int flat_index(const GeneratorLabel& g, int n);
GeneratorLabel label_of(int index, int n);

std::string label_name(const GeneratorLabel& g);  // "p,q"

// Square-free exterior monomial stored as a bitmask over generator indices.
// Monomials compare by mask value, i.e. colex order on index sets; that is
// the one basis order used everywhere.
class Monomial {
public:
    Monomial() = default;

    static Monomial from_bits(std::uint64_t bits) {
        Monomial m;
        m.bits_ = bits;
        return m;
    }

    // Indices may be given in any order; repeated indices are rejected.
    static Monomial from_indices(std::span<const int> indices);
    static Monomial from_indices(std::initializer_list<int> indices);

    int degree() const;
    bool contains(int index) const { return (bits_ >> index) & 1u; }
    bool disjoint(const Monomial& o) const { return (bits_ & o.bits_) == 0; }
    Monomial unite(const Monomial& o) const { return from_bits(bits_ | o.bits_); }
    std::vector<int> indices() const;
    std::uint64_t bits() const { return bits_; }

    friend auto operator<=>(const Monomial& a, const Monomial& b) = default;

private:
    std::uint64_t bits_ = 0;
};

std::string monomial_name(const Monomial& m, int n);  // "e(1,2)e(2,1)..."

// sign == 0 means the product vanished (shared generator).
struct SignedMonomial {
    int sign = 0;
    Monomial monomial;
};

// Sorted union with sign (-1)^inv, inv = #{(i,j) : i in m1, j in m2, i > j}.
SignedMonomial wedge_monomials(const Monomial& m1, const Monomial& m2);

// Homogeneous element of the exterior algebra: sparse map monomial -> nonzero
// rational. Degree mixing is rejected; every object here is homogeneous.
class ExtElement {
public:
    explicit ExtElement(int degree = 0) : degree_(degree) {}

    static ExtElement generator(int index);
    static ExtElement term(const Monomial& m, const Rational& coeff);

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;

    // Merges into the term map and drops cancelled coefficients.
    void add_term(const Monomial& m, const Rational& coeff);

    ExtElement& operator+=(const ExtElement& o);
    ExtElement& operator-=(const ExtElement& o);
    friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
    friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }

    // Exterior product; degrees add, signs follow wedge_monomials.
    friend ExtElement operator*(const ExtElement& a, const ExtElement& b);
    friend ExtElement operator*(const Rational& c, ExtElement a);

    friend bool operator==(const ExtElement& a, const ExtElement& b) = default;

private:
    int degree_ = 0;
    std::map<Monomial, Rational> terms_;
};

// All C(N, degree) monomials in colex order (increasing bitmask value).
std::vector<Monomial> basis_monomials(int degree, int N);

// Exact binomial coefficient; fits in int64 for every size used here (N <= 56).
std::int64_t binomial(int n, int k);

}  // namespace resonance
