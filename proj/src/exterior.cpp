#include <resonance/exterior.hpp>

#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace resonance {

long SplitMix64::uniform(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return lo + static_cast<long>(v % span);
}

long SplitMix64::nonzero_uniform(long lo, long hi) {
    long v = uniform(lo, hi);
    while (v == 0) v = uniform(lo, hi);
    return v;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    SplitMix64 mix(master ^ (stream * 0x9e3779b97f4a7c15ULL));
    mix.next();
    return mix.next() ^ (index * 0xbf58476d1ce4e5b9ULL) ^ SplitMix64(index).next();
}

int worker_count() {
    if (const char* env = std::getenv("RESONANCE_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
}

std::string rational_to_string(const Rational& r) {
    return r.get_str();
}

int generator_count(int n) {
    if (n < 2) throw std::invalid_argument("generator_count: need n >= 2");
    return n * (n - 1);
}

int flat_index(const GeneratorLabel& g, int n) {
    if (g.p < 1 || g.p > n || g.q < 1 || g.q > n || g.p == g.q)
        throw std::invalid_argument("flat_index: invalid generator label (" + std::to_string(g.p) +
                                    "," + std::to_string(g.q) + ") for n=" + std::to_string(n));
    return (g.p - 1) * (n - 1) + (g.q - 1) - (g.q > g.p ? 1 : 0);
}

GeneratorLabel label_of(int index, int n) {
    if (index < 0 || index >= generator_count(n))
        throw std::invalid_argument("label_of: index out of range");
    const int p = index / (n - 1) + 1;
    const int r = index % (n - 1);
    const int q = r + 1 + (r + 1 >= p ? 1 : 0);
    return {p, q};
}

std::string label_name(const GeneratorLabel& g) {
    return std::to_string(g.p) + "," + std::to_string(g.q);
}

Monomial Monomial::from_indices(std::span<const int> indices) {
    std::uint64_t bits = 0;
    for (int i : indices) {
        if (i < 0 || i >= kMaxGeneratorBits)
            throw std::invalid_argument("Monomial: generator index out of range");
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (bits & bit) throw std::invalid_argument("Monomial: repeated generator index");
        bits |= bit;
    }
    return from_bits(bits);
}

Monomial Monomial::from_indices(std::initializer_list<int> indices) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()));
}

int Monomial::degree() const {
    return std::popcount(bits_);
}

std::vector<int> Monomial::indices() const {
    std::vector<int> out;
    out.reserve(degree());
    std::uint64_t rem = bits_;
    while (rem) {
        out.push_back(std::countr_zero(rem));
        rem &= rem - 1;
    }
    return out;
}

std::string monomial_name(const Monomial& m, int n) {
    if (m.degree() == 0) return "1";
    std::string out;
    for (int i : m.indices()) out += "e(" + label_name(label_of(i, n)) + ")";
    return out;
}

SignedMonomial wedge_monomials(const Monomial& m1, const Monomial& m2) {
    if (!m1.disjoint(m2)) return {};
    int inversions = 0;
    std::uint64_t rem = m1.bits();
    while (rem) {
        const int i = std::countr_zero(rem);
        rem &= rem - 1;
        const std::uint64_t below = (std::uint64_t{1} << i) - 1;
        inversions += std::popcount(m2.bits() & below);
    }
    return {(inversions % 2 == 0) ? 1 : -1, m1.unite(m2)};
}

ExtElement ExtElement::generator(int index) {
    return term(Monomial::from_indices({index}), Rational(1));
}

ExtElement ExtElement::term(const Monomial& m, const Rational& coeff) {
    ExtElement e(m.degree());
    e.add_term(m, coeff);
    return e;
}

Rational ExtElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ExtElement::add_term(const Monomial& m, const Rational& coeff) {
    if (m.degree() != degree_)
        throw std::logic_error("ExtElement: term degree mismatch (element is homogeneous)");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && terms_.empty()) degree_ = o.degree_;
    if (degree_ != o.degree_)
        throw std::logic_error("ExtElement: degree mismatch in addition");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && terms_.empty()) degree_ = o.degree_;
    if (degree_ != o.degree_)
        throw std::logic_error("ExtElement: degree mismatch in subtraction");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ExtElement operator*(const ExtElement& a, const ExtElement& b) {
    ExtElement out(a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            const SignedMonomial w = wedge_monomials(ma, mb);
            if (w.sign == 0) continue;
            Rational c = ca * cb;
            if (w.sign < 0) c = -c;
            out.add_term(w.monomial, c);
        }
    }
    return out;
}

ExtElement operator*(const Rational& c, ExtElement a) {
    if (c == 0) return ExtElement(a.degree());
    for (auto& [m, coeff] : a.terms_) coeff *= c;
    return a;
}

std::vector<Monomial> basis_monomials(int degree, int N) {
    if (N < 0 || N >= kMaxGeneratorBits)
        throw std::invalid_argument("basis_monomials: N out of range");
    if (degree < 0) throw std::invalid_argument("basis_monomials: negative degree");
    std::vector<Monomial> out;
    if (degree > N) return out;  // E^k = 0 above the top degree
    out.reserve(static_cast<std::size_t>(binomial(N, degree)));
    if (degree == 0) {
        out.push_back(Monomial());
        return out;
    }
    // Gosper's hack walks the C(N, degree) masks in increasing value = colex.
    std::uint64_t v = (std::uint64_t{1} << degree) - 1;
    const std::uint64_t top = std::uint64_t{1} << N;
    while (v < top) {
        out.push_back(Monomial::from_bits(v));
        const std::uint64_t c = v & -v;
        const std::uint64_t r = v + c;
        if (r >= top || r < v) break;
        v = (((r ^ v) >> 2) / c) | r;
    }
    return out;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

}  // namespace resonance
