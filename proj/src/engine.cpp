#include <resonance/engine.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace resonance {

LinFormMatrix psi_matrix(const Presentation& p) {
    if (!p.relations_independent)
        throw std::invalid_argument("psi_matrix: relations are not linearly independent");
    const std::vector<Monomial> rows = basis_monomials(3, p.N);
    std::unordered_map<std::uint64_t, int> row_of;
    row_of.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r].bits()] = static_cast<int>(r);

    LinFormMatrix m(static_cast<int>(rows.size()), static_cast<int>(p.relations.size()), p.N);
    m.row_monomials = rows;
    m.col_labels = p.relation_names;
    for (std::size_t c = 0; c < p.relations.size(); ++c) {
        for (const auto& [mono, coeff] : p.relations[c].terms()) {
            for (int g = 0; g < p.N; ++g) {
                if (mono.contains(g)) continue;
                const SignedMonomial w = wedge_monomials(Monomial::from_indices({g}), mono);
                Rational entry = coeff;
                if (w.sign < 0) entry = -entry;
                m.add(row_of.at(w.monomial.bits()), static_cast<int>(c), g, entry);
            }
        }
    }
    return m;
}

ResonanceEngine::ResonanceEngine(Presentation p)
    : pres_(std::move(p)),
      psi_(psi_matrix(pres_)),
      e2_basis_(basis_monomials(2, pres_.N)),
      i2_rref_(static_cast<int>(e2_basis_.size())) {
    std::unordered_map<std::uint64_t, int> col_of;
    for (std::size_t c = 0; c < e2_basis_.size(); ++c)
        col_of[e2_basis_[c].bits()] = static_cast<int>(c);
    for (const ExtElement& rel : pres_.relations) {
        std::vector<Rational> row(e2_basis_.size(), Rational(0));
        for (const auto& [mono, coeff] : rel.terms()) row[col_of.at(mono.bits())] = coeff;
        i2_rref_.insert(std::move(row));
    }
    a2_coords_ = i2_rref_.free_columns();
}

namespace {

// Clears denominators and converts to the sparse integer row format.
SparseRow to_integer_row(const std::vector<std::pair<std::uint64_t, Rational>>& entries) {
    Integer lcm = 1;
    for (const auto& [key, v] : entries)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    SparseRow row;
    row.reserve(entries.size());
    for (const auto& [key, v] : entries) {
        Rational scaled = v * Rational(lcm);
        row.push_back({key, Integer(scaled.get_num())});
    }
    return row;
}

}  // namespace

MembershipReport ResonanceEngine::membership(const Point& a, bool with_oracle) const {
    if (static_cast<int>(a.size()) != pres_.N)
        throw std::invalid_argument("membership: point has " + std::to_string(a.size()) +
                                    " coordinates, presentation has " + std::to_string(pres_.N));
    MembershipReport rep;
    rep.point = a;
    rep.is_zero_point = is_zero_point(a);

    const int ncols = psi_.cols();

    // Specialized rows, grouped by row monomial; zero rows never materialize.
    std::map<int, std::vector<std::pair<std::uint64_t, Rational>>> rows;
    for (const auto& [rc, form] : psi_.entries()) {
        Rational v = form.evaluate(a);
        if (v != 0) rows[rc.first].push_back({static_cast<std::uint64_t>(rc.second), std::move(v)});
    }

    SparseEliminator elim;
    for (auto& [r, entries] : rows) elim.add_row(to_integer_row(entries));
    const int rk = elim.rank();
    rep.kernel_dim = ncols - rk;

    if (rep.kernel_dim > 0) {
        RationalMatrix echelon(rk, ncols);
        int r = 0;
        for (const auto& [lead, row] : elim.pivots()) {
            for (const auto& t : row) echelon.at(r, static_cast<int>(t.key)) = Rational(t.value);
            ++r;
        }
        rep.kernel_vectors = kernel_basis(echelon);
    }

    rep.resonant = rep.is_zero_point || rep.kernel_dim > 0;
    if (rep.is_zero_point)
        rep.notes = "zero point: resonant by convention (H1(A,delta_0) = A1)";
    if (with_oracle) rep.h1_direct = h1_direct(a);
    return rep;
}

int ResonanceEngine::h1_direct(const Point& a) const {
    if (static_cast<int>(a.size()) != pres_.N)
        throw std::invalid_argument("h1_direct: point length mismatch");
    if (is_zero_point(a)) return pres_.N;  // delta_0 = 0, so H^1 = A^1

    // delta_a : A^1 -> A^2 in quotient coordinates. Build one column per
    // generator by reducing a * e_g modulo I^2.
    std::unordered_map<std::uint64_t, int> col_of;
    for (std::size_t c = 0; c < e2_basis_.size(); ++c)
        col_of[e2_basis_[c].bits()] = static_cast<int>(c);

    ExtElement a_elem(1);
    for (int g = 0; g < pres_.N; ++g)
        if (a[g] != 0) a_elem.add_term(Monomial::from_indices({g}), a[g]);

    const int a2_dim = static_cast<int>(a2_coords_.size());
    RationalMatrix d(a2_dim, pres_.N);
    for (int g = 0; g < pres_.N; ++g) {
        const ExtElement w = a_elem * ExtElement::generator(g);
        std::vector<Rational> coords(e2_basis_.size(), Rational(0));
        for (const auto& [mono, coeff] : w.terms()) coords[col_of.at(mono.bits())] = coeff;
        i2_rref_.reduce(coords);
        for (int i = 0; i < a2_dim; ++i) d.at(i, g) = coords[a2_coords_[i]];
    }

    const int ker = pres_.N - rank(d);
    return ker - 1;  // im(delta_a : A^0 -> A^1) = span{a}, one-dimensional
}

std::vector<std::int64_t> ResonanceEngine::hilbert_dims(int kmax) const {
    if (kmax < 0 || kmax > pres_.N)
        throw std::invalid_argument("hilbert_dims: kmax must lie in [0, N]");
    std::vector<std::int64_t> dims;
    dims.push_back(1);
    if (kmax >= 1) dims.push_back(pres_.N);

    for (int k = 2; k <= kmax; ++k) {
        SparseEliminator elim;
        const std::vector<Monomial> lower = basis_monomials(k - 2, pres_.N);
        // Single-term relations first: their rows are immediate width-1
        // pivots, which keeps the later reductions cheap.
        for (int pass = 0; pass < 2; ++pass) {
            for (const ExtElement& rel : pres_.relations) {
                const bool single = rel.terms().size() == 1;
                if ((pass == 0) != single) continue;
                for (const Monomial& m : lower) {
                    std::vector<std::pair<std::uint64_t, Rational>> entries;
                    for (const auto& [t, coeff] : rel.terms()) {
                        const SignedMonomial w = wedge_monomials(m, t);
                        if (w.sign == 0) continue;
                        Rational c = coeff;
                        if (w.sign < 0) c = -c;
                        entries.push_back({w.monomial.bits(), c});
                    }
                    if (entries.empty()) continue;
                    std::sort(entries.begin(), entries.end(),
                              [](const auto& x, const auto& y) { return x.first < y.first; });
                    elim.add_row(to_integer_row(entries));
                }
            }
        }
        dims.push_back(binomial(pres_.N, k) - elim.rank());
    }
    return dims;
}

Point random_point(SplitMix64& rng, int N, bool exclude_zero) {
    Point a(N, Rational(0));
    do {
        for (int i = 0; i < N; ++i) a[i] = Rational(rng.uniform(-9, 9));
    } while (exclude_zero && is_zero_point(a));
    return a;
}

Point random_point_in_span(SplitMix64& rng, const std::vector<Point>& basis, bool exclude_zero) {
    if (basis.empty()) throw std::invalid_argument("random_point_in_span: empty basis");
    const int N = static_cast<int>(basis.front().size());
    Point a(N, Rational(0));
    do {
        for (auto& c : a) c = 0;
        for (const Point& b : basis) {
            const long coeff = rng.uniform(-9, 9);
            if (coeff == 0) continue;
            for (int i = 0; i < N; ++i) {
                if (b[i] != 0) a[i] += Rational(coeff) * b[i];
            }
        }
    } while (exclude_zero && is_zero_point(a));
    return a;
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    const int nthreads = std::min(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace resonance
