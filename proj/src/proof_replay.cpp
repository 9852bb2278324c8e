#include <resonance/proof_replay.hpp>

#include <resonance/theorem.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace resonance {

namespace {

Rational rational_pow(const Rational& base, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    out.canonicalize();
    return out;
}

// Exact log2 of a positive rational that is a power of two.
std::optional<long> exact_log2(const Rational& r) {
    if (r <= 0) return std::nullopt;
    const Integer& num = r.get_num();
    const Integer& den = r.get_den();
    if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1)
        return static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) - 1;
    if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1)
        return -(static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1);
    return std::nullopt;
}

std::unordered_map<std::uint64_t, int> row_index_of(const LinFormMatrix& psi) {
    std::unordered_map<std::uint64_t, int> out;
    out.reserve(psi.row_monomials.size());
    for (std::size_t r = 0; r < psi.row_monomials.size(); ++r)
        out[psi.row_monomials[r].bits()] = static_cast<int>(r);
    return out;
}

// Product of three distinct generators, or nullopt when a generator repeats
// (the product vanishes and spans nothing).
std::optional<Monomial> try_monomial(int n, std::initializer_list<GeneratorLabel> gens) {
    std::uint64_t bits = 0;
    int count = 0;
    for (const GeneratorLabel& g : gens) {
        bits |= std::uint64_t{1} << flat_index(g, n);
        ++count;
    }
    Monomial m = Monomial::from_bits(bits);
    if (m.degree() != count) return std::nullopt;
    return m;
}

}  // namespace

ProjectionWitness case1_witness(int n) {
    if (n < 4) throw std::invalid_argument("case1_witness: needs n >= 4 (the set uses e(3,4))");
    const Presentation pres = mccool_presentation(n);
    const LinFormMatrix psi = psi_matrix(pres);
    const auto rows = row_index_of(psi);
    const int R = static_cast<int>(pres.relations.size());

    auto mono = [&](GeneratorLabel a, GeneratorLabel b, GeneratorLabel c) {
        const auto m = try_monomial(n, {a, b, c});
        if (!m) throw std::logic_error("case1_witness: degenerate monomial in the displayed set");
        return *m;
    };

    std::vector<Monomial> mono_of(R);
    std::vector<bool> assigned(R, false);
    auto put = [&](int rel, const Monomial& m) {
        if (assigned[rel]) throw std::logic_error("case1_witness: relation mapped twice");
        mono_of[rel] = m;
        assigned[rel] = true;
    };

    put(eta_index(n, 1, 2), mono({1, 2}, {2, 1}, {3, 4}));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (i == 1 && j == 2) continue;
            put(eta_index(n, i, j), mono({2, 1}, {i, j}, {j, i}));
        }
    }
    for (int k = 3; k <= n; ++k) {
        put(tau_index(n, 1, 2, k), mono({3, 4}, {1, 2}, {k, 1}));
        put(tau_index(n, 1, k, 2), mono({3, 4}, {2, 1}, {1, k}));
        put(tau_index(n, 2, k, 1), mono({3, 4}, {1, 2}, {1, k}));
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                if (i == 1 && j == 2) continue;  // handled above
                put(tau_index(n, i, j, k), mono({2, 1}, {k, i}, {k, j}));
                put(tau_index(n, i, k, j), mono({2, 1}, {j, i}, {j, k}));
                put(tau_index(n, j, k, i), mono({2, 1}, {i, k}, {k, j}));
            }
        }
    }
    for (int r = 0; r < R; ++r) {
        if (!assigned[r])
            throw std::logic_error("case1_witness: relation " + pres.relation_names[r] +
                                   " not covered by the bijection");
    }

    ProjectionWitness w;
    w.n = n;
    w.monomial_set = mono_of;
    for (int r = 0; r < R; ++r) w.bijection.emplace_back(pres.relation_names[r], mono_of[r]);

    w.square_matrix = LinFormMatrix(R, R, pres.N);
    w.square_matrix.row_monomials = mono_of;
    w.square_matrix.col_labels = pres.relation_names;
    for (int r = 0; r < R; ++r) {
        const int psi_row = rows.at(mono_of[r].bits());
        for (int c = 0; c < R; ++c) {
            const LinearForm& f = psi.entry(psi_row, c);
            if (!f.is_zero()) w.square_matrix.set(r, c, f);
        }
    }
    return w;
}

Case1DetResult case1_determinant_check(int n, int trials, std::uint64_t seed, long magnitude) {
    if (n < 4) throw std::invalid_argument("case1_determinant_check: needs n >= 4");
    if (trials < 1) throw std::invalid_argument("case1_determinant_check: trials must be >= 1");
    const ProjectionWitness w = case1_witness(n);
    const int N = generator_count(n);

    Case1DetResult res;
    res.n = n;
    res.trials = trials;
    res.seed = seed;
    res.m34 = 3L * n - 5;
    res.m21 = binomial(n, 2) * (n - 1) - res.m34;
    res.notes.push_back("y(p,q) symbols in the stated determinant are read as a(p,q)");

    const int i21 = flat_index({2, 1}, n);
    const int i34 = flat_index({3, 4}, n);
    bool pass = true;
    int sign = 0;
    for (int t = 0; t < trials && pass; ++t) {
        SplitMix64 rng(derive_seed(seed, 7100, static_cast<std::uint64_t>(t)));
        Point a(N, Rational(0));
        for (int i = 0; i < N; ++i) a[i] = Rational(rng.uniform(-magnitude, magnitude));
        a[i21] = Rational(rng.nonzero_uniform(-magnitude, magnitude));
        a[i34] = Rational(rng.nonzero_uniform(-magnitude, magnitude));

        const Rational det = determinant(specialize(w.square_matrix, a));
        const Rational expected = rational_pow(a[i21], static_cast<unsigned long>(res.m21)) *
                                  rational_pow(a[i34], static_cast<unsigned long>(res.m34));
        if (expected == 0 || det == 0) {
            pass = false;
            res.notes.push_back("trial " + std::to_string(t) + ": vanishing determinant");
            break;
        }
        const Rational ratio = det / expected;
        int s = 0;
        if (ratio == 1) s = 1;
        if (ratio == -1) s = -1;
        if (s == 0) {
            pass = false;
            res.notes.push_back("trial " + std::to_string(t) +
                                ": determinant is not +-1 times the stated monomial");
            break;
        }
        if (sign == 0) sign = s;
        if (s != sign) {
            pass = false;
            res.notes.push_back("trial " + std::to_string(t) + ": sign flipped across trials");
            break;
        }
    }
    res.pass = pass;
    res.sign = sign;
    return res;
}

LinFormMatrix m3_reference() {
    // Entry table: row, column (1-based), generator label (p,q), coefficient.
    struct E {
        int row, col, p, q, coeff;
    };
    static const E table[] = {
        {1, 1, 3, 2, 1},  {1, 5, 1, 2, -1},  {1, 5, 3, 2, -1},
        {2, 1, 3, 1, 1},  {2, 5, 2, 1, -1},  {2, 5, 3, 1, -1},
        {3, 1, 2, 3, 1},  {3, 4, 1, 2, 1},   {3, 5, 2, 3, -1},  {3, 6, 2, 1, 1},
        {4, 1, 1, 3, -1}, {4, 4, 1, 2, 1},   {4, 5, 1, 3, 1},   {4, 6, 2, 1, 1},
        {5, 2, 3, 2, 1},  {5, 4, 3, 2, -1},  {5, 5, 1, 3, 1},   {5, 6, 3, 1, -1},
        {6, 2, 2, 3, -1}, {6, 4, 1, 3, 1},   {6, 4, 2, 3, 1},
        {7, 2, 2, 1, -1}, {7, 4, 2, 1, 1},   {7, 4, 3, 1, 1},
        {8, 2, 1, 2, 1},  {8, 4, 1, 2, -1},  {8, 5, 1, 3, -1},  {8, 6, 3, 1, 1},
        {9, 3, 3, 1, -1}, {9, 4, 3, 2, 1},   {9, 5, 2, 3, 1},   {9, 6, 3, 1, 1},
        {10, 3, 2, 1, 1}, {10, 4, 3, 2, 1},  {10, 5, 2, 3, 1},  {10, 6, 2, 1, -1},
        {11, 3, 1, 3, 1}, {11, 6, 1, 3, -1}, {11, 6, 2, 3, -1},
        {12, 3, 1, 2, 1}, {12, 6, 1, 2, -1}, {12, 6, 3, 2, -1},
        {13, 4, 3, 2, 1}, {13, 5, 1, 3, -1}, {13, 6, 2, 1, -1},
        {14, 4, 2, 1, 1}, {14, 4, 3, 1, 1},
        {15, 4, 1, 3, 1}, {15, 4, 2, 3, 1},
        {16, 4, 1, 2, 1}, {16, 5, 2, 3, -1}, {16, 6, 3, 1, -1},
        {17, 5, 1, 2, 1}, {17, 5, 3, 2, 1},
        {18, 5, 2, 1, 1}, {18, 5, 3, 1, 1},
        {19, 6, 1, 2, 1}, {19, 6, 3, 2, 1},
        {20, 6, 1, 3, 1}, {20, 6, 2, 3, 1},
    };
    LinFormMatrix m(20, 6, generator_count(3));
    for (int c = 1; c <= 6; ++c) m.col_labels.push_back("c" + std::to_string(c));
    for (const E& e : table) m.add(e.row - 1, e.col - 1, flat_index({e.p, e.q}, 3), Rational(e.coeff));
    return m;
}

namespace {

// Row vector of forms normalized up to a global sign; the serialization is
// the comparison key.
std::string canonical_row_key(const std::vector<LinearForm>& row) {
    int flip = 1;
    for (const LinearForm& f : row) {
        if (f.is_zero()) continue;
        flip = f.coefficients().begin()->second < 0 ? -1 : 1;
        break;
    }
    std::string key;
    for (const LinearForm& f : row) {
        key += "|";
        for (const auto& [var, c] : f.coefficients()) {
            const Rational v = flip < 0 ? Rational(-c) : c;
            key += std::to_string(var) + ":" + rational_to_string(v) + ",";
        }
    }
    return key;
}

std::vector<LinearForm> matrix_row(const LinFormMatrix& m, int r) {
    std::vector<LinearForm> out(static_cast<std::size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) out[c] = m.entry(r, c);
    return out;
}

bool rows_equal(const std::vector<LinearForm>& a, const std::vector<LinearForm>& b) {
    return a == b;
}

std::vector<LinearForm> negate_row(const std::vector<LinearForm>& a) {
    std::vector<LinearForm> out;
    out.reserve(a.size());
    for (const LinearForm& f : a) out.push_back(f.negated());
    return out;
}

}  // namespace

SignedPermutation match_m3() {
    const Presentation pres = mccool_presentation(3);
    const LinFormMatrix psi = psi_matrix(pres);
    const LinFormMatrix ref = m3_reference();
    const int nrows = ref.rows();
    const int ncols = ref.cols();

    std::vector<std::vector<LinearForm>> ref_rows;
    std::multiset<std::string> ref_keys;
    for (int r = 0; r < nrows; ++r) {
        ref_rows.push_back(matrix_row(ref, r));
        ref_keys.insert(canonical_row_key(ref_rows.back()));
    }
    std::vector<std::vector<LinearForm>> psi_rows;
    for (int r = 0; r < nrows; ++r) psi_rows.push_back(matrix_row(psi, r));

    SignedPermutation best;
    std::size_t best_overlap = 0;

    std::vector<int> col_perm(ncols);
    for (int j = 0; j < ncols; ++j) col_perm[j] = j;
    do {
        for (unsigned mask = 0; mask < (1u << ncols); ++mask) {
            // Transform every psi row under this column assignment.
            std::vector<std::vector<LinearForm>> transformed(nrows);
            std::multiset<std::string> keys;
            std::map<std::string, std::vector<int>> rows_by_key;
            for (int r = 0; r < nrows; ++r) {
                std::vector<LinearForm> row(static_cast<std::size_t>(ncols));
                for (int j = 0; j < ncols; ++j) {
                    const LinearForm& f = psi_rows[r][col_perm[j]];
                    row[j] = (mask >> j) & 1u ? f.negated() : f;
                }
                const std::string key = canonical_row_key(row);
                keys.insert(key);
                rows_by_key[key].push_back(r);
                transformed[r] = std::move(row);
            }
            if (keys != ref_keys) {
                std::size_t overlap = 0;
                for (const std::string& k : ref_keys)
                    if (keys.count(k)) ++overlap;
                if (overlap > best_overlap) {
                    best_overlap = overlap;
                    best.diagnostics = "best partial match: " + std::to_string(overlap) + "/" +
                                       std::to_string(nrows) + " row keys";
                }
                continue;
            }

            SignedPermutation cert;
            cert.found = true;
            cert.col_perm = col_perm;
            cert.col_sign.assign(ncols, 1);
            for (int j = 0; j < ncols; ++j)
                if ((mask >> j) & 1u) cert.col_sign[j] = -1;
            cert.row_perm.assign(nrows, -1);
            cert.row_sign.assign(nrows, 1);
            for (int i = 0; i < nrows; ++i) {
                auto& candidates = rows_by_key[canonical_row_key(ref_rows[i])];
                const int r = candidates.front();
                candidates.erase(candidates.begin());
                cert.row_perm[i] = r;
                if (rows_equal(transformed[r], ref_rows[i])) {
                    cert.row_sign[i] = 1;
                } else if (rows_equal(negate_row(transformed[r]), ref_rows[i])) {
                    cert.row_sign[i] = -1;
                } else {
                    cert.found = false;
                    break;
                }
            }
            if (cert.found) {
                cert.diagnostics = "exact signed-permutation match";
                return cert;
            }
        }
    } while (std::next_permutation(col_perm.begin(), col_perm.end()));

    best.found = false;
    if (best.diagnostics.empty()) best.diagnostics = "no column assignment matched any row key";
    return best;
}

bool signed_permutation_matches(const SignedPermutation& cert, const LinFormMatrix& psi,
                                const LinFormMatrix& ref) {
    if (!cert.found) return false;
    for (int i = 0; i < ref.rows(); ++i) {
        for (int j = 0; j < ref.cols(); ++j) {
            LinearForm f = psi.entry(cert.row_perm[i], cert.col_perm[j]);
            if (cert.row_sign[i] * cert.col_sign[j] < 0) f = f.negated();
            if (!(f == ref.entry(i, j))) return false;
        }
    }
    return true;
}

namespace {

struct FinalCasePoint {
    Point a;
    GeneratorLabel pq;
    GeneratorLabel rs;
};

// Support-in-{1,2,3} point for the configured n: a(2,1) != 0, a designated
// nonzero coordinate touching 3, off C_{1,2,3}.
struct Support123Point {
    Point a;
    GeneratorLabel pq;
};

Support123Point make_support123_point(SplitMix64& rng, int n) {
    static const std::array<std::array<int, 2>, 4> third = {{{1, 3}, {2, 3}, {3, 1}, {3, 2}}};
    const int N = generator_count(n);
    while (true) {
        Point a(N, Rational(0));
        for (int p = 1; p <= 3; ++p)
            for (int q = 1; q <= 3; ++q)
                if (p != q) a[flat_index({p, q}, n)] = Rational(rng.uniform(-9, 9));
        a[flat_index({2, 1}, n)] = Rational(rng.nonzero_uniform(-9, 9));
        const auto& pq = third[static_cast<std::size_t>(rng.uniform(0, 3))];
        a[flat_index({pq[0], pq[1]}, n)] = Rational(rng.nonzero_uniform(-9, 9));
        auto at = [&](int p, int q) { return a[flat_index({p, q}, n)]; };
        if (at(2, 1) + at(3, 1) != 0 || at(1, 2) + at(3, 2) != 0 || at(1, 3) + at(2, 3) != 0)
            return {std::move(a), {pq[0], pq[1]}};
    }
}

FinalCasePoint make_final_case_point(SplitMix64& rng, int n) {
    static const std::array<std::array<int, 2>, 4> third = {{{1, 3}, {2, 3}, {3, 1}, {3, 2}}};
    const int N = generator_count(n);
    Point a(N, Rational(0));
    for (int idx = 0; idx < N; ++idx) {
        const GeneratorLabel g = label_of(idx, n);
        if (g.p <= 2 || g.q <= 2) a[idx] = Rational(rng.uniform(-9, 9));
    }
    a[flat_index({2, 1}, n)] = Rational(rng.nonzero_uniform(-9, 9));
    const auto& pq = third[static_cast<std::size_t>(rng.uniform(0, 3))];
    a[flat_index({pq[0], pq[1]}, n)] = Rational(rng.nonzero_uniform(-9, 9));
    const int r = static_cast<int>(rng.uniform(1, 2));
    const int s = static_cast<int>(rng.uniform(4, n));
    a[flat_index({r, s}, n)] = Rational(rng.nonzero_uniform(-9, 9));
    return {std::move(a), {pq[0], pq[1]}, {r, s}};
}

void insert_mono(std::set<Monomial>& w, int n, std::initializer_list<GeneratorLabel> gens) {
    const auto m = try_monomial(n, gens);
    if (m) w.insert(*m);
}

// Shared between both Case-2 subspaces: e(2,1) against the eta pairs and
// against the three tau-partner products per triple not containing {1,2}.
void insert_common_e21_family(std::set<Monomial>& w, int n, const GeneratorLabel& pq) {
    insert_mono(w, n, {{1, 2}, {2, 1}, pq});
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(i == 1 && j == 2)) insert_mono(w, n, {{2, 1}, {i, j}, {j, i}});
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                if (i == 1 && j == 2) continue;
                insert_mono(w, n, {{2, 1}, {k, i}, {k, j}});
                insert_mono(w, n, {{2, 1}, {j, i}, {j, k}});
                insert_mono(w, n, {{2, 1}, {i, k}, {k, j}});
            }
        }
    }
}

RationalMatrix restrict_rows(const LinFormMatrix& psi,
                             const std::unordered_map<std::uint64_t, int>& rows,
                             const std::set<Monomial>& w, const Point& a) {
    RationalMatrix out(static_cast<int>(w.size()), psi.cols());
    int r = 0;
    for (const Monomial& m : w) {
        const int psi_row = rows.at(m.bits());
        for (int c = 0; c < psi.cols(); ++c) {
            const LinearForm& f = psi.entry(psi_row, c);
            if (!f.is_zero()) out.at(r, c) = f.evaluate(a);
        }
        ++r;
    }
    return out;
}

}  // namespace

Case2Result case2_rank_checks(int n, int trials, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("case2_rank_checks: needs n >= 3");
    if (trials < 1) throw std::invalid_argument("case2_rank_checks: trials must be >= 1");

    Case2Result res;
    res.n = n;
    res.trials = trials;
    res.seed = seed;

    // (i) The n=3 reference matrix has rank 6 at conforming points.
    {
        const LinFormMatrix ref = m3_reference();
        res.ran_m3_rank = true;
        res.m3_rank_pass = true;
        for (int t = 0; t < trials; ++t) {
            SplitMix64 rng(derive_seed(seed, 7201, static_cast<std::uint64_t>(t)));
            const Support123Point sp = make_support123_point(rng, 3);
            if (rank(specialize(ref, sp.a)) != 6) {
                res.m3_rank_pass = false;
                res.notes.push_back("m3 rank check failed at trial " + std::to_string(t));
                break;
            }
        }
    }

    const Presentation pres = mccool_presentation(n);
    const LinFormMatrix psi = psi_matrix(pres);
    const auto rows = row_index_of(psi);
    const int R = static_cast<int>(pres.relations.size());

    // (ii) Support in {1,2,3}: full column rank of the restricted matrix.
    if (n >= 4) {
        res.ran_support123 = true;
        res.support123_pass = true;
        for (int t = 0; t < trials; ++t) {
            SplitMix64 rng(derive_seed(seed, 7202, static_cast<std::uint64_t>(t)));
            const Support123Point sp = make_support123_point(rng, n);
            std::set<Monomial> w;
            for (const Monomial& m : basis_monomials(3, generator_count(3))) {
                std::uint64_t bits = 0;
                for (int idx : m.indices()) {
                    const GeneratorLabel g = label_of(idx, 3);
                    bits |= std::uint64_t{1} << flat_index(g, n);
                }
                w.insert(Monomial::from_bits(bits));
            }
            insert_common_e21_family(w, n, sp.pq);
            for (int k = 3; k <= n; ++k) {
                insert_mono(w, n, {sp.pq, {k, 1}, {k, 2}});
                insert_mono(w, n, {sp.pq, {k, 1}, {1, 2}});
                insert_mono(w, n, {sp.pq, {2, 1}, {k, 2}});
                insert_mono(w, n, {sp.pq, {2, 1}, {2, k}});
                insert_mono(w, n, {sp.pq, {2, 1}, {1, k}});
                insert_mono(w, n, {sp.pq, {k, 1}, {2, k}});
                insert_mono(w, n, {sp.pq, {1, 2}, {1, k}});
                insert_mono(w, n, {sp.pq, {1, 2}, {2, k}});
                insert_mono(w, n, {sp.pq, {k, 2}, {1, k}});
            }
            if (rank(restrict_rows(psi, rows, w, sp.a)) != R) {
                res.support123_pass = false;
                res.notes.push_back("support-in-{1,2,3} rank check failed at trial " +
                                    std::to_string(t));
                break;
            }
        }
    }

    // (iii) Final sub-case: square restriction, monomial determinant,
    // exponents fitted by exact coordinate doubling.
    if (n >= 4) {
        res.ran_final = true;
        res.final_pass = true;
        res.paper_m21 = binomial(n, 2) * (n - 1) - (3L * n - 8);
        res.degree_consistent_m21 = binomial(n, 2) * (n - 1) - (3L * n - 8) - 3;

        bool have_fit = false;
        for (int t = 0; t < trials && res.final_pass; ++t) {
            SplitMix64 rng(derive_seed(seed, 7203, static_cast<std::uint64_t>(t)));
            const FinalCasePoint fp = make_final_case_point(rng, n);

            std::set<Monomial> w;
            insert_common_e21_family(w, n, fp.pq);
            insert_mono(w, n, {fp.rs, {3, 1}, {3, 2}});
            insert_mono(w, n, {fp.rs, {1, 3}, {3, 2}});
            insert_mono(w, n, {fp.rs, {2, 3}, {3, 1}});
            for (int k = 4; k <= n; ++k) {
                insert_mono(w, n, {fp.pq, {k, 1}, {k, 2}});
                insert_mono(w, n, {fp.pq, {2, k}, {k, 1}});
                insert_mono(w, n, {fp.pq, {1, k}, {k, 2}});
            }
            if (static_cast<int>(w.size()) != R) {
                res.final_pass = false;
                res.notes.push_back("final sub-case: projection set has " +
                                    std::to_string(w.size()) + " monomials, expected " +
                                    std::to_string(R));
                break;
            }

            const int i21 = flat_index({2, 1}, n);
            const int ipq = flat_index(fp.pq, n);
            const int irs = flat_index(fp.rs, n);

            const Rational d0 = determinant(restrict_rows(psi, rows, w, fp.a));
            if (d0 == 0) {
                res.final_pass = false;
                res.notes.push_back("final sub-case: determinant vanished at trial " +
                                    std::to_string(t));
                break;
            }
            auto fit_exponent = [&](int coord) -> std::optional<long> {
                Point doubled = fp.a;
                doubled[coord] *= 2;
                const Rational d = determinant(restrict_rows(psi, rows, w, doubled));
                return exact_log2(d / d0);
            };
            const auto e1 = fit_exponent(i21);
            const auto e2 = fit_exponent(ipq);
            const auto e3 = fit_exponent(irs);
            if (!e1 || !e2 || !e3) {
                res.final_pass = false;
                res.notes.push_back("final sub-case: determinant ratio is not an exact power of 2");
                break;
            }
            const Rational monomial = rational_pow(fp.a[i21], static_cast<unsigned long>(*e1)) *
                                      rational_pow(fp.a[ipq], static_cast<unsigned long>(*e2)) *
                                      rational_pow(fp.a[irs], static_cast<unsigned long>(*e3));
            const Rational coeff = d0 / monomial;
            int s = 0;
            if (coeff == 1) s = 1;
            if (coeff == -1) s = -1;

            if (!have_fit) {
                res.fit.fitted = true;
                res.fit.e21 = *e1;
                res.fit.epq = *e2;
                res.fit.ers = *e3;
                res.fit.sign = s;
                res.fit.monomial_exact = (s != 0);
                have_fit = true;
            } else {
                if (res.fit.e21 != *e1 || res.fit.epq != *e2 || res.fit.ers != *e3) {
                    res.final_pass = false;
                    res.notes.push_back("final sub-case: fitted exponents vary across trials");
                    break;
                }
                if (s == 0 || s != res.fit.sign) res.fit.monomial_exact = false;
            }
        }

        if (res.final_pass && res.fit.fitted) {
            if (res.fit.epq != 3L * n - 8) {
                res.final_pass = false;
                res.notes.push_back("final sub-case: exponent of a(p,q) is " +
                                    std::to_string(res.fit.epq) + ", stated 3n-8 = " +
                                    std::to_string(3L * n - 8));
            }
            if (res.fit.ers != 3) {
                res.final_pass = false;
                res.notes.push_back("final sub-case: exponent of a(r,s) is " +
                                    std::to_string(res.fit.ers) + ", stated 3");
            }
            res.m21_discrepancy_flagged = (res.fit.e21 != res.paper_m21);
            res.notes.push_back(
                "a(2,1) exponent: fitted " + std::to_string(res.fit.e21) + ", stated " +
                std::to_string(res.paper_m21) + ", degree-consistent " +
                std::to_string(res.degree_consistent_m21) +
                (res.m21_discrepancy_flagged ? " (stated value flagged: exceeds matrix degree)"
                                             : ""));
        }
    }

    res.pass = res.m3_rank_pass && (!res.ran_support123 || res.support123_pass) &&
               (!res.ran_final || res.final_pass);
    return res;
}

}  // namespace resonance
