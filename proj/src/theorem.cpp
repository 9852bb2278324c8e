#include <resonance/theorem.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace resonance {

namespace {

Point unit_point(int N, int index) {
    Point p(N, Rational(0));
    p[index] = 1;
    return p;
}

std::string pair_id(int i, int j) {
    return "C(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string triple_id(int i, int j, int k) {
    return "C(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

std::vector<Subspace> components(int n) {
    if (n < 2) throw std::invalid_argument("components: need n >= 2");
    const int N = generator_count(n);
    std::vector<Subspace> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            Subspace s;
            s.id = pair_id(i, j);
            s.kind = "pair";
            s.support = {i, j};
            s.dim = 2;
            s.basis.push_back(unit_point(N, flat_index({i, j}, n)));
            s.basis.push_back(unit_point(N, flat_index({j, i}, n)));
            out.push_back(std::move(s));
        }
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                Subspace s;
                s.id = triple_id(i, j, k);
                s.kind = "triple";
                s.support = {i, j, k};
                s.dim = 3;
                Point b1(N, Rational(0)), b2(N, Rational(0)), b3(N, Rational(0));
                b1[flat_index({j, i}, n)] = 1;
                b1[flat_index({k, i}, n)] = -1;
                b2[flat_index({i, j}, n)] = 1;
                b2[flat_index({k, j}, n)] = -1;
                b3[flat_index({i, k}, n)] = 1;
                b3[flat_index({j, k}, n)] = -1;
                s.basis = {std::move(b1), std::move(b2), std::move(b3)};
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

std::vector<Subspace> product_components(int n) {
    if (n < 2) throw std::invalid_argument("product_components: need n >= 2");
    const int N = n * (n - 1);
    std::vector<Subspace> out;
    for (int b = 1; b <= n - 1; ++b) {
        Subspace s;
        s.id = "B(" + std::to_string(b) + ")";
        s.kind = "block";
        s.support = {b};
        s.dim = n;
        for (int i = 0; i < n; ++i) s.basis.push_back(unit_point(N, (b - 1) * n + i));
        out.push_back(std::move(s));
    }
    return out;
}

bool in_pair_component(int n, int i, int j, const Point& a) {
    const int N = generator_count(n);
    if (static_cast<int>(a.size()) != N)
        throw std::invalid_argument("in_pair_component: point length mismatch");
    for (int idx = 0; idx < N; ++idx) {
        const GeneratorLabel g = label_of(idx, n);
        const bool same_set = (g.p == i && g.q == j) || (g.p == j && g.q == i);
        if (!same_set && a[idx] != 0) return false;
    }
    return true;
}

bool in_triple_component(int n, int i, int j, int k, const Point& a) {
    const int N = generator_count(n);
    if (static_cast<int>(a.size()) != N)
        throw std::invalid_argument("in_triple_component: point length mismatch");
    auto at = [&](int p, int q) { return a[flat_index({p, q}, n)]; };
    if (at(j, i) + at(k, i) != 0) return false;
    if (at(i, j) + at(k, j) != 0) return false;
    if (at(i, k) + at(j, k) != 0) return false;
    for (int idx = 0; idx < N; ++idx) {
        const GeneratorLabel g = label_of(idx, n);
        const bool inside = (g.p == i || g.p == j || g.p == k) && (g.q == i || g.q == j || g.q == k);
        if (!inside && a[idx] != 0) return false;
    }
    return true;
}

std::vector<std::string> in_C(int n, const Point& a) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (in_pair_component(n, i, j, a)) out.push_back(pair_id(i, j));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                if (in_triple_component(n, i, j, k, a)) out.push_back(triple_id(i, j, k));
    return out;
}

std::vector<std::string> in_blocks(const Presentation& p, const Point& a) {
    if (p.blocks.empty())
        throw std::invalid_argument("in_blocks: presentation has no block structure");
    if (static_cast<int>(a.size()) != p.N)
        throw std::invalid_argument("in_blocks: point length mismatch");
    std::vector<std::string> out;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        bool inside = true;
        for (int idx = 0; idx < p.N && inside; ++idx) {
            if (a[idx] == 0) continue;
            if (std::find(p.blocks[b].begin(), p.blocks[b].end(), idx) == p.blocks[b].end())
                inside = false;
        }
        if (inside) out.push_back("B(" + std::to_string(b + 1) + ")");
    }
    return out;
}

Point permute_point(const Point& a, const std::vector<int>& sigma, int n) {
    const int N = generator_count(n);
    if (static_cast<int>(a.size()) != N)
        throw std::invalid_argument("permute_point: point length mismatch");
    if (static_cast<int>(sigma.size()) != n + 1)
        throw std::invalid_argument("permute_point: sigma must have length n+1 (1-based)");
    Point b(N, Rational(0));
    for (int idx = 0; idx < N; ++idx) {
        if (a[idx] == 0) continue;
        const GeneratorLabel g = label_of(idx, n);
        b[flat_index({sigma[g.p], sigma[g.q]}, n)] = a[idx];
    }
    return b;
}

std::vector<int> random_permutation(SplitMix64& rng, int n) {
    std::vector<int> sigma(n + 1);
    for (int i = 1; i <= n; ++i) sigma[i] = i;
    for (int i = n; i >= 2; --i) {
        const int j = static_cast<int>(rng.uniform(1, i));
        std::swap(sigma[i], sigma[j]);
    }
    return sigma;
}

KernelCertificates kernel_certificates(const ResonanceEngine& eng, int i, int j, int k,
                                       const Point& a) {
    const Presentation& p = eng.pres();
    if (p.family != Family::mccool)
        throw std::invalid_argument("kernel_certificates: requires the mccool family");
    const int n = p.n;
    if (!(1 <= i && i < j && j < k && k <= n))
        throw std::invalid_argument("kernel_certificates: need 1 <= i < j < k <= n");
    if (!in_triple_component(n, i, j, k, a))
        throw std::invalid_argument("kernel_certificates: point does not satisfy the C_{i,j,k} conditions");

    auto at = [&](int pp, int qq) { return a[flat_index({pp, qq}, n)]; };
    const int R = static_cast<int>(p.relations.size());

    KernelCertificates out;
    out.ids[0] = "a(" + std::to_string(j) + "," + std::to_string(i) + ")*tau^" + std::to_string(k) +
                 "(" + std::to_string(i) + "," + std::to_string(j) + ") - a(" + std::to_string(i) +
                 "," + std::to_string(k) + ")*tau^" + std::to_string(i) + "(" + std::to_string(j) +
                 "," + std::to_string(k) + ")";
    out.ids[1] = "a(" + std::to_string(i) + "," + std::to_string(j) + ")*tau^" + std::to_string(k) +
                 "(" + std::to_string(i) + "," + std::to_string(j) + ") - a(" + std::to_string(i) +
                 "," + std::to_string(k) + ")*tau^" + std::to_string(j) + "(" + std::to_string(i) +
                 "," + std::to_string(k) + ")";

    out.coords[0].assign(R, Rational(0));
    out.coords[0][tau_index(n, i, j, k)] += at(j, i);
    out.coords[0][tau_index(n, j, k, i)] -= at(i, k);
    out.coords[1].assign(R, Rational(0));
    out.coords[1][tau_index(n, i, j, k)] += at(i, j);
    out.coords[1][tau_index(n, i, k, j)] -= at(i, k);

    ExtElement a_elem(1);
    for (int g = 0; g < p.N; ++g)
        if (a[g] != 0) a_elem.add_term(Monomial::from_indices({g}), a[g]);

    bool verified = true;
    for (int c = 0; c < 2; ++c) {
        ExtElement combo(2);
        bool nonzero = false;
        for (int r = 0; r < R; ++r) {
            if (out.coords[c][r] == 0) continue;
            nonzero = true;
            combo += out.coords[c][r] * p.relations[r];
        }
        out.nonzero[c] = nonzero;
        if (!(a_elem * combo).is_zero()) verified = false;
    }
    out.verified = verified;
    return out;
}

namespace {

struct Task {
    std::string target;
    Point point;
    bool expected_resonant = false;
    std::optional<std::array<int, 3>> triple;
};

SampleCheck evaluate_task(const ResonanceEngine& eng, const Task& task) {
    SampleCheck check;
    check.target = task.target;
    check.point = task.point;
    check.expected_resonant = task.expected_resonant;
    const MembershipReport rep = eng.membership(task.point, /*with_oracle=*/true);
    check.resonant = rep.resonant;
    check.kernel_dim = rep.kernel_dim;
    check.h1 = rep.h1_direct.value();
    check.ok = (check.resonant == check.expected_resonant);
    if (task.triple && task.expected_resonant) {
        const auto [i, j, k] = *task.triple;
        const KernelCertificates certs = kernel_certificates(eng, i, j, k, task.point);
        if (!certs.verified) check.ok = false;
        if (!is_zero_point(task.point) && !certs.nonzero[0] && !certs.nonzero[1]) check.ok = false;
        for (int c = 0; c < 2; ++c)
            if (certs.nonzero[c]) check.certificate_ids.push_back(certs.ids[c]);
    }
    return check;
}

std::vector<SampleCheck> evaluate_all(const ResonanceEngine& eng, const std::vector<Task>& tasks,
                                      int workers) {
    std::vector<SampleCheck> out(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), workers,
                 [&](int idx) { out[idx] = evaluate_task(eng, tasks[idx]); });
    return out;
}

std::string sigma_string(const std::vector<int>& sigma, int n) {
    std::string s = "[";
    for (int i = 1; i <= n; ++i) {
        if (i > 1) s += ",";
        s += std::to_string(sigma[i]);
    }
    return s + "]";
}

Point case1_point(SplitMix64& rng, int n) {
    const int N = generator_count(n);
    Point a(N, Rational(0));
    for (int i = 0; i < N; ++i) a[i] = Rational(rng.uniform(-9, 9));
    a[flat_index({2, 1}, n)] = Rational(rng.nonzero_uniform(-9, 9));
    a[flat_index({3, 4}, n)] = Rational(rng.nonzero_uniform(-9, 9));
    return a;
}

Point case2_support123_point(SplitMix64& rng, int n) {
    const int N = generator_count(n);
    static const std::array<std::array<int, 2>, 4> third = {{{1, 3}, {2, 3}, {3, 1}, {3, 2}}};
    while (true) {
        Point a(N, Rational(0));
        for (int p = 1; p <= 3; ++p) {
            for (int q = 1; q <= 3; ++q) {
                if (p != q) a[flat_index({p, q}, n)] = Rational(rng.uniform(-9, 9));
            }
        }
        a[flat_index({2, 1}, n)] = Rational(rng.nonzero_uniform(-9, 9));
        const auto& pq = third[static_cast<std::size_t>(rng.uniform(0, 3))];
        a[flat_index({pq[0], pq[1]}, n)] = Rational(rng.nonzero_uniform(-9, 9));
        auto at = [&](int p, int q) { return a[flat_index({p, q}, n)]; };
        if (at(2, 1) + at(3, 1) != 0 || at(1, 2) + at(3, 2) != 0 || at(1, 3) + at(2, 3) != 0)
            return a;
    }
}

Point case2_final_point(SplitMix64& rng, int n) {
    const int N = generator_count(n);
    static const std::array<std::array<int, 2>, 4> third = {{{1, 3}, {2, 3}, {3, 1}, {3, 2}}};
    Point a(N, Rational(0));
    // Case-1 reduction: a_{t,u} = 0 whenever {t,u} and {1,2} are disjoint.
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
    return a;
}

}  // namespace

VerificationReport verify_theorem(const ResonanceEngine& eng, int samples, std::uint64_t seed,
                                  bool exclude_zero, int workers) {
    const Presentation& p = eng.pres();
    if (p.family != Family::mccool)
        throw std::invalid_argument("verify_theorem: requires the mccool family");
    if (samples < 1) throw std::invalid_argument("verify_theorem: samples must be >= 1");
    const int n = p.n;
    const int N = p.N;

    VerificationReport report;
    report.family = family_name(p.family);
    report.n = n;
    report.samples = samples;
    report.seed = seed;
    report.notes.push_back("zero convention: 0 lies in C and in R; zero points report resonant");

    const std::vector<Subspace> comps = components(n);

    std::vector<Task> forward;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const Subspace& comp = comps[ci];
        std::optional<std::array<int, 3>> triple;
        if (comp.kind == "triple")
            triple = std::array<int, 3>{comp.support[0], comp.support[1], comp.support[2]};
        for (int s = 0; s < samples; ++s) {
            SplitMix64 rng(derive_seed(seed, 1000 + ci, static_cast<std::uint64_t>(s)));
            forward.push_back(
                {comp.id, random_point_in_span(rng, comp.basis, exclude_zero), true, triple});
        }
    }
    report.forward = evaluate_all(eng, forward, workers);

    std::vector<Task> reverse;
    if (n == 2) {
        report.notes.push_back("reverse section empty: R^1 = A^1 for n = 2 (the whole plane)");
    } else {
        for (int s = 0; s < samples; ++s) {
            SplitMix64 rng(derive_seed(seed, 2000, static_cast<std::uint64_t>(s)));
            Point a = random_point(rng, N, /*exclude_zero=*/true);
            while (!in_C(n, a).empty()) a = random_point(rng, N, true);
            reverse.push_back({"off-C", std::move(a), false, std::nullopt});
        }
    }
    report.reverse = evaluate_all(eng, reverse, workers);

    std::vector<Task> cases;
    auto add_case = [&](const std::string& id, int stream, Point (*make)(SplitMix64&, int)) {
        for (int s = 0; s < samples; ++s) {
            SplitMix64 rng(derive_seed(seed, 3000 + stream, static_cast<std::uint64_t>(s)));
            Point a = make(rng, n);
            SplitMix64 perm_rng(derive_seed(seed, 3500 + stream, static_cast<std::uint64_t>(s)));
            const std::vector<int> sigma = random_permutation(perm_rng, n);
            Point b = permute_point(a, sigma, n);
            cases.push_back({id, std::move(a), false, std::nullopt});
            cases.push_back({id + "/sigma=" + sigma_string(sigma, n), std::move(b), false,
                             std::nullopt});
        }
    };
    if (n >= 4) add_case("case1", 1, case1_point);
    if (n >= 3) add_case("case2-support(1,2,3)", 2, case2_support123_point);
    if (n >= 4) add_case("case2-final", 3, case2_final_point);
    if (n < 4)
        report.notes.push_back("case1 and case2-final need n >= 4; skipped");
    if (n < 3) report.notes.push_back("case-targeted section empty for n = 2");
    report.case_targeted = evaluate_all(eng, cases, workers);

    auto fold_oracle = [&](const std::vector<SampleCheck>& checks) {
        for (const SampleCheck& c : checks) {
            if (is_zero_point(c.point)) continue;
            ++report.oracle.checked;
            if (c.kernel_dim != c.h1)
                report.oracle.mismatches.push_back(c.target + ": kernel_dim=" +
                                                   std::to_string(c.kernel_dim) +
                                                   " h1=" + std::to_string(c.h1));
        }
    };
    fold_oracle(report.forward);
    fold_oracle(report.reverse);
    fold_oracle(report.case_targeted);

    auto all_ok = [](const std::vector<SampleCheck>& checks) {
        return std::all_of(checks.begin(), checks.end(),
                           [](const SampleCheck& c) { return c.ok; });
    };
    report.passed = all_ok(report.forward) && all_ok(report.reverse) &&
                    all_ok(report.case_targeted) && report.oracle.mismatches.empty();
    return report;
}

VerificationReport verify_product(const ResonanceEngine& eng, int samples, std::uint64_t seed,
                                  bool exclude_zero, int workers) {
    const Presentation& p = eng.pres();
    if (p.family != Family::product_free)
        throw std::invalid_argument("verify_product: requires the product-free family");
    if (samples < 1) throw std::invalid_argument("verify_product: samples must be >= 1");
    const int n = p.n;

    VerificationReport report;
    report.family = family_name(p.family);
    report.n = n;
    report.samples = samples;
    report.seed = seed;
    report.notes.push_back("zero convention: 0 lies in every block and in R");
    report.notes.push_back("no case-targeted section for the product family");

    const std::vector<Subspace> blocks = product_components(n);

    std::vector<Task> forward;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        for (int s = 0; s < samples; ++s) {
            SplitMix64 rng(derive_seed(seed, 1000 + bi, static_cast<std::uint64_t>(s)));
            forward.push_back({blocks[bi].id,
                               random_point_in_span(rng, blocks[bi].basis, exclude_zero), true,
                               std::nullopt});
        }
    }
    report.forward = evaluate_all(eng, forward, workers);

    std::vector<Task> reverse;
    if (n == 2) {
        report.notes.push_back("reverse section empty: the single block is all of A^1 for n = 2");
    } else {
        for (int s = 0; s < samples; ++s) {
            SplitMix64 rng(derive_seed(seed, 2000, static_cast<std::uint64_t>(s)));
            Point a = random_point(rng, p.N, /*exclude_zero=*/true);
            while (!in_blocks(p, a).empty()) a = random_point(rng, p.N, true);
            reverse.push_back({"off-blocks", std::move(a), false, std::nullopt});
        }
    }
    report.reverse = evaluate_all(eng, reverse, workers);

    for (const auto* section : {&report.forward, &report.reverse}) {
        for (const SampleCheck& c : *section) {
            if (is_zero_point(c.point)) continue;
            ++report.oracle.checked;
            if (c.kernel_dim != c.h1)
                report.oracle.mismatches.push_back(c.target + ": kernel_dim=" +
                                                   std::to_string(c.kernel_dim) +
                                                   " h1=" + std::to_string(c.h1));
        }
    }

    auto all_ok = [](const std::vector<SampleCheck>& checks) {
        return std::all_of(checks.begin(), checks.end(),
                           [](const SampleCheck& c) { return c.ok; });
    };
    report.passed = all_ok(report.forward) && all_ok(report.reverse) &&
                    report.oracle.mismatches.empty();
    return report;
}

}  // namespace resonance
