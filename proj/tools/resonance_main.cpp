// resonance: exact-arithmetic resonance variety computations for the
// basis-conjugating automorphism families, with a seeded verification
// harness and machine-readable reports.
//
// Exit codes: 0 = computation done / all checks passed,
//             1 = a mathematical check failed,
//             2 = usage or input error.

#include <resonance/engine.hpp>
#include <resonance/proof_replay.hpp>
#include <resonance/reports.hpp>
#include <resonance/theorem.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace resonance;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string family = "mccool";
    int n = 0;
    std::string presentation_file;
    std::string format = "json";
    bool max_n_override = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Presentation load_presentation(const CommonOptions& opt, bool allow_custom) {
    if (opt.family == "custom") {
        if (!allow_custom)
            throw std::runtime_error("this command supports only the mccool and product-free "
                                     "families");
        if (opt.presentation_file.empty())
            throw std::runtime_error("--family custom requires --presentation FILE");
        return parse_presentation_text(read_file(opt.presentation_file));
    }
    if (opt.n < 2) throw std::runtime_error("--n must be at least 2");
    if (opt.n > 6 && !opt.max_n_override)
        throw std::runtime_error("n > 6 grows as C(n(n-1),3); pass --max-n-override to insist");
    if (opt.family == "mccool") return mccool_presentation(opt.n);
    if (opt.family == "product-free") return product_free_presentation(opt.n);
    throw std::runtime_error("unknown family: " + opt.family +
                             " (expected mccool, product-free, or custom)");
}

void emit(const std::string& s) {
    std::cout << s;
    if (!s.empty() && s.back() != '\n') std::cout << '\n';
}

void emit_json(const json& doc) {
    std::cout << doc.dump(2) << '\n';
}

int cmd_membership(const CommonOptions& opt, const std::string& point_file) {
    const Presentation pres = load_presentation(opt, /*allow_custom=*/true);
    const ResonanceEngine engine(pres);
    const Point a = parse_point_text(pres, read_file(point_file));

    MembershipReport rep = engine.membership(a, /*with_oracle=*/true);
    if (pres.family == Family::mccool) {
        rep.components = in_C(pres.n, a);
    } else if (pres.family == Family::product_free) {
        rep.components = in_blocks(pres, a);
    }

    if (opt.format == "json") emit_json(membership_json(pres, rep));
    else if (opt.format == "csv") emit(membership_csv(pres, rep));
    else emit(membership_text(pres, rep));

    // The two pipelines must agree on every nonzero point; a mismatch is a
    // mathematical failure, not an input error.
    if (!rep.is_zero_point && rep.h1_direct && *rep.h1_direct != rep.kernel_dim) {
        std::cerr << "internal check failed: kernel_dim != h1_direct\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_verify(const CommonOptions& opt, int samples, std::uint64_t seed, bool exclude_zero,
               bool proof_replay) {
    const Presentation pres = load_presentation(opt, /*allow_custom=*/false);
    if (proof_replay && pres.family != Family::mccool)
        throw std::runtime_error("--proof-replay applies to the mccool family only");

    const ResonanceEngine engine(pres);
    const int workers = worker_count();

    const auto t0 = std::chrono::steady_clock::now();
    const VerificationReport rep =
        pres.family == Family::mccool
            ? verify_theorem(engine, samples, seed, exclude_zero, workers)
            : verify_product(engine, samples, seed, exclude_zero, workers);
    const double harness_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "harness: " << harness_s << " s (" << workers << " workers)\n";

    bool passed = rep.passed;
    json doc = verification_json(pres, rep);

    if (proof_replay) {
        json replay = json::array();
        const auto t1 = std::chrono::steady_clock::now();
        const SignedPermutation cert = match_m3();
        replay.push_back(match_m3_json(cert));
        passed = passed && cert.found;
        if (pres.n >= 4) {
            const Case1DetResult c1 = case1_determinant_check(pres.n, samples, seed);
            replay.push_back(case1_json(c1));
            passed = passed && c1.pass;
        }
        if (pres.n >= 3) {
            const Case2Result c2 = case2_rank_checks(pres.n, samples, seed);
            replay.push_back(case2_json(c2));
            passed = passed && c2.pass;
        }
        std::cerr << "proof replay: "
                  << std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count()
                  << " s\n";
        doc["proof_replay"] = replay;
        doc["passed"] = passed;
    }

    if (opt.format == "json") emit_json(doc);
    else if (opt.format == "csv") emit(verification_csv(pres, rep));
    else emit(verification_text(pres, rep));

    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_hilbert(const CommonOptions& opt) {
    const Presentation pres = load_presentation(opt, /*allow_custom=*/false);
    const ResonanceEngine engine(pres);
    const std::vector<std::int64_t> dims = engine.hilbert_dims(pres.n);
    const std::vector<std::int64_t> expected = expected_poincare(pres.n, pres.n);
    const bool match = dims == expected;

    if (opt.format == "json") emit_json(hilbert_json(pres, dims, expected, match));
    else if (opt.format == "csv") emit(hilbert_csv(dims, expected));
    else emit(hilbert_text(pres, dims, expected, match));

    return match ? kExitOk : kExitCheckFailed;
}

int cmd_components(const CommonOptions& opt) {
    const Presentation pres = load_presentation(opt, /*allow_custom=*/false);
    const std::vector<Subspace> comps =
        pres.family == Family::mccool ? components(pres.n) : product_components(pres.n);

    if (opt.format == "json") emit_json(components_json(pres, comps));
    else if (opt.format == "csv") emit(components_csv(pres, comps));
    else emit(components_text(pres, comps));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance: first resonance varieties of degree-2 exterior quotients, exactly"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string point_file;
    int samples = 100;
    std::uint64_t seed = 1;
    bool exclude_zero = false;
    bool proof_replay = false;

    auto add_common = [&](CLI::App* sub, bool with_point) {
        sub->add_option("--family", opt.family, "mccool | product-free | custom")
            ->default_str("mccool");
        sub->add_option("--n", opt.n, "family parameter (2..6 without override)");
        sub->add_option("--presentation", opt.presentation_file,
                        "presentation JSON file (custom family)");
        sub->add_option("--format", opt.format, "json | csv | text")->default_str("json");
        sub->add_flag("--max-n-override", opt.max_n_override, "allow n > 6 (slow)");
        if (with_point)
            sub->add_option("--point", point_file, "point JSON file")->required();
    };

    CLI::App* membership = app.add_subcommand("membership", "resonance membership of one point");
    add_common(membership, true);

    CLI::App* verify = app.add_subcommand("verify", "run the decomposition verification harness");
    add_common(verify, false);
    verify->add_option("--samples", samples, "seeded samples per component/case")
        ->default_str("100");
    verify->add_option("--seed", seed, "master seed")->default_str("1");
    verify->add_flag("--exclude-zero", exclude_zero, "resample zero points in sampling sections");
    verify->add_flag("--proof-replay", proof_replay,
                     "also replay the matrix and determinant constructions");

    CLI::App* hilbert = app.add_subcommand("hilbert", "graded dimensions against (1+nt)^(n-1)");
    add_common(hilbert, false);

    CLI::App* comps = app.add_subcommand("components", "list the decomposition components");
    add_common(comps, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(membership)) return cmd_membership(opt, point_file);
        if (app.got_subcommand(verify)) {
            if (samples < 1) throw std::runtime_error("--samples must be >= 1");
            return cmd_verify(opt, samples, seed, exclude_zero, proof_replay);
        }
        if (app.got_subcommand(hilbert)) return cmd_hilbert(opt);
        if (app.got_subcommand(comps)) return cmd_components(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
