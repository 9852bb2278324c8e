#include <resonance/reports.hpp>

#include <sstream>
#include <stdexcept>

namespace resonance {

using nlohmann::json;

namespace {

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

Integer integer_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw std::runtime_error(where + ": not an integer: \"" + j.get<std::string>() + "\"");
        }
    }
    throw std::runtime_error(where + ": expected an integer");
}

json vector_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const Rational& x : v) out.push_back(rational_json(x));
    return out;
}

json sample_check_json(const Presentation& p, const SampleCheck& c) {
    json e;
    e["target"] = c.target;
    e["point"] = point_json(p, c.point);
    e["expected_resonant"] = c.expected_resonant;
    e["resonant"] = c.resonant;
    e["kernel_dim"] = c.kernel_dim;
    e["h1_direct"] = c.h1;
    if (!c.certificate_ids.empty()) e["certificate_ids"] = c.certificate_ids;
    e["ok"] = c.ok;
    return e;
}

}  // namespace

json rational_json(const Rational& r) {
    return json::array({integer_json(r.get_num()), integer_json(r.get_den())});
}

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer() || j.is_string()) return Rational(integer_from_json(j, where));
    if (!j.is_array() || j.size() != 2)
        throw std::runtime_error(where + ": expected an integer or a [num, den] pair");
    const Integer num = integer_from_json(j[0], where);
    const Integer den = integer_from_json(j[1], where);
    if (den == 0) throw std::runtime_error(where + ": zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

json point_json(const Presentation& p, const Point& a) {
    json out = json::object();
    for (int i = 0; i < p.N; ++i) {
        if (a[i] != 0) out[p.gen_names[i]] = rational_json(a[i]);
    }
    return out;
}

Point parse_point(const Presentation& p, const json& doc) {
    if (!doc.is_object()) throw std::runtime_error("point: document must be a JSON object");
    Point a(p.N, Rational(0));
    for (const auto& [key, value] : doc.items()) {
        int idx = -1;
        try {
            idx = p.gen_index(key);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("point: unknown coordinate \"" + key + "\"");
        }
        a[idx] = rational_from_json(value, "point[\"" + key + "\"]");
    }
    return a;
}

Point parse_point_text(const Presentation& p, const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("point: invalid JSON: ") + e.what());
    }
    return parse_point(p, doc);
}

std::string point_compact(const Presentation& p, const Point& a) {
    std::string out;
    for (int i = 0; i < p.N; ++i) {
        if (a[i] == 0) continue;
        if (!out.empty()) out += ";";
        out += p.gen_names[i] + "=" + rational_to_string(a[i]);
    }
    return out.empty() ? "0" : out;
}

json membership_json(const Presentation& p, const MembershipReport& rep) {
    json out;
    out["command"] = "membership";
    out["family"] = family_name(p.family);
    if (p.n > 0) out["n"] = p.n;
    out["presentation"] = p.name;
    out["point"] = point_json(p, rep.point);
    out["is_zero_point"] = rep.is_zero_point;
    out["resonant"] = rep.resonant;
    out["kernel_dim"] = rep.kernel_dim;
    json basis = json::array();
    for (const auto& v : rep.kernel_vectors) basis.push_back(vector_json(v));
    out["kernel_basis"] = basis;
    out["relation_labels"] = p.relation_names;
    out["components"] = rep.components;
    if (rep.h1_direct) out["h1_direct"] = *rep.h1_direct;
    if (!rep.notes.empty()) out["notes"] = rep.notes;
    return out;
}

json verification_json(const Presentation& p, const VerificationReport& rep) {
    json out;
    out["command"] = "verify";
    out["family"] = rep.family;
    out["n"] = rep.n;
    out["samples"] = rep.samples;
    out["seed"] = rep.seed;
    json sections;
    json fwd = json::array();
    for (const SampleCheck& c : rep.forward) fwd.push_back(sample_check_json(p, c));
    sections["forward"] = fwd;
    json rev = json::array();
    for (const SampleCheck& c : rep.reverse) rev.push_back(sample_check_json(p, c));
    sections["reverse"] = rev;
    json cases = json::array();
    for (const SampleCheck& c : rep.case_targeted) cases.push_back(sample_check_json(p, c));
    sections["case_targeted"] = cases;
    sections["oracle"] = {{"checked", rep.oracle.checked}, {"mismatches", rep.oracle.mismatches}};
    out["sections"] = sections;
    out["counts"] = {{"forward", rep.forward.size()},
                     {"reverse", rep.reverse.size()},
                     {"case_targeted", rep.case_targeted.size()},
                     {"oracle_checked", rep.oracle.checked}};
    out["notes"] = rep.notes;
    out["passed"] = rep.passed;
    return out;
}

json hilbert_json(const Presentation& p, const std::vector<std::int64_t>& dims,
                  const std::vector<std::int64_t>& expected, bool match) {
    json out;
    out["command"] = "hilbert";
    out["family"] = family_name(p.family);
    out["n"] = p.n;
    out["dims"] = dims;
    out["expected"] = expected;
    out["match"] = match;
    return out;
}

json components_json(const Presentation& p, const std::vector<Subspace>& comps) {
    json out;
    out["command"] = "components";
    out["family"] = family_name(p.family);
    out["n"] = p.n;
    json list = json::array();
    for (const Subspace& s : comps) {
        json e;
        e["id"] = s.id;
        e["kind"] = s.kind;
        e["support"] = s.support;
        e["dim"] = s.dim;
        json basis = json::array();
        for (const Point& b : s.basis) basis.push_back(point_json(p, b));
        e["basis"] = basis;
        list.push_back(e);
    }
    out["components"] = list;
    return out;
}

json case1_json(const Case1DetResult& r) {
    json out;
    out["check"] = "case1-determinant";
    out["n"] = r.n;
    out["trials"] = r.trials;
    out["seed"] = r.seed;
    out["verdict"] = r.pass ? "pass" : "fail";
    out["exponents"] = {{"a(2,1)", r.m21}, {"a(3,4)", r.m34}};
    out["sign"] = r.sign;
    out["notes"] = r.notes;
    return out;
}

json case2_json(const Case2Result& r) {
    json out;
    out["check"] = "case2-rank";
    out["n"] = r.n;
    out["trials"] = r.trials;
    out["seed"] = r.seed;
    out["verdict"] = r.pass ? "pass" : "fail";
    json sub;
    if (r.ran_m3_rank) sub["m3_rank"] = r.m3_rank_pass ? "pass" : "fail";
    if (r.ran_support123) sub["support123"] = r.support123_pass ? "pass" : "fail";
    if (r.ran_final) sub["final"] = r.final_pass ? "pass" : "fail";
    out["subchecks"] = sub;
    if (r.fit.fitted) {
        out["fitted_exponents"] = {{"a(2,1)", r.fit.e21}, {"a(p,q)", r.fit.epq},
                                   {"a(r,s)", r.fit.ers}};
        out["monomial_sign"] = r.fit.sign;
        out["monomial_exact"] = r.fit.monomial_exact;
        out["stated_m21"] = r.paper_m21;
        out["degree_consistent_m21"] = r.degree_consistent_m21;
        out["m21_discrepancy_flagged"] = r.m21_discrepancy_flagged;
    }
    out["notes"] = r.notes;
    return out;
}

json match_m3_json(const SignedPermutation& cert) {
    json out;
    out["check"] = "match-m3";
    out["n"] = 3;
    out["verdict"] = cert.found ? "pass" : "fail";
    if (cert.found) {
        out["certificate"] = {{"row_perm", cert.row_perm},
                              {"col_perm", cert.col_perm},
                              {"row_sign", cert.row_sign},
                              {"col_sign", cert.col_sign}};
    }
    out["diagnostics"] = cert.diagnostics;
    return out;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

}  // namespace

std::string membership_csv(const Presentation& p, const MembershipReport& rep) {
    std::ostringstream out;
    out << "family,n,point,is_zero,resonant,kernel_dim,h1_direct,components,notes\n";
    std::string comps;
    for (const auto& c : rep.components) {
        if (!comps.empty()) comps += " ";
        comps += c;
    }
    out << family_name(p.family) << "," << p.n << "," << csv_escape(point_compact(p, rep.point))
        << "," << rep.is_zero_point << "," << rep.resonant << "," << rep.kernel_dim << ","
        << (rep.h1_direct ? std::to_string(*rep.h1_direct) : std::string()) << ","
        << csv_escape(comps) << "," << csv_escape(rep.notes) << "\n";
    return out.str();
}

std::string verification_csv(const Presentation& p, const VerificationReport& rep) {
    std::ostringstream out;
    out << "section,index,target,point,expected_resonant,resonant,kernel_dim,h1_direct,ok\n";
    auto emit = [&](const char* section, const std::vector<SampleCheck>& checks) {
        for (std::size_t i = 0; i < checks.size(); ++i) {
            const SampleCheck& c = checks[i];
            out << section << "," << i << "," << csv_escape(c.target) << ","
                << csv_escape(point_compact(p, c.point)) << "," << c.expected_resonant << ","
                << c.resonant << "," << c.kernel_dim << "," << c.h1 << "," << c.ok << "\n";
        }
    };
    emit("forward", rep.forward);
    emit("reverse", rep.reverse);
    emit("case_targeted", rep.case_targeted);
    return out.str();
}

std::string hilbert_csv(const std::vector<std::int64_t>& dims,
                        const std::vector<std::int64_t>& expected) {
    std::ostringstream out;
    out << "k,computed,expected,match\n";
    for (std::size_t k = 0; k < dims.size(); ++k) {
        out << k << "," << dims[k] << "," << expected[k] << "," << (dims[k] == expected[k])
            << "\n";
    }
    return out.str();
}

std::string components_csv(const Presentation& p, const std::vector<Subspace>& comps) {
    std::ostringstream out;
    out << "id,kind,dim,basis\n";
    for (const Subspace& s : comps) {
        std::string basis;
        for (const Point& b : s.basis) {
            if (!basis.empty()) basis += " | ";
            basis += point_compact(p, b);
        }
        out << csv_escape(s.id) << "," << s.kind << "," << s.dim << "," << csv_escape(basis)
            << "\n";
    }
    return out.str();
}

std::string membership_text(const Presentation& p, const MembershipReport& rep) {
    std::ostringstream out;
    out << "presentation: " << p.name << "\n";
    out << "point:        " << point_compact(p, rep.point) << "\n";
    out << "resonant:     " << (rep.resonant ? "yes" : "no") << "\n";
    out << "kernel dim:   " << rep.kernel_dim << "\n";
    if (rep.h1_direct) out << "h1 (direct):  " << *rep.h1_direct << "\n";
    if (!rep.components.empty()) {
        out << "components:  ";
        for (const auto& c : rep.components) out << " " << c;
        out << "\n";
    }
    if (!rep.notes.empty()) out << "notes:        " << rep.notes << "\n";
    return out.str();
}

std::string verification_text(const Presentation& p, const VerificationReport& rep) {
    std::ostringstream out;
    out << "verification of " << p.name << " (samples=" << rep.samples << ", seed=" << rep.seed
        << ")\n";
    auto section = [&](const char* name, const std::vector<SampleCheck>& checks) {
        std::size_t failures = 0;
        for (const SampleCheck& c : checks)
            if (!c.ok) ++failures;
        out << "  " << name << ": " << checks.size() << " checks, " << failures << " failures\n";
        for (const SampleCheck& c : checks) {
            if (!c.ok)
                out << "    FAIL " << c.target << " at " << point_compact(p, c.point)
                    << " resonant=" << c.resonant << " expected=" << c.expected_resonant << "\n";
        }
    };
    section("forward      ", rep.forward);
    section("reverse      ", rep.reverse);
    section("case-targeted", rep.case_targeted);
    out << "  oracle       : " << rep.oracle.checked << " checks, "
        << rep.oracle.mismatches.size() << " mismatches\n";
    for (const auto& m : rep.oracle.mismatches) out << "    MISMATCH " << m << "\n";
    for (const auto& nt : rep.notes) out << "  note: " << nt << "\n";
    out << (rep.passed ? "PASSED" : "FAILED") << "\n";
    return out.str();
}

std::string hilbert_text(const Presentation& p, const std::vector<std::int64_t>& dims,
                         const std::vector<std::int64_t>& expected, bool match) {
    std::ostringstream out;
    out << "hilbert dims of " << p.name << "\n";
    out << "  k computed expected\n";
    for (std::size_t k = 0; k < dims.size(); ++k)
        out << "  " << k << " " << dims[k] << " " << expected[k] << "\n";
    out << (match ? "MATCH" : "MISMATCH") << "\n";
    return out.str();
}

std::string components_text(const Presentation& p, const std::vector<Subspace>& comps) {
    std::ostringstream out;
    out << "components of " << p.name << " (" << comps.size() << ")\n";
    for (const Subspace& s : comps) {
        out << "  " << s.id << " kind=" << s.kind << " dim=" << s.dim << "\n";
        for (const Point& b : s.basis) out << "    basis: " << point_compact(p, b) << "\n";
    }
    return out.str();
}

std::vector<std::int64_t> expected_poincare(int n, int kmax) {
    std::vector<std::int64_t> out;
    for (int k = 0; k <= kmax; ++k) {
        if (k <= n - 1) {
            std::int64_t v = binomial(n - 1, k);
            for (int i = 0; i < k; ++i) v *= n;
            out.push_back(v);
        } else {
            out.push_back(0);
        }
    }
    return out;
}

}  // namespace resonance
