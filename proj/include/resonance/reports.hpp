#pragma once

#include <resonance/engine.hpp>
#include <resonance/proof_replay.hpp>
#include <resonance/theorem.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace resonance {

// All report output is deterministic: nlohmann::json orders keys, rationals
// serialize as [num, den] (strings only when they exceed 64 bits), and no
// wall-clock data enters a document. Identical (command, config, seed) give
// byte-identical output.

nlohmann::json rational_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j, const std::string& where);

// Sparse map generator-name -> [num, den]; zero coordinates are omitted.
nlohmann::json point_json(const Presentation& p, const Point& a);

// Point files are JSON maps from generator label ("p,q") to a rational;
// missing coordinates default to zero.
Point parse_point(const Presentation& p, const nlohmann::json& doc);
Point parse_point_text(const Presentation& p, const std::string& text);

std::string point_compact(const Presentation& p, const Point& a);  // "2,1=1;3,1=-1"

nlohmann::json membership_json(const Presentation& p, const MembershipReport& rep);
nlohmann::json verification_json(const Presentation& p, const VerificationReport& rep);
nlohmann::json hilbert_json(const Presentation& p, const std::vector<std::int64_t>& dims,
                            const std::vector<std::int64_t>& expected, bool match);
nlohmann::json components_json(const Presentation& p, const std::vector<Subspace>& comps);

nlohmann::json case1_json(const Case1DetResult& r);
nlohmann::json case2_json(const Case2Result& r);
nlohmann::json match_m3_json(const SignedPermutation& cert);

std::string membership_csv(const Presentation& p, const MembershipReport& rep);
std::string verification_csv(const Presentation& p, const VerificationReport& rep);
std::string hilbert_csv(const std::vector<std::int64_t>& dims,
                        const std::vector<std::int64_t>& expected);
std::string components_csv(const Presentation& p, const std::vector<Subspace>& comps);

std::string membership_text(const Presentation& p, const MembershipReport& rep);
std::string verification_text(const Presentation& p, const VerificationReport& rep);
std::string hilbert_text(const Presentation& p, const std::vector<std::int64_t>& dims,
                         const std::vector<std::int64_t>& expected, bool match);
std::string components_text(const Presentation& p, const std::vector<Subspace>& comps);

// The binomial coefficients of (1+nt)^(n-1) up to kmax, zero above n-1.
std::vector<std::int64_t> expected_poincare(int n, int kmax);

}  // namespace resonance
