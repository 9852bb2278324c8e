#pragma once

#include <resonance/engine.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace resonance {

// Linear subspace of A^1 named by the decomposition: pair components
// span{e_{i,j}, e_{j,i}}, triple components
// span{e_{j,i}-e_{k,i}, e_{i,j}-e_{k,j}, e_{i,k}-e_{j,k}}, and block
// components for the product-of-free-groups family.
struct Subspace {
    std::string id;    // "C(1,2)", "C(1,2,3)", "B(1)"
    std::string kind;  // "pair" | "triple" | "block"
    std::vector<int> support;
    int dim = 0;
    std::vector<Point> basis;
};

// All C_{i,j} (i<j) followed by all C_{i,j,k} (i<j<k), lexicographic.
std::vector<Subspace> components(int n);

// The block subspaces of product_free_presentation(n), each n-dimensional.
std::vector<Subspace> product_components(int n);

// Ids of every component containing a, by direct evaluation of the defining
// linear conditions.
std::vector<std::string> in_C(int n, const Point& a);

bool in_pair_component(int n, int i, int j, const Point& a);
bool in_triple_component(int n, int i, int j, int k, const Point& a);

// Block memberships for the product family (support contained in one block).
std::vector<std::string> in_blocks(const Presentation& p, const Point& a);

// Relabeling a_{p,q} -> a_{sigma(p),sigma(q)}; sigma is 1-based of length n+1
// with sigma[0] unused.
Point permute_point(const Point& a, const std::vector<int>& sigma, int n);
std::vector<int> random_permutation(SplitMix64& rng, int n);

// The proof's two explicit kernel elements for a point of C_{i,j,k}:
//   a_{j,i} tau^k_{i,j} - a_{i,k} tau^i_{j,k}
//   a_{i,j} tau^k_{i,j} - a_{i,k} tau^j_{i,k}
// Both are returned in I^2 coordinates and checked against psi_a exactly.
struct KernelCertificates {
    std::array<std::string, 2> ids;
    std::array<std::vector<Rational>, 2> coords;
    std::array<bool, 2> nonzero{false, false};
    bool verified = false;  // psi_a annihilates both combinations
};

KernelCertificates kernel_certificates(const ResonanceEngine& eng, int i, int j, int k,
                                       const Point& a);

struct SampleCheck {
    std::string target;
    Point point;
    bool expected_resonant = false;
    bool resonant = false;
    int kernel_dim = 0;
    int h1 = 0;
    std::vector<std::string> certificate_ids;
    bool ok = false;
};

struct OracleSummary {
    int checked = 0;
    std::vector<std::string> mismatches;
};

struct VerificationReport {
    std::string family;
    int n = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<SampleCheck> forward;
    std::vector<SampleCheck> reverse;
    std::vector<SampleCheck> case_targeted;
    OracleSummary oracle;
    std::vector<std::string> notes;
    bool passed = false;
};

// Two-sided verification harness for the decomposition theorem:
//   FORWARD       seeded points inside every component must be resonant (with
//                 kernel certificates on triple components),
//   REVERSE       seeded points rejected from C must be non-resonant,
//   CASE-TARGETED points matching the proof's case hypotheses must be
//                 non-resonant, also after a random index permutation,
//   ORACLE        kernel_dim equals the direct quotient computation on every
//                 nonzero sample.
VerificationReport verify_theorem(const ResonanceEngine& eng, int samples, std::uint64_t seed,
                                  bool exclude_zero = false, int workers = 1);

// Same harness shape for the product family: block points resonant, points
// off every block non-resonant.
VerificationReport verify_product(const ResonanceEngine& eng, int samples, std::uint64_t seed,
                                  bool exclude_zero = false, int workers = 1);

}  // namespace resonance
