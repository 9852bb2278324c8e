#pragma once

#include <resonance/linalg.hpp>
#include <resonance/presentation.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace resonance {

struct MembershipReport {
    Point point;
    bool is_zero_point = false;
    int kernel_dim = 0;
    std::vector<std::vector<Rational>> kernel_vectors;  // I^2 coordinates
    bool resonant = false;
    std::optional<int> h1_direct;
    std::vector<std::string> components;  // filled by the theorem/CLI layer
    std::string notes;
};

// Holds one presentation together with its psi matrix and the quotient data
// needed by the direct cross-check. All queries are const and safe to run
// concurrently.
class ResonanceEngine {
public:
    // Requires linearly independent relations (the psi reduction identifies
    // I^2 with the span of the relation list).
    explicit ResonanceEngine(Presentation p);

    const Presentation& pres() const { return pres_; }
    const LinFormMatrix& psi() const { return psi_; }

    // Kernel of the specialized psi matrix; a = 0 is reported resonant by
    // convention with an explanatory note.
    MembershipReport membership(const Point& a, bool with_oracle = false) const;

    // dim H^1(A, delta_a) computed entirely in the quotient A = E/I.
    int h1_direct(const Point& a) const;

    // dim A^k for k = 0..kmax, via exact ranks of the relation spans.
    std::vector<std::int64_t> hilbert_dims(int kmax) const;

private:
    Presentation pres_;
    LinFormMatrix psi_;
    std::vector<Monomial> e2_basis_;
    RrefAccumulator i2_rref_;        // reduced basis of I^2 in E^2 coordinates
    std::vector<int> a2_coords_;     // E^2 columns forming the A^2 basis
};

// Rows labeled by the degree-3 monomial basis of E, columns by relations;
// column r holds the coordinates of (sum_g a_g e_g) * r as linear forms.
LinFormMatrix psi_matrix(const Presentation& p);

// Sampling helpers shared by the verification harness and the CLI. All
// coordinates are integers in [-9, 9].
Point random_point(SplitMix64& rng, int N, bool exclude_zero);
Point random_point_in_span(SplitMix64& rng, const std::vector<Point>& basis, bool exclude_zero);

// Deterministic parallel map: results are written by index, so the output is
// identical for every worker count.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace resonance
