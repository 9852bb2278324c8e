#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace resonance {

// Exact arithmetic everywhere: resonance is a rank condition, so every
// mathematical path works over arbitrary-precision rationals.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r);

// SplitMix64: small deterministic generator used for all seeded sampling.
// std::uniform_int_distribution is implementation-defined, so reports would
// not be reproducible across standard libraries; this is.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive. Rejection keeps it bias-free.
    long uniform(long lo, long hi);

    // Uniform in [lo, hi] excluding 0.
    long nonzero_uniform(long lo, long hi);

private:
    std::uint64_t state_;
};

// Per-sample sub-seeds are derived from (master seed, stream tag, index) so
// batch runs produce identical reports regardless of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

// Worker count for batch evaluation: RESONANCE_LAB_THREADS when set,
// otherwise hardware concurrency capped at 8.
int worker_count();

}  // namespace resonance
