#pragma once

#include <cstdint>

#include "sattrack/matrix.hpp"

namespace sattrack {

// Deterministic, seedable Gaussian noise. The generator is written out in
// full so another implementation (any language) can reproduce the streams
// bit for bit:
//
//   state seeding    two rounds of the SplitMix64 mixer over the raw seed:
//                      z += 0x9E3779B97F4A7C15
//                      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//                      z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//                      z ^= z >> 31
//                    a zero state after seeding is replaced by
//                    0x9E3779B97F4A7C15 (xorshift must not start at 0).
//   next_u64         xorshift64*:
//                      s ^= s >> 12; s ^= s << 25; s ^= s >> 27
//                      output = s * 0x2545F4914F6CDD1D
//   next_unit        ((output >> 11) + 0.5) * 2^-53, strictly inside (0, 1).
//   gaussian         polar Box-Muller, one value per call, partner value
//                    discarded (keeps the stream position independent of
//                    call history); variance 0 short-circuits to the mean
//                    without consuming randomness.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t next_u64();
    double next_unit();  // uniform on (0, 1)

private:
    std::uint64_t state_;
};

// Role tags for splitting one master seed into independent streams
// (stream = SeededRng(master ^ tag); the seeding scramble decorrelates them).
inline constexpr std::uint64_t kStreamInit = 0x1111111111111111ull;
inline constexpr std::uint64_t kStreamProcess = 0x2222222222222222ull;
inline constexpr std::uint64_t kStreamMeasurement = 0x3333333333333333ull;

SeededRng derive_stream(std::uint64_t master_seed, std::uint64_t tag);

// One draw from N(mean, variance). Variance 0 returns the mean exactly;
// negative variance throws InvalidVariance.
double gaussian(SeededRng& rng, double mean, double variance);

// One draw from N(mean, covariance) via pivoted Cholesky; PSD covariance
// only (NotPSD on a residual diagonal below -1e-10). Consumes one standard
// normal per positive pivot, in pivot order.
Vector4 gaussian_vec(SeededRng& rng, const Vector4& mean, const Matrix4& covariance);

}  // namespace sattrack
