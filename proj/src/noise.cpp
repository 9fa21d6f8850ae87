#include "sattrack/noise.hpp"

#include <cmath>

#include "sattrack/errors.hpp"

namespace sattrack {

namespace {

std::uint64_t splitmix_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) {
    state_ = splitmix_mix(splitmix_mix(seed));
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
}

std::uint64_t SeededRng::next_u64() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1Dull;
}

double SeededRng::next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

SeededRng derive_stream(std::uint64_t master_seed, std::uint64_t tag) {
    return SeededRng(master_seed ^ tag);
}

double gaussian(SeededRng& rng, double mean, double variance) {
    if (variance < 0.0) throw InvalidVariance("gaussian: negative variance");
    if (variance == 0.0) return mean;
    for (;;) {
        const double u = 2.0 * rng.next_unit() - 1.0;
        const double v = 2.0 * rng.next_unit() - 1.0;
        const double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        return mean + std::sqrt(variance) * (u * std::sqrt(-2.0 * std::log(s) / s));
    }
}

Vector4 gaussian_vec(SeededRng& rng, const Vector4& mean, const Matrix4& covariance) {
    const PsdFactor f = chol_psd(covariance);  // NotPSD propagates
    Vector4 out = mean;
    if (f.rank == 0) return out;
    double z[4] = {};
    for (int k = 0; k < f.rank; ++k) z[k] = gaussian(rng, 0.0, 1.0);
    // covariance = P L L^T P^T, so the permuted coordinates get L*z.
    for (std::size_t i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int k = 0; k < f.rank; ++k) s += f.L.at(i, k) * z[k];
        out[static_cast<std::size_t>(f.perm[i])] += s;
    }
    return out;
}

}  // namespace sattrack
