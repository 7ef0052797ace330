// random_field.hpp -- deterministic rough data generator.
//
// random_sobolev_field(s, N, seed) returns a real mean-zero field with
// |c_n| = <n>^{-s-1/2-delta0}, delta0 = 0.01, and uniformly random phases.
// The profile sits marginally inside H^s: the H^s norm converges as N grows
// while any H^{s'} norm with s' > s + delta0 diverges like N^{s'-s-delta0}.
//
// Phases are drawn from a raw-bit mapping of mt19937_64 output so results
// are identical across standard libraries; mode n consumes the n-th draw,
// which keeps the low modes of the same seed stable as N grows.

#pragma once

#include <random>

#include "goodbsq/spectral_field.hpp"

namespace goodbsq {

inline constexpr double kRoughProfileDelta0 = 0.01;

// Uniform [0,1) from the top 53 bits of a 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal pair via Box-Muller on the portable uniforms.
inline std::pair<double, double> normal_pair(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

inline SpectralField random_sobolev_field(double s, int N, std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("random_sobolev_field: N must be >= 1");
    std::mt19937_64 rng(seed);
    SpectralField out(N, true);
    out.c(0) = cdouble(0.0, 0.0);
    const double expo = -s - 0.5 - kRoughProfileDelta0;
    for (int n = 1; n <= N; ++n) {
        const double mag = std::pow(1.0 + static_cast<double>(n) * n, 0.5 * expo);
        const double theta = 2.0 * 3.14159265358979323846 * uniform01(rng);
        const cdouble c = mag * cdouble(std::cos(theta), std::sin(theta));
        out.c(n) = c;
        out.c(-n) = std::conj(c);
    }
    return out;
}

// Complex field with unit l^2 norm and Gaussian coefficients; used by the
// randomized boundedness trials.
inline SpectralField random_unit_field(int N, std::mt19937_64& rng) {
    SpectralField out(N, false);
    for (int n = -N; n <= N; ++n) {
        const auto [re, im] = normal_pair(rng);
        out.c(n) = cdouble(re, im);
    }
    const double nrm = out.l2_norm();
    if (nrm > 0.0)
        for (auto& z : out.coeffs) z /= nrm;
    return out;
}

} // namespace goodbsq
