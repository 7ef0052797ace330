// multipliers.hpp -- Fourier multipliers shared by the whole library:
// the dispersion operator L with symbol |n|<n>, its inverse on mean-zero
// fields, the order-zero operator P with symbol -|n|/<n>, bracket powers
// <n>^s, |nabla|, and the gauge multiplier exp(-+(a0 t + a1 t^2/2)|n|/<n>).
// Also the Sobolev norm, the free evolution of the second-order flow, the
// half-wave phases, and the exact dealiased quadratic product.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "goodbsq/spectral_field.hpp"

namespace goodbsq {

struct MultiplierId {
    enum class Tag { L, Linv, P, BracketPow, AbsDeriv, Gauge };

    Tag tag = Tag::L;
    double s = 0.0;       // BracketPow exponent
    double t = 0.0;       // Gauge time
    double a0 = 0.0;      // Gauge drift coefficients
    double a1 = 0.0;
    int sign = +1;        // Gauge orientation

    static MultiplierId L() { return {Tag::L}; }
    static MultiplierId Linv() { return {Tag::Linv}; }
    static MultiplierId P() { return {Tag::P}; }
    static MultiplierId bracket_pow(double s) {
        MultiplierId m{Tag::BracketPow};
        m.s = s;
        return m;
    }
    static MultiplierId abs_deriv() { return {Tag::AbsDeriv}; }
    static MultiplierId gauge(double t, double a0, double a1, int sign) {
        if (sign != +1 && sign != -1)
            throw std::invalid_argument("MultiplierId::gauge: sign must be +-1");
        MultiplierId m{Tag::Gauge};
        m.t = t;
        m.a0 = a0;
        m.a1 = a1;
        m.sign = sign;
        return m;
    }

    double symbol(int n) const {
        const double an = std::abs(static_cast<double>(n));
        switch (tag) {
            case Tag::L: return dispersion_mu(n);
            case Tag::Linv: return n == 0 ? 0.0 : 1.0 / dispersion_mu(n);
            case Tag::P: return n == 0 ? 0.0 : -an / bracket(n);
            case Tag::BracketPow: return std::pow(1.0 + an * an, 0.5 * s);
            case Tag::AbsDeriv: return an;
            case Tag::Gauge: {
                const double phase = a0 * t + 0.5 * a1 * t * t;
                return std::exp(-static_cast<double>(sign) * phase * an / bracket(n));
            }
        }
        return 0.0;
    }

    bool needs_zero_mean() const { return tag == Tag::Linv || tag == Tag::AbsDeriv; }
};

// Coefficient-wise product with the (real, even) symbol.  Preserves the
// Hermitian flag.
inline SpectralField apply_multiplier(const SpectralField& u, const MultiplierId& m) {
    if (m.needs_zero_mean() && !u.has_zero_mean())
        throw std::domain_error("apply_multiplier: operator requires a mean-zero field");
    SpectralField out(u.trunc, u.real_flag);
    for (int n = -u.trunc; n <= u.trunc; ++n) out.c(n) = m.symbol(n) * u.c(n);
    return out;
}

// || <n>^s c_n ||_{l^2}
inline double sobolev_norm(const SpectralField& u, double s) {
    double acc = 0.0;
    for (int n = -u.trunc; n <= u.trunc; ++n) {
        const double w = std::pow(1.0 + static_cast<double>(n) * n, s);
        acc += w * std::norm(u.c(n));
    }
    return std::sqrt(acc);
}

// Position component of the free second-order flow:
//   cos(t mu_n) f_n + sin(t mu_n)/mu_n g_n,  with the n=0 limit f_0 + t g_0.
inline SpectralField free_evolution(const SpectralField& f, const SpectralField& g, double t) {
    require_same_trunc(f, g, "free_evolution");
    SpectralField out(f.trunc, f.real_flag && g.real_flag);
    for (int n = -f.trunc; n <= f.trunc; ++n) {
        if (n == 0) {
            out.c(0) = f.c(0) + t * g.c(0);
        } else {
            const double mu = dispersion_mu(n);
            out.c(n) = std::cos(t * mu) * f.c(n) + std::sin(t * mu) / mu * g.c(n);
        }
    }
    return out;
}

// Velocity component of the same flow: -mu sin(t mu) f_n + cos(t mu) g_n.
inline SpectralField free_evolution_velocity(const SpectralField& f, const SpectralField& g,
                                             double t) {
    require_same_trunc(f, g, "free_evolution_velocity");
    SpectralField out(f.trunc, f.real_flag && g.real_flag);
    for (int n = -f.trunc; n <= f.trunc; ++n) {
        if (n == 0) {
            out.c(0) = g.c(0);
        } else {
            const double mu = dispersion_mu(n);
            out.c(n) = -mu * std::sin(t * mu) * f.c(n) + std::cos(t * mu) * g.c(n);
        }
    }
    return out;
}

// e^{i sign t L}: coefficient-wise phase e^{i sign t mu_n}.  Complex symbol,
// so the Hermitian flag is dropped.
inline SpectralField half_wave(const SpectralField& u, double t, int sign) {
    if (sign != +1 && sign != -1) throw std::invalid_argument("half_wave: sign must be +-1");
    SpectralField out(u.trunc, false);
    for (int n = -u.trunc; n <= u.trunc; ++n) {
        const double phase = static_cast<double>(sign) * t * dispersion_mu(n);
        out.c(n) = cdouble(std::cos(phase), std::sin(phase)) * u.c(n);
    }
    return out;
}

// Exact truncated convolution: coefficients of the pointwise product uv,
// restricted back to [-N, N].  The padded transform length >= 4N+1 makes the
// quadratic product alias-free; agreement with the direct O(N^2) sum is at
// rounding level.
inline SpectralField quadratic_product(const SpectralField& u, const SpectralField& v) {
    require_same_trunc(u, v, "quadratic_product");
    const auto full = convolve_linear(u.coeffs, v.coeffs); // indices -2N..2N
    SpectralField out(u.trunc, u.real_flag && v.real_flag);
    const int N = u.trunc;
    for (int n = -N; n <= N; ++n)
        out.c(n) = full[static_cast<std::size_t>(n + 2 * N)];
    if (out.real_flag) out.symmetrize_hermitian();
    return out;
}

} // namespace goodbsq
