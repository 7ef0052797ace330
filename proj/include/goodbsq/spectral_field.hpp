// spectral_field.hpp -- coefficient-space representation of 2*pi-periodic
// functions plus the parameter block shared by every solver and scan.
//
// A SpectralField stores the Fourier coefficients c_n of
//     u(x) = sum_{n=-N..N} c_n e^{inx}
// densely for n in [-N, N].  Real-valued fields carry a flag asserting the
// Hermitian symmetry c_{-n} = conj(c_n).

#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "goodbsq/fft.hpp"

namespace goodbsq {

// Japanese bracket <n> = sqrt(1+n^2) and the dispersion weight
// mu_n = |n|<n> = |n| sqrt(1+n^2), with mu_0 = 0.
inline double bracket(double n) { return std::sqrt(1.0 + n * n); }
inline double dispersion_mu(double n) { return std::abs(n) * bracket(n); }

struct SpectralField {
    int trunc = 0;                 // modes -trunc..trunc
    std::vector<cdouble> coeffs;   // length 2*trunc+1, index n+trunc
    bool real_flag = true;         // Hermitian symmetry asserted

    SpectralField() = default;
    explicit SpectralField(int n_trunc, bool real = true)
        : trunc(n_trunc), coeffs(static_cast<std::size_t>(2 * n_trunc + 1)), real_flag(real) {
        if (n_trunc < 0) throw std::invalid_argument("SpectralField: negative truncation");
    }

    int size() const { return 2 * trunc + 1; }

    cdouble& c(int n) { return coeffs[static_cast<std::size_t>(n + trunc)]; }
    const cdouble& c(int n) const { return coeffs[static_cast<std::size_t>(n + trunc)]; }

    bool is_hermitian(double tol = 1e-12) const {
        double scale = 0.0;
        for (const auto& z : coeffs) scale = std::max(scale, std::abs(z));
        const double bound = tol * (1.0 + scale);
        for (int n = 0; n <= trunc; ++n)
            if (std::abs(c(-n) - std::conj(c(n))) > bound) return false;
        return true;
    }

    // Force exact Hermitian symmetry by averaging the +-n pairs.
    void symmetrize_hermitian() {
        for (int n = 1; n <= trunc; ++n) {
            const cdouble avg = 0.5 * (c(n) + std::conj(c(-n)));
            c(n) = avg;
            c(-n) = std::conj(avg);
        }
        c(0) = cdouble(c(0).real(), 0.0);
        real_flag = true;
    }

    double l2_norm() const {
        double s = 0.0;
        for (const auto& z : coeffs) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const auto& z : coeffs) s = std::max(s, std::abs(z));
        return s;
    }

    bool has_zero_mean(double tol = 1e-13) const {
        return std::abs(c(0)) <= tol * (1.0 + max_abs());
    }
};

inline void require_same_trunc(const SpectralField& u, const SpectralField& v,
                               const char* who) {
    if (u.trunc != v.trunc)
        throw std::invalid_argument(std::string(who) + ": truncation mismatch");
}

inline SpectralField operator+(const SpectralField& u, const SpectralField& v) {
    require_same_trunc(u, v, "operator+");
    SpectralField out(u.trunc, u.real_flag && v.real_flag);
    for (int i = 0; i < u.size(); ++i) out.coeffs[i] = u.coeffs[i] + v.coeffs[i];
    return out;
}

inline SpectralField operator-(const SpectralField& u, const SpectralField& v) {
    require_same_trunc(u, v, "operator-");
    SpectralField out(u.trunc, u.real_flag && v.real_flag);
    for (int i = 0; i < u.size(); ++i) out.coeffs[i] = u.coeffs[i] - v.coeffs[i];
    return out;
}

inline SpectralField operator*(double a, const SpectralField& u) {
    SpectralField out(u.trunc, u.real_flag);
    for (int i = 0; i < u.size(); ++i) out.coeffs[i] = a * u.coeffs[i];
    return out;
}

inline SpectralField operator*(cdouble a, const SpectralField& u) {
    SpectralField out(u.trunc, u.real_flag && a.imag() == 0.0);
    for (int i = 0; i < u.size(); ++i) out.coeffs[i] = a * u.coeffs[i];
    return out;
}

inline void axpy(SpectralField& y, cdouble a, const SpectralField& x) {
    require_same_trunc(y, x, "axpy");
    for (int i = 0; i < y.size(); ++i) y.coeffs[i] += a * x.coeffs[i];
    if (a.imag() != 0.0 || !x.real_flag) y.real_flag = false;
}

// Conjugate of the underlying function: coefficients conj(c(-n)).
inline SpectralField conj_field(const SpectralField& u) {
    SpectralField out(u.trunc, u.real_flag);
    for (int n = -u.trunc; n <= u.trunc; ++n) out.c(n) = std::conj(u.c(-n));
    return out;
}

inline double linf_coeff_dist(const SpectralField& u, const SpectralField& v) {
    require_same_trunc(u, v, "linf_coeff_dist");
    double d = 0.0;
    for (int i = 0; i < u.size(); ++i) d = std::max(d, std::abs(u.coeffs[i] - v.coeffs[i]));
    return d;
}

inline double l2_dist(const SpectralField& u, const SpectralField& v) {
    require_same_trunc(u, v, "l2_dist");
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i) s += std::norm(u.coeffs[i] - v.coeffs[i]);
    return std::sqrt(s);
}

// Max over +-n pairs of |c(-n) - conj(c(n))|: the measured Hermitian defect.
inline double hermitian_defect(const SpectralField& u) {
    double d = 0.0;
    for (int n = 0; n <= u.trunc; ++n) d = std::max(d, std::abs(u.c(-n) - std::conj(u.c(n))));
    return d;
}

// Scalar parameters of one run: data roughness alpha, remainder regularity
// gamma (w-variable; beta = gamma - alpha is the u-variable counterpart),
// modulation slack delta, gauge drift coefficients A0/A1, truncation and
// time stepping.
//
// A0/A1 are the literal drift coefficients: the drift term is
// (A0 + A1 t) P w and the gauge multiplier exponent is A0 t + A1 t^2/2.
// When derived from initial data these equal (1/pi) * integral of u0 resp.
// u1, i.e. twice the data means.
struct ModelParams {
    double alpha = 0.25;
    double gamma = 0.3;
    double beta = std::numeric_limits<double>::quiet_NaN(); // defaults to gamma - alpha
    double delta = 0.01;
    double A0 = 0.0;
    double A1 = 0.0;
    int trunc = 32;
    double dt = 1e-3;
    double horizon = 0.25;

    void validate() const {
        if (!(alpha >= 0.0 && alpha < 0.5))
            throw std::invalid_argument("ModelParams: alpha must lie in [0, 1/2)");
        if (!(delta > 0.0 && delta <= 0.1))
            throw std::invalid_argument("ModelParams: delta must lie in (0, 0.1]");
        if (trunc < 4) throw std::invalid_argument("ModelParams: trunc must be >= 4");
        if (!(dt > 0.0)) throw std::invalid_argument("ModelParams: dt must be positive");
        if (!(horizon > 0.0)) throw std::invalid_argument("ModelParams: horizon must be positive");
    }

    double beta_or_default() const {
        return std::isnan(beta) ? gamma - alpha : beta;
    }
};

} // namespace goodbsq
