// normal_form.hpp -- the bilinear operator that inverts the non-resonant
// quadratic interactions of the half-wave system, its symbol asymptotics,
// the correction field built from free half-wave profiles, and the error
// terms produced by the mean-drift gauge.
//
// The operator acts coefficient-wise through
//
//   (u,v) |-> -1/2 sum_{xi eta (xi+eta) != 0}
//       |xi+eta| <xi>^a <eta>^a u(xi) v(eta) e^{i(xi+eta)x}
//       / ( <xi+eta>^{1+a} [e1 |xi|<xi> + e2 |eta|<eta> - e |xi+eta|<xi+eta>] )
//
// and satisfies, for free flows u, v of the e1/e2 half-waves,
//
//   (d/dt - i e L) T^{e;e1,e2}(u,v) = (i/2) N(u,v),
//
// with N the quadratic nonlinearity of dynamics.hpp.  The bracket in the
// denominator never vanishes away from xi*eta*(xi+eta) = 0 (the measured
// minimum over |xi|,|eta| <= 512 is ~1.64).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "goodbsq/multipliers.hpp"
#include "goodbsq/spectral_field.hpp"

namespace goodbsq {

struct SignTriple {
    int eps = +1;
    int eps1 = +1;
    int eps2 = +1;

    SignTriple() = default;
    SignTriple(int e, int e1, int e2) : eps(e), eps1(e1), eps2(e2) {
        if ((e != 1 && e != -1) || (e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1))
            throw std::invalid_argument("SignTriple: entries must be +-1");
    }
};

enum class SymbolVariant { exact, asym_mm, asym_pp, asym_pm };

// e1 |xi|<xi> + e2 |eta|<eta> - e |xi+eta|<xi+eta>
inline double resonance_denominator(long xi, long eta, const SignTriple& s) {
    if (xi == 0 || eta == 0 || xi + eta == 0)
        throw std::domain_error("resonance_denominator: resonant input xi*eta*(xi+eta)=0");
    const double d = s.eps1 * dispersion_mu(static_cast<double>(xi)) +
                     s.eps2 * dispersion_mu(static_cast<double>(eta)) -
                     s.eps * dispersion_mu(static_cast<double>(xi + eta));
    if (d == 0.0)
        throw std::logic_error("resonance_denominator: vanishing bracket off the resonant set");
    return d;
}

// Signed symbol of the bilinear operator at (xi, eta); zero on the excluded
// set is the caller's concern (this throws there).
inline double normal_form_symbol(long xi, long eta, const SignTriple& s, double alpha) {
    const double d = resonance_denominator(xi, eta, s);
    const double k = static_cast<double>(xi + eta);
    const double num = std::abs(k) * std::pow(bracket(static_cast<double>(xi)), alpha) *
                       std::pow(bracket(static_cast<double>(eta)), alpha);
    return -0.5 * num / (std::pow(bracket(k), 1.0 + alpha) * d);
}

// |sigma| for the exact symbol, or the three size asymptotics (stated for
// the +1 output flow).
inline double symbol_value(long xi, long eta, SymbolVariant variant, const SignTriple& s,
                           double alpha) {
    if (xi == 0 || eta == 0 || xi + eta == 0)
        throw std::domain_error("symbol_value: resonant input");
    const double bx = bracket(static_cast<double>(xi));
    const double be = bracket(static_cast<double>(eta));
    const double bk = bracket(static_cast<double>(xi + eta));
    switch (variant) {
        case SymbolVariant::exact:
            return std::abs(normal_form_symbol(xi, eta, s, alpha));
        case SymbolVariant::asym_mm: {
            const double m2 = std::max(static_cast<double>(xi) * xi,
                                       static_cast<double>(eta) * eta);
            return std::pow(bx, alpha) * std::pow(be, alpha) / (std::pow(bk, alpha) * m2);
        }
        case SymbolVariant::asym_pp:
            return 1.0 / (std::pow(bk, alpha) * std::pow(bx, 1.0 - alpha) *
                          std::pow(be, 1.0 - alpha));
        case SymbolVariant::asym_pm:
            return std::pow(bx, alpha) /
                   (std::pow(bk, alpha + 1.0) * std::pow(be, 1.0 - alpha));
    }
    return 0.0;
}

// The bilinear operator at fixed truncation, sign triple and alpha.  The
// symbol table is cached when it fits; above the cap entries are produced
// from O(N) lookup tables on the fly.
class BilinearNormalForm {
  public:
    BilinearNormalForm(int trunc, double alpha, const SignTriple& signs,
                       std::size_t cache_cap = std::size_t(8) << 20)
        : trunc_(trunc), alpha_(alpha), signs_(signs) {
        if (trunc < 1) throw std::invalid_argument("BilinearNormalForm: trunc must be >= 1");
        const int m = 2 * trunc + 1;
        mu_.resize(trunc + 1);
        br_a_.resize(trunc + 1);
        out_factor_.resize(trunc + 1);
        for (int n = 0; n <= trunc; ++n) {
            mu_[n] = dispersion_mu(n);
            br_a_[n] = std::pow(bracket(n), alpha);
            out_factor_[n] = n == 0 ? 0.0 : n / std::pow(bracket(n), 1.0 + alpha);
        }
        if (static_cast<std::size_t>(m) * m <= cache_cap) {
            sigma_.assign(static_cast<std::size_t>(m) * m, 0.0);
            for (int xi = -trunc; xi <= trunc; ++xi)
                for (int eta = -trunc; eta <= trunc; ++eta)
                    sigma_[idx(xi, eta)] = sigma_raw(xi, eta);
        }
    }

    int trunc() const { return trunc_; }
    double alpha() const { return alpha_; }
    const SignTriple& signs() const { return signs_; }

    double sigma(int xi, int eta) const {
        if (!sigma_.empty()) return sigma_[idx(xi, eta)];
        return sigma_raw(xi, eta);
    }

    // out(k) = sum_{xi+eta=k} sigma(xi,eta) u(xi) v(eta); mean-zero output.
    SpectralField apply(const SpectralField& u, const SpectralField& v) const {
        if (u.trunc != trunc_ || v.trunc != trunc_)
            throw std::invalid_argument("BilinearNormalForm::apply: truncation mismatch");
        SpectralField out(trunc_, false);
        const int N = trunc_;
        if (!sigma_.empty()) {
            for (int xi = -N; xi <= N; ++xi) {
                const cdouble uxi = u.c(xi);
                if (uxi == cdouble(0.0, 0.0)) continue;
                const double* srow = &sigma_[idx(xi, -N)];
                const cdouble* vrow = &v.coeffs[0];
                const int lo = std::max(-N, -N - xi), hi = std::min(N, N - xi);
                cdouble* orow = &out.coeffs[static_cast<std::size_t>(xi + lo + N)];
                for (int j = lo; j <= hi; ++j)
                    orow[j - lo] += srow[j + N] * uxi * vrow[j + N];
            }
        } else {
            for (int xi = -N; xi <= N; ++xi) {
                const cdouble uxi = u.c(xi);
                if (uxi == cdouble(0.0, 0.0)) continue;
                const int lo = std::max(-N, -N - xi), hi = std::min(N, N - xi);
                for (int eta = lo; eta <= hi; ++eta) {
                    const double s = sigma_raw(xi, eta);
                    if (s != 0.0) out.c(xi + eta) += s * uxi * v.c(eta);
                }
            }
        }
        out.real_flag = u.real_flag && v.real_flag;
        if (out.real_flag) out.symmetrize_hermitian();
        return out;
    }

  private:
    std::size_t idx(int xi, int eta) const {
        return static_cast<std::size_t>(xi + trunc_) * (2 * trunc_ + 1) +
               static_cast<std::size_t>(eta + trunc_);
    }

    double sigma_raw(int xi, int eta) const {
        const int k = xi + eta;
        if (xi == 0 || eta == 0 || k == 0 || k < -trunc_ || k > trunc_) return 0.0;
        const double d = signs_.eps1 * mu_[std::abs(xi)] + signs_.eps2 * mu_[std::abs(eta)] -
                         signs_.eps * mu_[std::abs(k)];
        return -0.5 * out_factor_[std::abs(k)] * br_a_[std::abs(xi)] * br_a_[std::abs(eta)] / d;
    }

    int trunc_;
    double alpha_;
    SignTriple signs_;
    std::vector<double> mu_, br_a_, out_factor_;
    std::vector<double> sigma_;
};

// One-shot application.
inline SpectralField apply_normal_form(const SpectralField& u, const SpectralField& v,
                                       const SignTriple& signs, double alpha) {
    require_same_trunc(u, v, "apply_normal_form");
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::invalid_argument("apply_normal_form: alpha must lie in [0, 1/2)");
    BilinearNormalForm op(u.trunc, alpha, signs);
    return op.apply(u, v);
}

// Free half-wave profile: for eps=+1 the field (1/2) e^{itL} f + (1/2i) e^{itL} L^{-1} g,
// for eps=-1 its conjugate-flow partner (1/2) e^{-itL} conj(f) - (1/2i) e^{-itL} L^{-1} conj(g).
inline SpectralField half_wave_profile(const SpectralField& f, const SpectralField& g, double t,
                                       int eps) {
    require_same_trunc(f, g, "half_wave_profile");
    if (!f.has_zero_mean() || !g.has_zero_mean())
        throw std::domain_error("half_wave_profile: data must be mean-zero");
    const cdouble half_over_i(0.0, -0.5); // 1/(2i)
    SpectralField base(f.trunc, false);
    if (eps == +1) {
        for (int n = -f.trunc; n <= f.trunc; ++n) {
            const double linv = n == 0 ? 0.0 : 1.0 / dispersion_mu(n);
            base.c(n) = 0.5 * f.c(n) + half_over_i * linv * g.c(n);
        }
        return half_wave(base, t, +1);
    }
    const SpectralField fc = conj_field(f), gc = conj_field(g);
    for (int n = -f.trunc; n <= f.trunc; ++n) {
        const double linv = n == 0 ? 0.0 : 1.0 / dispersion_mu(n);
        base.c(n) = 0.5 * fc.c(n) - half_over_i * linv * gc.c(n);
    }
    return half_wave(base, t, -1);
}

// Cached operator set for one (trunc, alpha): the three sign combinations of
// each output flow.  Everything the decomposed integrator needs per stage.
class NormalFormEngine {
  public:
    NormalFormEngine(int trunc, double alpha)
        : trunc_(trunc), alpha_(alpha),
          pp_p_(trunc, alpha, SignTriple(+1, +1, +1)),
          pm_p_(trunc, alpha, SignTriple(+1, +1, -1)),
          mm_p_(trunc, alpha, SignTriple(+1, -1, -1)),
          pp_m_(trunc, alpha, SignTriple(-1, +1, +1)),
          pm_m_(trunc, alpha, SignTriple(-1, +1, -1)),
          mm_m_(trunc, alpha, SignTriple(-1, -1, -1)) {}

    int trunc() const { return trunc_; }
    double alpha() const { return alpha_; }

    // T^{e;+,+}(a,a) + 2 T^{e;+,-}(a,b) + T^{e;-,-}(b,b) where a/b are the
    // +- flow arguments.
    SpectralField correction_sum(const SpectralField& a, const SpectralField& b, int eps) const {
        const auto& pp = eps == +1 ? pp_p_ : pp_m_;
        const auto& pm = eps == +1 ? pm_p_ : pm_m_;
        const auto& mm = eps == +1 ? mm_p_ : mm_m_;
        SpectralField out = pp.apply(a, a);
        axpy(out, cdouble(2.0, 0.0), pm.apply(a, b));
        axpy(out, cdouble(1.0, 0.0), mm.apply(b, b));
        return out;
    }

    // Mixed sum with one slot replaced, as appears in the gauge error term:
    // 2 T^{e;+,+}(Pa,a) + 2 T^{e;+,-}(Pa,b) + 2 T^{e;+,-}(a,Pb) + 2 T^{e;-,-}(Pb,b).
    SpectralField drift_hit_sum(const SpectralField& a, const SpectralField& pa,
                                const SpectralField& b, const SpectralField& pb,
                                int eps) const {
        const auto& pp = eps == +1 ? pp_p_ : pp_m_;
        const auto& pm = eps == +1 ? pm_p_ : pm_m_;
        const auto& mm = eps == +1 ? mm_p_ : mm_m_;
        SpectralField out = pp.apply(pa, a);
        axpy(out, cdouble(1.0, 0.0), pm.apply(pa, b));
        axpy(out, cdouble(1.0, 0.0), pm.apply(a, pb));
        axpy(out, cdouble(1.0, 0.0), mm.apply(pb, b));
        return 2.0 * out;
    }

  private:
    int trunc_;
    double alpha_;
    BilinearNormalForm pp_p_, pm_p_, mm_p_, pp_m_, pm_m_, mm_m_;
};

// Correction field h^eps(t) = T^{eps;+,+}(L,L) + 2T^{eps;+,-}(L,Lbar) + T^{eps;-,-}(Lbar,Lbar)
// with L the free profile of the data; in the gauged variant each argument
// is premultiplied by the (+) gauge and the sum postmultiplied by the (-)
// gauge, with drift coefficients params.A0/A1.
inline SpectralField assemble_h(const SpectralField& f, const SpectralField& g, double t, int eps,
                                const ModelParams& params, bool gauged) {
    if (eps != +1 && eps != -1) throw std::invalid_argument("assemble_h: eps must be +-1");
    if (!f.has_zero_mean() || !g.has_zero_mean())
        throw std::domain_error("assemble_h: data must be mean-zero");
    NormalFormEngine engine(f.trunc, params.alpha);
    SpectralField a = half_wave_profile(f, g, t, +1);
    SpectralField b = half_wave_profile(f, g, t, -1);
    if (gauged) {
        const auto gp = MultiplierId::gauge(t, params.A0, params.A1, +1);
        a = apply_multiplier(a, gp);
        b = apply_multiplier(b, gp);
    }
    SpectralField out = engine.correction_sum(a, b, eps);
    if (gauged)
        out = apply_multiplier(out, MultiplierId::gauge(t, params.A0, params.A1, -1));
    return out;
}

// Full time-derivative error of the gauged correction as used by the
// decomposed flow: every term produced when d/dt hits a gauge factor, for
// the flow-oriented correction (+h for eps=+1, -h for eps=-1).  Vanishes
// when A0 = A1 = 0.
inline SpectralField err_term(const SpectralField& f, const SpectralField& g, double t, int eps,
                              const ModelParams& params) {
    if (eps != +1 && eps != -1) throw std::invalid_argument("err_term: eps must be +-1");
    if (!f.has_zero_mean() || !g.has_zero_mean())
        throw std::domain_error("err_term: data must be mean-zero");
    if (params.A0 == 0.0 && params.A1 == 0.0) return SpectralField(f.trunc, true);

    NormalFormEngine engine(f.trunc, params.alpha);
    const auto gauge_p = MultiplierId::gauge(t, params.A0, params.A1, +1);
    const auto gauge_m = MultiplierId::gauge(t, params.A0, params.A1, -1);
    const SpectralField a = apply_multiplier(half_wave_profile(f, g, t, +1), gauge_p);
    const SpectralField b = apply_multiplier(half_wave_profile(f, g, t, -1), gauge_p);
    const SpectralField pa = apply_multiplier(a, MultiplierId::P());
    const SpectralField pb = apply_multiplier(b, MultiplierId::P());

    const double orient = eps == +1 ? 1.0 : -1.0;
    const double drift = params.A0 + params.A1 * t;

    SpectralField h_flow = orient * apply_multiplier(engine.correction_sum(a, b, eps), gauge_m);
    SpectralField inner = apply_multiplier(engine.drift_hit_sum(a, pa, b, pb, eps), gauge_m);

    SpectralField out = (orient * drift) * inner;
    axpy(out, cdouble(-drift, 0.0), apply_multiplier(h_flow, MultiplierId::P()));
    return out;
}

} // namespace goodbsq
