// dynamics.hpp -- reduction of the second-order problem to the half-wave
// pair, a Lawson-RK4 integrator for the pair itself, the decomposed
// integrator that evolves only the remainder of the normal-form splitting,
// and the smoothing diagnostics.
//
// Conventions fixed here and used everywhere:
//   * the half-wave pair solves
//       (d/dt - iL) w+ = (A0 + A1 t) P w+ + (i/2) N(w+ + w-, w+ + w-)
//       (d/dt + iL) w- = (A0 + A1 t) P w- - (i/2) N(w+ + w-, w+ + w-)
//     with N(u,v) = L^{-1} <D>^{-a} dxx( <D>^a u <D>^a v );
//   * A0, A1 are twice the means of the initial data (u0, u1), so the
//     drift coefficient A0 + A1 t equals twice the affine zero mode;
//   * the zero mode of u itself is propagated exactly by the affine law
//     mean(u0) + t mean(u1);
//   * the decomposed flow conjugates by the gauge exp((A0 t + A1 t^2/2) P),
//     evolves psi+- with the flow-oriented corrections h+ = correction sum,
//     h- = -correction sum, and reconstructs w+- by applying the (+) gauge
//     multiplier to profile + correction + remainder.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "goodbsq/fitting.hpp"
#include "goodbsq/multipliers.hpp"
#include "goodbsq/normal_form.hpp"
#include "goodbsq/random_field.hpp"
#include "goodbsq/spectral_field.hpp"

namespace goodbsq {

struct NumericalAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mean-extracted, <D>^{-alpha}-conjugated data.  A0/A1 here are the plain
// data means; the drift/gauge coefficients are twice these.
struct ReducedData {
    SpectralField f, g;
    double A0 = 0.0; // mean of u0
    double A1 = 0.0; // mean of u1
    double gauge_a0() const { return 2.0 * A0; }
    double gauge_a1() const { return 2.0 * A1; }
};

inline ReducedData reduce_initial_data(const SpectralField& u0, const SpectralField& u1,
                                       double alpha) {
    require_same_trunc(u0, u1, "reduce_initial_data");
    if (!u0.real_flag || !u1.real_flag)
        throw std::invalid_argument("reduce_initial_data: data must be real fields");
    ReducedData rd;
    rd.A0 = u0.c(0).real();
    rd.A1 = u1.c(0).real();
    rd.f = SpectralField(u0.trunc, true);
    rd.g = SpectralField(u0.trunc, true);
    for (int n = -u0.trunc; n <= u0.trunc; ++n) {
        if (n == 0) continue;
        const double w = std::pow(bracket(n), -alpha);
        rd.f.c(n) = w * u0.c(n);
        rd.g.c(n) = w * u1.c(n);
    }
    return rd;
}

// N(u,v) = L^{-1} <D>^{-a} dxx ( <D>^a u <D>^a v ): bracket-weighted
// dealiased product followed by the multiplier -|n| / <n>^{1+a}.
inline SpectralField nonlinearity_N(const SpectralField& u, const SpectralField& v,
                                    double alpha) {
    require_same_trunc(u, v, "nonlinearity_N");
    const SpectralField ua = apply_multiplier(u, MultiplierId::bracket_pow(alpha));
    const SpectralField va = apply_multiplier(v, MultiplierId::bracket_pow(alpha));
    SpectralField prod = quadratic_product(ua, va);
    for (int n = -prod.trunc; n <= prod.trunc; ++n) {
        const double m = n == 0 ? 0.0 : -std::abs(static_cast<double>(n)) /
                                            std::pow(bracket(n), 1.0 + alpha);
        prod.c(n) *= m;
    }
    return prod;
}

// Gauge-conjugated nonlinearity with drift coefficients params.A0/A1.
inline SpectralField gauged_nonlinearity(const SpectralField& u, const SpectralField& v, double t,
                                         const ModelParams& params) {
    if (params.A0 == 0.0 && params.A1 == 0.0) return nonlinearity_N(u, v, params.alpha);
    const auto gp = MultiplierId::gauge(t, params.A0, params.A1, +1);
    const auto gm = MultiplierId::gauge(t, params.A0, params.A1, -1);
    return apply_multiplier(
        nonlinearity_N(apply_multiplier(u, gp), apply_multiplier(v, gp), params.alpha), gm);
}

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> states;
    std::vector<cdouble> zero_mode;
    std::vector<double> norm_s;
    std::vector<std::vector<double>> norms; // norms[i][j] = H^{norm_s[j]} norm at times[i]

    void record(double t, const SpectralField& u) {
        times.push_back(t);
        zero_mode.push_back(u.c(0));
        norms.emplace_back();
        auto& row = norms.back();
        row.reserve(norm_s.size());
        for (double s : norm_s) row.push_back(sobolev_norm(u, s));
        states.push_back(u);
    }
};

struct IntegrateOptions {
    std::vector<double> norm_s{0.0};
    int output_points = 65;
    int output_stride = 0; // 0: derive from output_points
};

namespace detail {

inline std::vector<cdouble> half_wave_phase(int trunc, double tau, int sign) {
    std::vector<cdouble> e(static_cast<std::size_t>(2 * trunc + 1));
    for (int n = -trunc; n <= trunc; ++n) {
        const double ph = sign * tau * dispersion_mu(n);
        e[static_cast<std::size_t>(n + trunc)] = cdouble(std::cos(ph), std::sin(ph));
    }
    return e;
}

inline void mul_phase(SpectralField& u, const std::vector<cdouble>& e) {
    for (std::size_t i = 0; i < u.coeffs.size(); ++i) u.coeffs[i] *= e[i];
    u.real_flag = false;
}

inline SpectralField with_phase(const SpectralField& u, const std::vector<cdouble>& e) {
    SpectralField out = u;
    mul_phase(out, e);
    return out;
}

inline std::vector<cdouble> conj_phase(const std::vector<cdouble>& e) {
    std::vector<cdouble> out(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) out[i] = std::conj(e[i]);
    return out;
}

// One Lawson-RK4 step for the pair (p, m) with linear parts +-iL:
// classical RK4 applied to the integrating-factor variables, with the
// half-wave phases absorbed exactly.  Rhs(s, p, m, gp, gm) evaluates the
// nonlinear right sides.
template <typename Rhs>
inline void lawson_rk4_step(SpectralField& p, SpectralField& m, double t, double h,
                            const std::vector<cdouble>& Eh_p, const std::vector<cdouble>& Eh_m,
                            const std::vector<cdouble>& E2_p, const std::vector<cdouble>& E2_m,
                            Rhs&& rhs) {
    SpectralField k1p, k1m, k2p, k2m, k3p, k3m, k4p, k4m;
    rhs(t, p, m, k1p, k1m);

    SpectralField ap = p, am = m;
    axpy(ap, 0.5 * h, k1p);
    axpy(am, 0.5 * h, k1m);
    mul_phase(ap, E2_p);
    mul_phase(am, E2_m);
    rhs(t + 0.5 * h, ap, am, k2p, k2m);

    SpectralField bp = with_phase(p, E2_p), bm = with_phase(m, E2_m);
    axpy(bp, 0.5 * h, k2p);
    axpy(bm, 0.5 * h, k2m);
    rhs(t + 0.5 * h, bp, bm, k3p, k3m);

    SpectralField cp = with_phase(p, Eh_p), cm = with_phase(m, Eh_m);
    axpy(cp, h, with_phase(k3p, E2_p));
    axpy(cm, h, with_phase(k3m, E2_m));
    rhs(t + h, cp, cm, k4p, k4m);

    SpectralField np = with_phase(p, Eh_p), nm = with_phase(m, Eh_m);
    axpy(np, h / 6.0, with_phase(k1p, Eh_p));
    axpy(nm, h / 6.0, with_phase(k1m, Eh_m));
    axpy(np, h / 3.0, with_phase(k2p, E2_p));
    axpy(nm, h / 3.0, with_phase(k2m, E2_m));
    axpy(np, h / 3.0, with_phase(k3p, E2_p));
    axpy(nm, h / 3.0, with_phase(k3m, E2_m));
    axpy(np, h / 6.0, k4p);
    axpy(nm, h / 6.0, k4m);
    p = std::move(np);
    m = std::move(nm);
}

} // namespace detail

// Direct integrator of the half-wave pair.
class DirectIntegrator {
  public:
    DirectIntegrator(const SpectralField& u0, const SpectralField& u1, const ModelParams& params)
        : params_(params), rd_(reduce_initial_data(u0, u1, params.alpha)) {
        params_.validate();
        if (u0.trunc != params.trunc)
            throw std::invalid_argument("DirectIntegrator: data truncation differs from params");
        const double mu_max = dispersion_mu(params.trunc);
        if (params.dt * mu_max > 8.0)
            throw std::invalid_argument(
                "DirectIntegrator: dt too large for the fastest mode (dt*mu_N > 8)");
        const cdouble half_over_i(0.0, -0.5);
        wp_ = SpectralField(params.trunc, false);
        for (int n = -params.trunc; n <= params.trunc; ++n) {
            const double linv = n == 0 ? 0.0 : 1.0 / dispersion_mu(n);
            wp_.c(n) = 0.5 * rd_.f.c(n) + half_over_i * linv * rd_.g.c(n);
        }
        wm_ = conj_field(wp_); // real data: conjugate-flow partner
        guard_ref_ = std::max(wp_.l2_norm(), 1e-30);
        t_ = 0.0;
    }

    const SpectralField& w_plus() const { return wp_; }
    const SpectralField& w_minus() const { return wm_; }
    const ReducedData& reduced() const { return rd_; }
    double time() const { return t_; }

    SpectralField current_u() const {
        SpectralField u(params_.trunc, false);
        for (int n = -params_.trunc; n <= params_.trunc; ++n) {
            if (n == 0) continue;
            u.c(n) = std::pow(bracket(n), params_.alpha) * (wp_.c(n) + wm_.c(n));
        }
        u.c(0) = cdouble(rd_.A0 + t_ * rd_.A1, 0.0);
        u.real_flag = u.is_hermitian();
        return u;
    }

    void step(double h) {
        if (h != cached_h_) {
            cached_h_ = h;
            Eh_p_ = detail::half_wave_phase(params_.trunc, h, +1);
            E2_p_ = detail::half_wave_phase(params_.trunc, 0.5 * h, +1);
            Eh_m_ = detail::conj_phase(Eh_p_);
            E2_m_ = detail::conj_phase(E2_p_);
        }
        const double a0 = rd_.gauge_a0(), a1 = rd_.gauge_a1();
        const double alpha = params_.alpha;
        auto rhs = [&](double s, const SpectralField& p, const SpectralField& m,
                       SpectralField& gp, SpectralField& gm) {
            const SpectralField w = p + m;
            const SpectralField nl = nonlinearity_N(w, w, alpha);
            const double drift = a0 + a1 * s;
            gp = SpectralField(params_.trunc, false);
            gm = SpectralField(params_.trunc, false);
            const cdouble ihalf(0.0, 0.5);
            for (int n = -params_.trunc; n <= params_.trunc; ++n) {
                const double psym = n == 0 ? 0.0 : -std::abs(static_cast<double>(n)) / bracket(n);
                gp.c(n) = drift * psym * p.c(n) + ihalf * nl.c(n);
                gm.c(n) = drift * psym * m.c(n) - ihalf * nl.c(n);
            }
        };
        detail::lawson_rk4_step(wp_, wm_, t_, h, Eh_p_, Eh_m_, E2_p_, E2_m_, rhs);
        t_ += h;
        if (wp_.l2_norm() > 1e6 * guard_ref_ || !std::isfinite(wp_.l2_norm()))
            throw NumericalAbort("DirectIntegrator: norm guard tripped (growth > 1e6x)");
    }

  private:
    ModelParams params_;
    ReducedData rd_;
    SpectralField wp_, wm_;
    double t_ = 0.0;
    double cached_h_ = -1.0;
    double guard_ref_ = 1.0;
    std::vector<cdouble> Eh_p_, E2_p_, Eh_m_, E2_m_;
};

inline Trajectory integrate_direct(const SpectralField& u0, const SpectralField& u1,
                                   const ModelParams& params,
                                   const IntegrateOptions& opts = {}) {
    DirectIntegrator solver(u0, u1, params);
    const long steps = std::max<long>(1, std::lround(params.horizon / params.dt));
    const double h = params.horizon / static_cast<double>(steps);
    long stride = opts.output_stride > 0
                      ? opts.output_stride
                      : std::max<long>(1, steps / std::max(1, opts.output_points - 1));
    Trajectory traj;
    traj.norm_s = opts.norm_s;
    traj.record(0.0, solver.current_u());
    for (long i = 1; i <= steps; ++i) {
        solver.step(h);
        if (i % stride == 0 || i == steps) traj.record(solver.time(), solver.current_u());
    }
    return traj;
}

// The triple realized by the decomposed flow: remainders psi+-, the cached
// reduced data, and whether the gauge is active.
struct DecompState {
    SpectralField psi_plus, psi_minus;
    SpectralField f, g;
    ModelParams params; // params.A0/A1 hold the drift coefficients (2x means)
    bool gauged = false;
};

class DecomposedIntegrator {
  public:
    DecomposedIntegrator(const SpectralField& u0, const SpectralField& u1,
                         const ModelParams& params)
        : params_(params), rd_(reduce_initial_data(u0, u1, params.alpha)),
          engine_(params.trunc, params.alpha) {
        params_.validate();
        if (u0.trunc != params.trunc)
            throw std::invalid_argument("DecomposedIntegrator: data truncation mismatch");
        const double mu_max = dispersion_mu(params.trunc);
        if (params.dt * mu_max > 8.0)
            throw std::invalid_argument(
                "DecomposedIntegrator: dt too large for the fastest mode (dt*mu_N > 8)");
        drift_params_ = params_;
        drift_params_.A0 = rd_.gauge_a0();
        drift_params_.A1 = rd_.gauge_a1();
        gauged_ = drift_params_.A0 != 0.0 || drift_params_.A1 != 0.0;
        const Stage& s0 = stage(0.0);
        psi_p_ = -1.0 * s0.hp;
        psi_m_ = -1.0 * s0.hm;
        guard_ref_ = std::max(s0.Lp.l2_norm() + psi_p_.l2_norm(), 1e-30);
    }

    double time() const { return t_; }
    const ReducedData& reduced() const { return rd_; }

    DecompState state() const {
        DecompState st;
        st.psi_plus = psi_p_;
        st.psi_minus = psi_m_;
        st.f = rd_.f;
        st.g = rd_.g;
        st.params = drift_params_;
        st.gauged = gauged_;
        return st;
    }

    // Correction fields of the two flows at time t (orientation included).
    SpectralField correction(double t, int eps) { return eps == +1 ? stage(t).hp : stage(t).hm; }

    SpectralField current_u() { return reconstruct(t_, psi_p_, psi_m_); }

    void step(double h) {
        if (h != cached_h_) {
            cached_h_ = h;
            Eh_p_ = detail::half_wave_phase(params_.trunc, h, +1);
            E2_p_ = detail::half_wave_phase(params_.trunc, 0.5 * h, +1);
            Eh_m_ = detail::conj_phase(Eh_p_);
            E2_m_ = detail::conj_phase(E2_p_);
        }
        auto rhs = [&](double s, const SpectralField& pp, const SpectralField& pm,
                       SpectralField& gp, SpectralField& gm) {
            const Stage& st = stage(s);
            SpectralField q = st.hp + pp;
            axpy(q, cdouble(1.0, 0.0), st.hm);
            axpy(q, cdouble(1.0, 0.0), pm);
            const SpectralField lsum = st.Lp + st.Lm;
            const SpectralField nl1 = gauged_nonlinearity(lsum, q, s, drift_params_);
            const SpectralField nl2 = gauged_nonlinearity(q, q, s, drift_params_);
            gp = SpectralField(params_.trunc, false);
            const cdouble iu(0.0, 1.0), ihalf(0.0, 0.5);
            for (int i = 0; i < gp.size(); ++i)
                gp.coeffs[i] = iu * nl1.coeffs[i] + ihalf * nl2.coeffs[i];
            gm = -1.0 * gp;
            if (gauged_) {
                axpy(gp, cdouble(-1.0, 0.0), st.errp);
                axpy(gm, cdouble(-1.0, 0.0), st.errm);
            }
        };
        detail::lawson_rk4_step(psi_p_, psi_m_, t_, h, Eh_p_, Eh_m_, E2_p_, E2_m_, rhs);
        t_ += h;
        if (psi_p_.l2_norm() > 1e6 * guard_ref_ || !std::isfinite(psi_p_.l2_norm()))
            throw NumericalAbort("DecomposedIntegrator: norm guard tripped (growth > 1e6x)");
    }

    SpectralField psi_plus() const { return psi_p_; }
    SpectralField psi_minus() const { return psi_m_; }

  private:
    struct Stage {
        double t = -1.0;
        SpectralField Lp, Lm, hp, hm, errp, errm;
    };

    const Stage& stage(double s) {
        for (const auto& st : stages_)
            if (st.t == s) return st;
        Stage st;
        st.t = s;
        st.Lp = half_wave_profile(rd_.f, rd_.g, s, +1);
        st.Lm = half_wave_profile(rd_.f, rd_.g, s, -1);
        SpectralField a = st.Lp, b = st.Lm;
        if (gauged_) {
            const auto gp = MultiplierId::gauge(s, drift_params_.A0, drift_params_.A1, +1);
            a = apply_multiplier(a, gp);
            b = apply_multiplier(b, gp);
        }
        SpectralField raw_p = engine_.correction_sum(a, b, +1);
        SpectralField raw_m = engine_.correction_sum(a, b, -1);
        if (gauged_) {
            const auto gm = MultiplierId::gauge(s, drift_params_.A0, drift_params_.A1, -1);
            st.hp = apply_multiplier(raw_p, gm);
            st.hm = -1.0 * apply_multiplier(raw_m, gm);
            const SpectralField pa = apply_multiplier(a, MultiplierId::P());
            const SpectralField pb = apply_multiplier(b, MultiplierId::P());
            const double drift = drift_params_.A0 + drift_params_.A1 * s;
            const SpectralField inner_p =
                apply_multiplier(engine_.drift_hit_sum(a, pa, b, pb, +1), gm);
            const SpectralField inner_m =
                apply_multiplier(engine_.drift_hit_sum(a, pa, b, pb, -1), gm);
            st.errp = drift * inner_p;
            axpy(st.errp, cdouble(-drift, 0.0), apply_multiplier(st.hp, MultiplierId::P()));
            st.errm = (-drift) * inner_m;
            axpy(st.errm, cdouble(-drift, 0.0), apply_multiplier(st.hm, MultiplierId::P()));
        } else {
            st.hp = raw_p;
            st.hm = -1.0 * raw_m;
        }
        if (stages_.size() >= 4) stages_.erase(stages_.begin());
        stages_.push_back(std::move(st));
        return stages_.back();
    }

    SpectralField reconstruct(double t, const SpectralField& pp, const SpectralField& pm) {
        const Stage& st = stage(t);
        SpectralField wtp = st.Lp + st.hp;
        axpy(wtp, cdouble(1.0, 0.0), pp);
        SpectralField wtm = st.Lm + st.hm;
        axpy(wtm, cdouble(1.0, 0.0), pm);
        if (gauged_) {
            const auto gp = MultiplierId::gauge(t, drift_params_.A0, drift_params_.A1, +1);
            wtp = apply_multiplier(wtp, gp);
            wtm = apply_multiplier(wtm, gp);
        }
        SpectralField u(params_.trunc, false);
        for (int n = -params_.trunc; n <= params_.trunc; ++n) {
            if (n == 0) continue;
            u.c(n) = std::pow(bracket(n), params_.alpha) * (wtp.c(n) + wtm.c(n));
        }
        u.c(0) = cdouble(rd_.A0 + t * rd_.A1, 0.0);
        u.real_flag = u.is_hermitian();
        return u;
    }

    ModelParams params_, drift_params_;
    ReducedData rd_;
    NormalFormEngine engine_;
    SpectralField psi_p_, psi_m_;
    bool gauged_ = false;
    double t_ = 0.0;
    double cached_h_ = -1.0;
    double guard_ref_ = 1.0;
    std::vector<cdouble> Eh_p_, E2_p_, Eh_m_, E2_m_;
    std::vector<Stage> stages_;
};

// Returns (psi+ trajectory in the w-variable, reconstructed u trajectory).
inline std::pair<Trajectory, Trajectory> integrate_decomposed(const SpectralField& u0,
                                                              const SpectralField& u1,
                                                              const ModelParams& params,
                                                              const IntegrateOptions& opts = {}) {
    DecomposedIntegrator solver(u0, u1, params);
    const long steps = std::max<long>(1, std::lround(params.horizon / params.dt));
    const double h = params.horizon / static_cast<double>(steps);
    long stride = opts.output_stride > 0
                      ? opts.output_stride
                      : std::max<long>(1, steps / std::max(1, opts.output_points - 1));
    Trajectory psi_traj, u_traj;
    psi_traj.norm_s = opts.norm_s;
    u_traj.norm_s = opts.norm_s;
    psi_traj.record(0.0, solver.psi_plus());
    u_traj.record(0.0, solver.current_u());
    for (long i = 1; i <= steps; ++i) {
        solver.step(h);
        if (i % stride == 0 || i == steps) {
            psi_traj.record(solver.time(), solver.psi_plus());
            u_traj.record(solver.time(), solver.current_u());
        }
    }
    return {std::move(psi_traj), std::move(u_traj)};
}

// H^beta norms of z(t) = u(t) - affine zero mode - gauged free evolution,
// together with the same norms of the gauged free part itself.
struct RemainderTable {
    std::vector<double> times;
    std::vector<double> betas;
    std::vector<std::vector<double>> z_norms;    // [time][beta]
    std::vector<std::vector<double>> free_norms; // [time][beta]
};

inline RemainderTable remainder_z(const Trajectory& traj, const SpectralField& u0,
                                  const SpectralField& u1, const std::vector<double>& betas) {
    RemainderTable table;
    table.betas = betas;
    const double mean0 = u0.c(0).real(), mean1 = u1.c(0).real();
    SpectralField v0 = u0, v1 = u1;
    v0.c(0) = cdouble(0.0, 0.0);
    v1.c(0) = cdouble(0.0, 0.0);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        SpectralField freepart = free_evolution(v0, v1, t); // cos(tL) v0 + sin(tL) L^{-1} v1
        freepart = apply_multiplier(freepart,
                                    MultiplierId::gauge(t, 2.0 * mean0, 2.0 * mean1, +1));
        SpectralField z = traj.states.at(i);
        z.c(0) -= cdouble(mean0 + t * mean1, 0.0);
        for (int n = -z.trunc; n <= z.trunc; ++n) z.c(n) -= freepart.c(n);
        table.times.push_back(t);
        table.z_norms.emplace_back();
        table.free_norms.emplace_back();
        for (double b : betas) {
            table.z_norms.back().push_back(sobolev_norm(z, b));
            table.free_norms.back().push_back(sobolev_norm(freepart, b));
        }
    }
    return table;
}

struct SmoothingScanConfig {
    double alpha = 0.3;
    std::vector<double> betas{0.05};
    std::vector<int> n_list{32, 64, 128, 256};
    std::uint64_t seed = 1;
    double horizon = 0.25;
    double dt_factor = 0.75;
    double amplitude = 0.3;
    int output_points = 65;
    double delta = 0.01;
};

struct SmoothingScanReport {
    SmoothingScanConfig config;
    // sup over recorded times, per N (rows) and beta (columns)
    std::vector<int> n_list;
    std::vector<std::vector<double>> sup_z, sup_free;
    std::vector<SlopeFit> slope_z, slope_free; // per beta
};

inline SmoothingScanReport smoothing_scan(const SmoothingScanConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 0.375))
        throw std::invalid_argument("smoothing_scan: alpha must lie in (0, 3/8)");
    SmoothingScanReport rep;
    rep.config = cfg;
    rep.n_list = cfg.n_list;
    for (int N : cfg.n_list) {
        const SpectralField u0 = cfg.amplitude * random_sobolev_field(-cfg.alpha, N, cfg.seed);
        const SpectralField u1 =
            cfg.amplitude * random_sobolev_field(-cfg.alpha - 2.0, N, cfg.seed + 1);
        ModelParams p;
        p.alpha = cfg.alpha;
        p.gamma = cfg.betas.front() + cfg.alpha;
        p.delta = cfg.delta;
        p.trunc = N;
        p.horizon = cfg.horizon;
        const double mu_max = dispersion_mu(N);
        const long steps = std::max<long>(1, std::lround(cfg.horizon * mu_max / cfg.dt_factor));
        p.dt = cfg.horizon / static_cast<double>(steps);
        IntegrateOptions opts;
        opts.norm_s = {0.0};
        opts.output_points = cfg.output_points;
        const Trajectory traj = integrate_direct(u0, u1, p, opts);
        const RemainderTable table = remainder_z(traj, u0, u1, cfg.betas);
        std::vector<double> sz(cfg.betas.size(), 0.0), sf(cfg.betas.size(), 0.0);
        for (std::size_t i = 0; i < table.times.size(); ++i)
            for (std::size_t j = 0; j < cfg.betas.size(); ++j) {
                sz[j] = std::max(sz[j], table.z_norms[i][j]);
                sf[j] = std::max(sf[j], table.free_norms[i][j]);
            }
        rep.sup_z.push_back(std::move(sz));
        rep.sup_free.push_back(std::move(sf));
    }
    std::vector<double> ns(cfg.n_list.begin(), cfg.n_list.end());
    for (std::size_t j = 0; j < cfg.betas.size(); ++j) {
        std::vector<double> z(cfg.n_list.size()), fr(cfg.n_list.size());
        for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
            z[i] = rep.sup_z[i][j];
            fr[i] = rep.sup_free[i][j];
        }
        rep.slope_z.push_back(fit_loglog(ns, z));
        rep.slope_free.push_back(fit_loglog(ns, fr));
    }
    return rep;
}

} // namespace goodbsq
