#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "goodbsq/dynamics.hpp"
#include "goodbsq/normal_form.hpp"
#include "goodbsq/random_field.hpp"

using namespace goodbsq;

namespace {

SpectralField scaled_rough(double s, int N, std::uint64_t seed, double amp) {
    return amp * random_sobolev_field(s, N, seed);
}

// i/2 * [N(L,L) + 2N(L,Lbar) + N(Lbar,Lbar)] at time t for mean-zero data
SpectralField quadratic_source(const SpectralField& f, const SpectralField& g, double t,
                               double alpha) {
    const SpectralField Lp = half_wave_profile(f, g, t, +1);
    const SpectralField Lm = half_wave_profile(f, g, t, -1);
    SpectralField sum = nonlinearity_N(Lp, Lp, alpha);
    axpy(sum, cdouble(2.0, 0.0), nonlinearity_N(Lp, Lm, alpha));
    axpy(sum, cdouble(1.0, 0.0), nonlinearity_N(Lm, Lm, alpha));
    // bilinearity: the sum telescopes to N(Lp+Lm, Lp+Lm)
    const SpectralField both = Lp + Lm;
    const SpectralField tele = nonlinearity_N(both, both, alpha);
    REQUIRE(l2_dist(sum, tele) <= 1e-12 * (1.0 + tele.l2_norm()));
    return cdouble(0.0, 0.5) * sum;
}

} // namespace

TEST_CASE("resonance denominator: pinned values and symmetry") {
    const SignTriple ppp(+1, +1, +1);
    REQUIRE(resonance_denominator(1, 1, ppp) ==
            Catch::Approx(2.0 * std::sqrt(2.0) - 2.0 * std::sqrt(5.0)).epsilon(1e-14));
    REQUIRE(resonance_denominator(1, 1, ppp) == Catch::Approx(-1.6437088302533897).margin(1e-10));

    const SignTriple ppm(+1, +1, -1);
    const double d = resonance_denominator(3, -2, ppm);
    REQUIRE(d == Catch::Approx(3.0 * std::sqrt(10.0) - 2.0 * std::sqrt(5.0) - std::sqrt(2.0))
                     .epsilon(1e-14));
    REQUIRE(d == Catch::Approx(3.6004834631324628).margin(1e-10));

    for (long xi : {2L, 5L, -7L})
        for (long eta : {1L, 3L, -4L}) {
            if (xi + eta == 0) continue;
            REQUIRE(resonance_denominator(xi, eta, ppp) ==
                    resonance_denominator(eta, xi, ppp));
        }

    REQUIRE_THROWS_AS(resonance_denominator(0, 3, ppp), std::domain_error);
    REQUIRE_THROWS_AS(resonance_denominator(2, -2, ppp), std::domain_error);
}

TEST_CASE("non-resonance: minimum bracket over the 512 lattice") {
    double min_abs = 1e300;
    for (int e = -1; e <= 1; e += 2)
        for (int e1 = -1; e1 <= 1; e1 += 2)
            for (int e2 = -1; e2 <= 1; e2 += 2) {
                for (long xi = -512; xi <= 512; ++xi) {
                    if (xi == 0) continue;
                    for (long eta = -512; eta <= 512; ++eta) {
                        if (eta == 0 || xi + eta == 0 || std::labs(xi + eta) > 512) continue;
                        const double d = e1 * dispersion_mu(static_cast<double>(xi)) +
                                         e2 * dispersion_mu(static_cast<double>(eta)) -
                                         e * dispersion_mu(static_cast<double>(xi + eta));
                        min_abs = std::min(min_abs, std::abs(d));
                    }
                }
            }
    INFO("minimum |resonance bracket| over the lattice: " << min_abs);
    REQUIRE(min_abs >= 0.5);
    // attained at (1,1) with signs (+;+,+): 2 sqrt5 - 2 sqrt2
    REQUIRE(min_abs == Catch::Approx(2.0 * std::sqrt(5.0) - 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("bilinear operator: pinned examples") {
    // fully resonant pair annihilates
    SpectralField u(3, false), v(3, false);
    u.c(1) = 1.0;
    v.c(-1) = 1.0;
    const auto zero = apply_normal_form(u, v, SignTriple(+1, +1, -1), 0.0);
    REQUIRE(zero.l2_norm() == 0.0);

    // single-pair high-low interaction
    SpectralField a(3, false), b(3, false);
    a.c(3) = 1.0;
    b.c(-2) = 1.0;
    const auto out = apply_normal_form(a, b, SignTriple(+1, +1, -1), 0.0);
    const double denom = resonance_denominator(3, -2, SignTriple(+1, +1, -1));
    const double expected = -0.5 / (std::sqrt(2.0) * denom);
    REQUIRE(out.c(1).real() == Catch::Approx(expected).epsilon(1e-14));
    REQUIRE(out.c(1).real() == Catch::Approx(-0.09820).margin(5e-6));
    for (int n = -3; n <= 3; ++n)
        if (n != 1) REQUIRE(std::abs(out.c(n)) == 0.0);

    // output mean vanishes by construction
    REQUIRE(std::abs(out.c(0)) == 0.0);
}

TEST_CASE("bilinear operator is bilinear") {
    std::mt19937_64 rng(3);
    const int N = 24;
    const SpectralField u = random_unit_field(N, rng);
    const SpectralField w = random_unit_field(N, rng);
    const SpectralField v = random_unit_field(N, rng);
    const SignTriple s(+1, -1, +1);
    const double alpha = 0.25;
    const cdouble ca(1.7, -0.3), cb(-0.4, 0.9);

    SpectralField lin = ca * u;
    axpy(lin, cb, w);
    const auto lhs = apply_normal_form(lin, v, s, alpha);
    SpectralField rhs = ca * apply_normal_form(u, v, s, alpha);
    axpy(rhs, cb, apply_normal_form(w, v, s, alpha));
    REQUIRE(l2_dist(lhs, rhs) <= 1e-12 * rhs.l2_norm());
}

TEST_CASE("symbol values: pinned examples") {
    REQUIRE(symbol_value(1, 1, SymbolVariant::asym_pp, SignTriple(+1, +1, +1), 0.0) ==
            Catch::Approx(0.5).epsilon(1e-14));

    const double exact =
        symbol_value(10, 10, SymbolVariant::exact, SignTriple(+1, +1, +1), 0.25);
    const double asym =
        symbol_value(10, 10, SymbolVariant::asym_pp, SignTriple(+1, +1, +1), 0.25);
    const double ratio = exact / asym;
    REQUIRE(ratio > 1.0 / 16.0);
    REQUIRE(ratio < 16.0);

    REQUIRE_THROWS_AS(
        symbol_value(1, -1, SymbolVariant::exact, SignTriple(+1, +1, +1), 0.1),
        std::domain_error);
}

TEST_CASE("symbol comparability constant over the 512 lattice") {
    struct Pairing {
        SymbolVariant variant;
        SignTriple signs;
    };
    const Pairing pairings[] = {{SymbolVariant::asym_mm, SignTriple(+1, -1, -1)},
                                {SymbolVariant::asym_pp, SignTriple(+1, +1, +1)},
                                {SymbolVariant::asym_pm, SignTriple(+1, +1, -1)}};
    for (const double alpha : {0.0, 0.25, 0.375}) {
        for (const auto& p : pairings) {
            double lo = 1e300, hi = 0.0;
            // ratios are invariant under joint negation, so xi > 0 suffices
            for (long xi = 1; xi <= 512; ++xi) {
                for (long eta = -512; eta <= 512; ++eta) {
                    if (eta == 0 || xi + eta == 0) continue;
                    const double ex = symbol_value(xi, eta, SymbolVariant::exact, p.signs, alpha);
                    const double as = symbol_value(xi, eta, p.variant, p.signs, alpha);
                    const double r = ex / as;
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
            }
            INFO("alpha=" << alpha << " variant=" << static_cast<int>(p.variant)
                          << " ratio range [" << lo << ", " << hi << "]");
            REQUIRE(lo >= 1.0 / 32.0);
            REQUIRE(hi <= 32.0);
        }
    }
}

TEST_CASE("correction field: gauge trivialities and hand-summed oracle") {
    const int N = 8;
    const SpectralField f = scaled_rough(0.5, N, 5, 0.8);
    const SpectralField g = scaled_rough(-1.5, N, 6, 0.8);
    ModelParams params;
    params.alpha = 0.25;
    params.trunc = N;

    // A0 = A1 = 0: gauged path identical to plain path
    params.A0 = params.A1 = 0.0;
    const auto plain = assemble_h(f, g, 0.4, +1, params, false);
    const auto gauged0 = assemble_h(f, g, 0.4, +1, params, true);
    REQUIRE(l2_dist(plain, gauged0) == 0.0);

    // at t = 0 the gauge is the identity for any drift coefficients
    params.A0 = 1.3;
    params.A1 = -0.7;
    const auto g_t0 = assemble_h(f, g, 0.0, +1, params, true);
    const auto p_t0 = assemble_h(f, g, 0.0, +1, params, false);
    REQUIRE(l2_dist(g_t0, p_t0) <= 1e-14 * p_t0.l2_norm());

    // f = cos x, g = 0, alpha = 0, t = 0: hand-summed six-term oracle
    SpectralField fc(2, true), gz(2, true);
    fc.c(1) = fc.c(-1) = 0.5;
    ModelParams p0;
    p0.alpha = 0.0;
    p0.trunc = 4;
    p0.A0 = p0.A1 = 0.0;
    const auto h = assemble_h(fc, gz, 0.0, +1, p0, false);
    const double dpp = resonance_denominator(1, 1, SignTriple(+1, +1, +1));
    const double dpm = resonance_denominator(1, 1, SignTriple(+1, +1, -1));
    const double dmm = resonance_denominator(1, 1, SignTriple(+1, -1, -1));
    // profile coefficient 1/4 at +-1; sigma(1,1) = -|2| / (2 <2> D)
    const double amp = (1.0 / 16.0) * (-1.0 / std::sqrt(5.0)) *
                       (1.0 / dpp + 2.0 / dpm + 1.0 / dmm);
    REQUIRE(h.c(2).real() == Catch::Approx(amp).epsilon(1e-13));
    REQUIRE(h.c(-2).real() == Catch::Approx(amp).epsilon(1e-13));
    REQUIRE(std::abs(h.c(0)) == 0.0);
    REQUIRE(std::abs(h.c(1)) <= 1e-15);

    // conjugate-flow orientation: conj(h^+) = -(minus-flow sum)
    const auto hp = assemble_h(f, g, 0.3, +1, params, false);
    const auto hm_raw = assemble_h(f, g, 0.3, -1, params, false);
    REQUIRE(l2_dist(conj_field(hp), -1.0 * hm_raw) <= 1e-12 * hp.l2_norm());
}

TEST_CASE("correction field solves the quadratic-source flow to O(dt^2)") {
    const int N = 32;
    const SpectralField f = scaled_rough(0.6, N, 15, 0.7);
    const SpectralField g = scaled_rough(-1.4, N, 16, 0.7);
    ModelParams params;
    params.alpha = 0.3;
    params.trunc = N;
    params.A0 = params.A1 = 0.0;
    const double t = 0.05;

    for (int eps : {+1, -1}) {
        const double orient = eps;
        auto residual = [&](double dt) {
            const SpectralField hp = orient * assemble_h(f, g, t + dt, eps, params, false);
            const SpectralField hm = orient * assemble_h(f, g, t - dt, eps, params, false);
            const SpectralField h0 = orient * assemble_h(f, g, t, eps, params, false);
            SpectralField r = (1.0 / (2.0 * dt)) * (hp - hm);
            axpy(r, cdouble(0.0, -static_cast<double>(eps)),
                 apply_multiplier(h0, MultiplierId::L()));
            const SpectralField src = (eps == +1 ? 1.0 : -1.0) *
                                      quadratic_source(f, g, t, params.alpha);
            axpy(r, cdouble(-1.0, 0.0), src);
            return r.l2_norm();
        };
        const double r1 = residual(2e-5), r2 = residual(1e-5), r3 = residual(5e-6);
        INFO("eps=" << eps << " residuals " << r1 << " " << r2 << " " << r3);
        REQUIRE(r1 / r2 > 3.5);
        REQUIRE(r1 / r2 < 4.5);
        REQUIRE(r2 / r3 > 3.5);
        REQUIRE(r2 / r3 < 4.5);
    }
}

TEST_CASE("gauge error term: vanishing, finite-difference oracle, quadratic scaling") {
    const int N = 24;
    const SpectralField f = scaled_rough(0.6, N, 25, 0.6);
    const SpectralField g = scaled_rough(-1.4, N, 26, 0.6);
    ModelParams params;
    params.alpha = 0.2;
    params.trunc = N;

    params.A0 = params.A1 = 0.0;
    REQUIRE(err_term(f, g, 0.3, +1, params).l2_norm() == 0.0);

    // FD oracle: d/dt h_flow - eps flow term - gauged quadratic source = Err
    params.A0 = 0.9;
    params.A1 = 0.0; // pure-A0 drift first
    const double t = 0.15;
    for (int eps : {+1, -1}) {
        const double orient = eps;
        auto fd_residual = [&](double dt) {
            const SpectralField hp = orient * assemble_h(f, g, t + dt, eps, params, true);
            const SpectralField hm = orient * assemble_h(f, g, t - dt, eps, params, true);
            const SpectralField h0 = orient * assemble_h(f, g, t, eps, params, true);
            SpectralField r = (1.0 / (2.0 * dt)) * (hp - hm);
            axpy(r, cdouble(0.0, -static_cast<double>(eps)),
                 apply_multiplier(h0, MultiplierId::L()));
            const SpectralField Lp = half_wave_profile(f, g, t, +1);
            const SpectralField Lm = half_wave_profile(f, g, t, -1);
            const SpectralField lsum = Lp + Lm;
            const SpectralField src = gauged_nonlinearity(lsum, lsum, t, params);
            axpy(r, cdouble(0.0, eps == +1 ? -0.5 : 0.5), src);
            axpy(r, cdouble(-1.0, 0.0), err_term(f, g, t, eps, params));
            return r.l2_norm();
        };
        const double r1 = fd_residual(2e-5), r2 = fd_residual(1e-5);
        INFO("eps=" << eps << " fd residuals " << r1 << " " << r2);
        REQUIRE(r1 / r2 > 3.5);
        REQUIRE(r1 / r2 < 4.5);
    }

    // bilinear in the data: doubling (f,g) quadruples the error term
    params.A1 = -0.4;
    const auto e1 = err_term(f, g, 0.2, +1, params);
    const auto e4 = err_term(2.0 * f, 2.0 * g, 0.2, +1, params);
    REQUIRE(l2_dist(4.0 * e1, e4) <= 1e-12 * e4.l2_norm());
}
