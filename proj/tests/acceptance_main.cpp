// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass.  Optional argv: criterion numbers to run (default all).
//
//  1  cross-solver agreement of the direct and decomposed integrators
//  2  second-order decay of the normal-form flow residual
//  3  remainder smoothing across truncations vs the free part
//  4  sharpness exponent of C(N, alpha, gamma)
//  5  verdict region map for the M1 and M3 lattice scans
//  6  N-uniform L2xL2 -> H1 boundedness trials
//  7  exact invariants (zero mode, Hermitian symmetry, gauge, resonance)
//  8  byte-identical reruns of every CLI artifact

#include <array>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "goodbsq/cli.hpp"
#include "goodbsq/dynamics.hpp"
#include "goodbsq/estimates.hpp"

using namespace goodbsq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

ModelParams params_for(int N, double alpha, double horizon, double dt) {
    ModelParams p;
    p.alpha = alpha;
    p.gamma = 0.3;
    p.trunc = N;
    p.horizon = horizon;
    p.dt = dt;
    return p;
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion_cross_solver() {
    Outcome out;
    const int N = 64;
    const double dt = 5e-5;
    std::ostringstream detail;

    struct Case {
        std::string name;
        SpectralField u0, u1;
    };
    std::vector<Case> cases;
    {
        SpectralField u0(N, true), u1(N, true);
        u0.c(1) = u0.c(-1) = 0.25;
        u0.c(2) = u0.c(-2) = 0.1;
        u0.c(0) = 0.3;
        u1.c(1) = u1.c(-1) = -0.1;
        u1.c(0) = -0.1;
        cases.push_back({"smooth", u0, u1});
    }
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        Case c;
        c.name = "rough seed " + std::to_string(seed);
        c.u0 = 0.3 * random_sobolev_field(-0.3, N, seed);
        c.u1 = 0.3 * random_sobolev_field(-2.3, N, seed + 100);
        cases.push_back(std::move(c));
    }

    for (const auto& c : cases) {
        const double alpha = c.name == "smooth" ? 0.25 : 0.3;
        IntegrateOptions opts;
        opts.output_stride = 500; // multiples of t = 0.025
        const auto direct = integrate_direct(c.u0, c.u1, params_for(N, alpha, 0.25, dt), opts);
        const auto decomp =
            integrate_decomposed(c.u0, c.u1, params_for(N, alpha, 0.25, dt), opts).second;
        double rel01 = -1.0, rel025 = -1.0;
        for (std::size_t i = 0; i < direct.times.size(); ++i) {
            const double rel = l2_dist(direct.states[i], decomp.states[i]) /
                               (1e-300 + direct.states[i].l2_norm());
            if (std::abs(direct.times[i] - 0.1) < 1e-12) rel01 = rel;
            if (std::abs(direct.times[i] - 0.25) < 1e-12) rel025 = rel;
        }
        detail << c.name << ": rel(0.1)=" << rel01 << " rel(0.25)=" << rel025 << "; ";
        if (!(rel01 >= 0.0 && rel01 <= 1e-6)) out.pass = false;
        if (!(rel025 >= 0.0 && rel025 <= 1e-4)) out.pass = false;
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion_normal_form_residual() {
    Outcome out;
    const int N = 32;
    const SpectralField f = 0.7 * random_sobolev_field(0.6, N, 15);
    const SpectralField g = 0.7 * random_sobolev_field(-1.4, N, 16);
    ModelParams params;
    params.alpha = 0.3;
    params.trunc = N;
    params.A0 = params.A1 = 0.0;
    const double t = 0.05;

    auto residual = [&](double dt, int eps) {
        const double orient = eps;
        const SpectralField hp = orient * assemble_h(f, g, t + dt, eps, params, false);
        const SpectralField hm = orient * assemble_h(f, g, t - dt, eps, params, false);
        const SpectralField h0 = orient * assemble_h(f, g, t, eps, params, false);
        SpectralField r = (1.0 / (2.0 * dt)) * (hp - hm);
        axpy(r, cdouble(0.0, -static_cast<double>(eps)), apply_multiplier(h0, MultiplierId::L()));
        const SpectralField Lp = half_wave_profile(f, g, t, +1);
        const SpectralField Lm = half_wave_profile(f, g, t, -1);
        const SpectralField lsum = Lp + Lm;
        const SpectralField src = nonlinearity_N(lsum, lsum, params.alpha);
        axpy(r, cdouble(0.0, eps == +1 ? -0.5 : 0.5), src);
        return r.l2_norm();
    };

    std::ostringstream detail;
    for (int eps : {+1, -1}) {
        const double r1 = residual(2e-5, eps), r2 = residual(1e-5, eps),
                     r3 = residual(5e-6, eps);
        const double q1 = r1 / r2, q2 = r2 / r3;
        detail << "eps=" << eps << " ratios " << q1 << ", " << q2 << "; ";
        if (!(q1 >= 3.5 && q1 <= 4.5 && q2 >= 3.5 && q2 <= 4.5)) out.pass = false;
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion_smoothing() {
    Outcome out;
    SmoothingScanConfig cfg;
    cfg.alpha = 0.3;
    cfg.betas = {0.05};
    cfg.n_list = {32, 64, 128, 256};
    cfg.seed = 1;
    cfg.horizon = 0.25;
    cfg.dt_factor = 0.75;
    cfg.amplitude = 0.3;
    const auto rep = smoothing_scan(cfg);
    const double sz = rep.slope_z[0].slope, sf = rep.slope_free[0].slope;
    std::ostringstream detail;
    detail << "remainder slope " << sz << " (<= 0.1), free slope " << sf << " (>= 0.25)";
    out.detail = detail.str();
    out.pass = sz <= 0.1 && sf >= 0.25;
    return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion_sharpness_exponent() {
    Outcome out;
    std::ostringstream detail;
    const std::array<std::array<double, 2>, 3> pairs{{{0.3, 0.45}, {0.35, 0.4}, {0.2, 0.7}}};
    for (const auto& pr : pairs) {
        const auto rep = counterexample_report(pr[0], pr[1], default_counterexample_n());
        const double err = std::abs(rep.fit.slope - rep.theory_exponent);
        detail << "(" << pr[0] << "," << pr[1] << "): slope " << rep.fit.slope << " vs "
               << rep.theory_exponent << "; ";
        if (err > 0.02) out.pass = false;
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion_region_map() {
    Outcome out;
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.05 * i);
    const std::vector<int> cutoffs{32, 64, 128, 256};
    int mismatches = 0, tested = 0;

    const auto m1 = region_map(ScanKind::M1, grid, grid, cutoffs, 0.01);
    for (const auto& cell : m1) {
        const int aj = static_cast<int>(std::lround(cell.alpha / 0.05));
        const int gi = static_cast<int>(std::lround(cell.gamma / 0.05));
        const int line = 2 * aj - 10; // gamma index of gamma = 2 alpha - 1/2
        if (gi == line) continue;     // within margin of the boundary
        ++tested;
        const Verdict expect = gi < line ? Verdict::growing : Verdict::bounded;
        if (cell.verdict != expect) {
            ++mismatches;
            std::fprintf(stderr, "  region M1 mismatch at alpha=%.2f gamma=%.2f slope=%.4f\n",
                         cell.alpha, cell.gamma, cell.slope);
        }
    }

    const auto m3 = region_map(ScanKind::M3, grid, grid, cutoffs, 0.01);
    for (const auto& cell : m3) {
        const int aj = static_cast<int>(std::lround(cell.alpha / 0.05));
        const int gi = static_cast<int>(std::lround(cell.gamma / 0.05));
        const int line = std::min(20 - 2 * aj, 10); // gamma = min(1-2alpha, 1/2)
        if (gi == line) continue;
        ++tested;
        const Verdict expect = gi > line ? Verdict::growing : Verdict::bounded;
        if (cell.verdict != expect) {
            ++mismatches;
            std::fprintf(stderr, "  region M3 mismatch at alpha=%.2f gamma=%.2f slope=%.4f\n",
                         cell.alpha, cell.gamma, cell.slope);
        }
    }

    std::ostringstream detail;
    detail << tested << " off-margin grid cells, " << mismatches << " mismatches";
    out.detail = detail.str();
    out.pass = mismatches == 0;
    return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion_t_boundedness() {
    Outcome out;
    std::ostringstream detail;
    for (double alpha : {0.1, 0.25, 0.375}) {
        const auto rep = test_T_boundedness(alpha, 100, {16, 64, 256, 1024}, 2024);
        detail << "alpha=" << alpha << ": slope " << rep.slope.slope << "; ";
        if (std::abs(rep.slope.slope) > 0.05) out.pass = false;
    }
    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion_exact_invariants() {
    Outcome out;
    std::ostringstream detail;

    // zero-mode affine law and Hermitian symmetry along an evolved run
    {
        const int N = 32;
        SpectralField u0 = 0.4 * random_sobolev_field(-0.25, N, 71);
        SpectralField u1 = 0.4 * random_sobolev_field(-2.25, N, 72);
        u0.c(0) = 0.6;
        u1.c(0) = -0.2;
        ModelParams p = params_for(N, 0.25, 0.05, 1e-4);
        DirectIntegrator solver(u0, u1, p);
        double worst_zero = 0.0, worst_herm = 0.0;
        const long steps = std::lround(p.horizon / p.dt);
        for (long i = 0; i < steps; ++i) {
            solver.step(p.dt);
            const auto u = solver.current_u();
            worst_zero = std::max(worst_zero,
                                  std::abs(u.c(0) - cdouble(0.6 - 0.2 * solver.time(), 0.0)));
            worst_herm = std::max(worst_herm, hermitian_defect(u));
        }
        detail << "zero-mode " << worst_zero << ", hermitian " << worst_herm << ", ";
        if (worst_zero > 1e-10 || worst_herm > 1e-10) out.pass = false;
    }

    // gauge inversion and L Linv identity at machine precision
    {
        SpectralField u = random_sobolev_field(-0.3, 1024, 73);
        double worst = 0.0;
        const auto gauged = apply_multiplier(
            apply_multiplier(u, MultiplierId::gauge(0.8, 1.1, -0.5, +1)),
            MultiplierId::gauge(0.8, 1.1, -0.5, -1));
        worst = std::max(worst, l2_dist(gauged, u) / u.l2_norm());
        const auto lro = apply_multiplier(apply_multiplier(u, MultiplierId::L()),
                                          MultiplierId::Linv());
        worst = std::max(worst, l2_dist(lro, u) / u.l2_norm());
        detail << "multiplier identities " << worst << ", ";
        if (worst > 1e-12) out.pass = false;
    }

    // resonance identities: exhaustive small lattice plus random large tuples
    {
        bool ok = true;
        for (long long a = -64; a <= 64 && ok; ++a)
            for (long long b = -64; b <= 64 && ok; ++b)
                for (long long c = -64; c <= 64 && ok; ++c) {
                    const std::array<long long, 4> t{a, b, c, -(a + b + c)};
                    try {
                        quadruple_resonance(t, +1, ResonanceCase::pm);
                        quadruple_resonance(t, -1, ResonanceCase::pm);
                        quadruple_resonance(t, +1, ResonanceCase::pp);
                        quadruple_resonance(t, -1, ResonanceCase::pp);
                    } catch (...) {
                        ok = false;
                    }
                }
        std::mt19937_64 rng(99);
        for (int i = 0; i < 10000 && ok; ++i) {
            const long long a = static_cast<long long>(rng() % 2000001) - 1000000;
            const long long b = static_cast<long long>(rng() % 2000001) - 1000000;
            const long long c = static_cast<long long>(rng() % 2000001) - 1000000;
            try {
                quadruple_resonance({a, b, c, -(a + b + c)}, i % 2 ? +1 : -1,
                                    i % 3 ? ResonanceCase::pm : ResonanceCase::pp);
            } catch (...) {
                ok = false;
            }
        }
        detail << "resonance identities " << (ok ? "exact" : "BROKEN");
        if (!ok) out.pass = false;
    }

    out.detail = detail.str();
    return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion_determinism() {
    Outcome out;
    std::ostringstream detail;
    int checked = 0, mismatched = 0;

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    auto rerun = [&](cli::RunConfig cfg, const std::vector<std::string>& artifacts,
                     const std::string& tag) {
        const fs::path d1 = fs::temp_directory_path() / ("goodbsq_acc_" + tag + "_1");
        const fs::path d2 = fs::temp_directory_path() / ("goodbsq_acc_" + tag + "_2");
        fs::remove_all(d1);
        fs::remove_all(d2);
        cfg.out_dir = d1.string();
        if (cli::run(cfg) != 0) {
            ++mismatched;
            return;
        }
        cfg.out_dir = d2.string();
        if (cli::run(cfg) != 0) {
            ++mismatched;
            return;
        }
        for (const auto& a : artifacts) {
            ++checked;
            if (slurp(d1 / a) != slurp(d2 / a)) ++mismatched;
        }
        fs::remove_all(d1);
        fs::remove_all(d2);
    };

    cli::RunConfig ce;
    ce.subcommand = "counterexample";
    ce.alpha = 0.3;
    ce.gamma = 0.45;
    rerun(ce, {"counterexample.csv", "summary.txt"}, "ce");

    cli::RunConfig scan;
    scan.subcommand = "symbol-scan";
    scan.kind = "M3";
    scan.alpha = 0.3;
    scan.gamma = 0.45;
    scan.eps3 = +1;
    scan.n_list = {16, 32, 64};
    rerun(scan, {"scan.csv", "summary.txt"}, "scan");

    cli::RunConfig sim;
    sim.subcommand = "simulate";
    sim.alpha = 0.3;
    sim.n_list = {32};
    sim.horizon = 0.05;
    sim.seed = 9;
    rerun(sim, {"trajectory.csv", "zero_mode.csv"}, "sim");

    cli::RunConfig dec = sim;
    dec.subcommand = "decompose";
    rerun(dec, {"u_trajectory.csv", "psi_trajectory.csv"}, "dec");

    cli::RunConfig tb;
    tb.subcommand = "t-bound";
    tb.alpha = 0.25;
    tb.trials = 10;
    tb.n_list = {8, 16, 32};
    rerun(tb, {"tbound.csv", "summary.txt"}, "tb");

    cli::RunConfig sm;
    sm.subcommand = "smoothing-scan";
    sm.alpha = 0.3;
    sm.beta_list = {0.05};
    sm.n_list = {16, 32, 48};
    sm.horizon = 0.05;
    rerun(sm, {"smoothing.csv", "slopes.csv"}, "sm");

    detail << checked << " artifacts compared, " << mismatched << " mismatches";
    out.detail = detail.str();
    out.pass = mismatched == 0 && checked > 0;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "cross-solver agreement", criterion_cross_solver},
        {2, "normal-form residual order", criterion_normal_form_residual},
        {3, "remainder smoothing", criterion_smoothing},
        {4, "sharpness exponent", criterion_sharpness_exponent},
        {5, "verdict region map", criterion_region_map},
        {6, "operator boundedness", criterion_t_boundedness},
        {7, "exact invariants", criterion_exact_invariants},
        {8, "artifact determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& e : entries) {
        if (!selected.empty() && !selected.count(e.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %d %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", e.id, e.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
