// cli.hpp -- subcommand dispatch, config validation, manifest/CSV emission.
//
// Every run writes manifest.json (the fully resolved config, seed and a
// deterministic run id) plus one CSV per report table and a human-readable
// summary.txt.  Identical config+seed reruns produce byte-identical CSVs:
// all randomness flows from the seed and every parallel reduction merges in
// a fixed order.  Exit codes: 0 success, 2 validation error, 3 numerical
// abort (norm guard).

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "goodbsq/dynamics.hpp"
#include "goodbsq/estimates.hpp"
#include "goodbsq/serialize.hpp"

namespace goodbsq::cli {

struct RunConfig {
    std::string subcommand;

    double alpha = 0.3;
    double gamma = 0.45;
    std::vector<double> beta_list; // smoothing-scan betas / trajectory norms
    double delta = 0.01;
    std::vector<int> n_list;       // truncations or scan cutoffs
    double dt = 0.0;               // 0: resolve the fastest mode automatically
    double horizon = 0.25;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string format = "csv";    // csv | json

    // simulate / decompose data block
    std::string data = "random";   // random | cosine
    double amplitude = 0.3;
    double mean0 = 0.0;
    double mean1 = 0.0;
    int output_points = 65;
    bool dump_states = false;

    // symbol-scan
    std::string kind = "M1";
    int eps1 = 0, eps2 = 0, eps3 = 0; // 0 = unset (maximize over signs)
    bool grid = false;                // region-map mode

    // t-bound
    int trials = 100;

    // smoothing scan dt factor
    double dt_factor = 0.75;
};

namespace detail_cli {

inline void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid field '" + field + "': " + what);
}

inline void validate(const RunConfig& c) {
    const bool known = c.subcommand == "simulate" || c.subcommand == "decompose" ||
                       c.subcommand == "smoothing-scan" || c.subcommand == "symbol-scan" ||
                       c.subcommand == "counterexample" || c.subcommand == "t-bound";
    require(known, "subcommand",
            "expected one of simulate, decompose, smoothing-scan, symbol-scan, counterexample, "
            "t-bound");
    require(c.alpha >= 0.0 && c.alpha < 0.5, "alpha", "must lie in [0, 1/2)");
    require(c.delta > 0.0 && c.delta <= 0.1, "delta", "must lie in (0, 0.1]");
    require(c.horizon > 0.0, "horizon", "must be positive");
    require(c.dt >= 0.0, "dt", "must be positive (or omitted for automatic)");
    require(c.format == "csv" || c.format == "json", "format", "expected csv or json");
    for (int n : c.n_list) require(n >= 4, "n", "every value must be >= 4");
    if (c.subcommand == "simulate" || c.subcommand == "decompose") {
        require(c.data == "random" || c.data == "cosine", "data", "expected random or cosine");
        require(c.output_points >= 2, "output-points", "must be >= 2");
    }
    if (c.subcommand == "smoothing-scan")
        require(c.alpha > 0.0 && c.alpha < 0.375, "alpha", "must lie in (0, 3/8)");
    if (c.subcommand == "symbol-scan")
        require(c.kind == "M1" || c.kind == "M2" || c.kind == "M3" || c.kind == "M4", "kind",
                "expected M1, M2, M3 or M4");
    if (c.subcommand == "t-bound") {
        require(c.trials >= 1, "trials", "must be >= 1");
        require(c.alpha > 0.0, "alpha", "must be positive for t-bound");
    }
    for (int e : {c.eps1, c.eps2, c.eps3})
        require(e == 0 || e == 1 || e == -1, "eps", "sign flags must be +-1");
}

inline json config_to_json(const RunConfig& c) {
    json j;
    j["subcommand"] = c.subcommand;
    j["alpha"] = c.alpha;
    j["gamma"] = c.gamma;
    j["beta_list"] = c.beta_list;
    j["delta"] = c.delta;
    j["n_list"] = c.n_list;
    j["dt"] = c.dt;
    j["horizon"] = c.horizon;
    j["seed"] = c.seed;
    j["out"] = c.out_dir;
    j["format"] = c.format;
    j["data"] = c.data;
    j["amplitude"] = c.amplitude;
    j["mean0"] = c.mean0;
    j["mean1"] = c.mean1;
    j["output_points"] = c.output_points;
    j["dump_states"] = c.dump_states;
    j["kind"] = c.kind;
    j["eps1"] = c.eps1;
    j["eps2"] = c.eps2;
    j["eps3"] = c.eps3;
    j["grid"] = c.grid;
    j["trials"] = c.trials;
    j["dt_factor"] = c.dt_factor;
    return j;
}

inline void write_manifest(const RunConfig& c, const std::filesystem::path& dir) {
    json m;
    m["tool"] = "goodbsq";
    m["version"] = "0.1.0";
    m["config"] = config_to_json(c);
    json semantic = m["config"];
    semantic.erase("out"); // the output path does not affect any number
    m["run_id"] = run_id_from(semantic.dump());
    m["conventions"] = {
        {"zero_mode", "u_hat(t,0) = mean(u0) + t*mean(u1), exact affine law"},
        {"gauge_coefficients",
         "drift/gauge A0, A1 are (1/pi) * integral of u0 resp. u1, i.e. twice the data means"},
        {"gauge_multiplier", "sign +: exp(-(A0 t + A1 t^2/2)|n|/<n>), sign -: inverse"},
        {"counterexample_denominator",
         "primary: N[<N+1>-<N>] + <N> - sqrt2; alt column uses <N+1> as produced by the "
         "operator symbol at (N+1, -N)"},
        {"scan_exponent", "growth slope fitted on dyadic-shell suprema, max|xi| in (c/2, c]"}};
    std::ofstream out(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

inline std::string verdict_str(Verdict v) {
    return v == Verdict::growing ? "growing" : "bounded";
}

struct DataPair {
    SpectralField u0, u1;
};

inline DataPair make_data(const RunConfig& c, int N) {
    DataPair d;
    if (c.data == "cosine") {
        d.u0 = SpectralField(N, true);
        d.u1 = SpectralField(N, true);
        d.u0.c(1) = 0.5 * c.amplitude;
        d.u0.c(-1) = 0.5 * c.amplitude;
        d.u0.c(0) = c.mean0;
        d.u1.c(0) = c.mean1;
    } else {
        d.u0 = c.amplitude * random_sobolev_field(-c.alpha, N, c.seed);
        d.u1 = c.amplitude * random_sobolev_field(-c.alpha - 2.0, N, c.seed + 1);
        d.u0.c(0) = c.mean0;
        d.u1.c(0) = c.mean1;
    }
    return d;
}

inline ModelParams make_params(const RunConfig& c, int N) {
    ModelParams p;
    p.alpha = c.alpha;
    p.gamma = c.gamma;
    p.delta = c.delta;
    p.trunc = N;
    p.horizon = c.horizon;
    if (c.dt > 0.0) {
        p.dt = c.dt;
    } else {
        const long steps =
            std::max<long>(1, std::lround(c.horizon * dispersion_mu(N) / c.dt_factor));
        p.dt = c.horizon / static_cast<double>(steps);
    }
    return p;
}

inline std::vector<double> norm_list(const RunConfig& c) {
    if (!c.beta_list.empty()) return c.beta_list;
    return {-c.alpha, 0.0, 1.0};
}

inline void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    CsvWriter csv(path.string());
    csv.header({"t", "s", "norm"});
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        for (std::size_t j = 0; j < traj.norm_s.size(); ++j)
            csv.line({fmt17(traj.times[i]), fmt17(traj.norm_s[j]), fmt17(traj.norms[i][j])});
}

inline void write_zero_mode_csv(const Trajectory& traj, const std::filesystem::path& path) {
    CsvWriter csv(path.string());
    csv.header({"t", "re", "im"});
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv.line({fmt17(traj.times[i]), fmt17(traj.zero_mode[i].real()),
                  fmt17(traj.zero_mode[i].imag())});
}

inline json trajectory_to_json(const Trajectory& traj) {
    json rows = json::array();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        json r;
        r["t"] = traj.times[i];
        r["zero_mode_re"] = traj.zero_mode[i].real();
        r["zero_mode_im"] = traj.zero_mode[i].imag();
        json norms;
        for (std::size_t j = 0; j < traj.norm_s.size(); ++j)
            norms[fmt17(traj.norm_s[j])] = traj.norms[i][j];
        r["norms"] = norms;
        rows.push_back(r);
    }
    return rows;
}

inline int run_simulate(const RunConfig& c, const std::filesystem::path& dir, bool decomposed) {
    const int N = c.n_list.empty() ? 64 : c.n_list.front();
    const DataPair d = make_data(c, N);
    const ModelParams p = make_params(c, N);
    IntegrateOptions opts;
    opts.norm_s = norm_list(c);
    opts.output_points = c.output_points;

    std::ostringstream summary;
    json results;
    if (!decomposed) {
        const Trajectory traj = integrate_direct(d.u0, d.u1, p, opts);
        if (c.format == "json")
            results["trajectory"] = trajectory_to_json(traj);
        else {
            write_trajectory_csv(traj, dir / "trajectory.csv");
            write_zero_mode_csv(traj, dir / "zero_mode.csv");
        }
        if (c.dump_states) {
            field_write_binary(traj.states.back(), (dir / "state_final.bin").string());
            std::ofstream js(dir / "state_final.json");
            js << field_to_json(traj.states.back()).dump() << '\n';
        }
        summary << "simulate: N=" << N << " dt=" << fmt17(p.dt) << " horizon=" << fmt17(p.horizon)
                << "\n";
        for (std::size_t j = 0; j < traj.norm_s.size(); ++j)
            summary << "  final H^" << fmt17(traj.norm_s[j])
                    << " norm: " << fmt17(traj.norms.back()[j]) << "\n";
    } else {
        const auto [psi_traj, u_traj] = integrate_decomposed(d.u0, d.u1, p, opts);
        if (c.format == "json") {
            results["u_trajectory"] = trajectory_to_json(u_traj);
            results["psi_trajectory"] = trajectory_to_json(psi_traj);
        } else {
            write_trajectory_csv(u_traj, dir / "u_trajectory.csv");
            write_trajectory_csv(psi_traj, dir / "psi_trajectory.csv");
            write_zero_mode_csv(u_traj, dir / "zero_mode.csv");
        }
        if (c.dump_states) {
            field_write_binary(u_traj.states.back(), (dir / "state_final.bin").string());
            std::ofstream js(dir / "state_final.json");
            js << field_to_json(u_traj.states.back()).dump() << '\n';
        }
        summary << "decompose: N=" << N << " dt=" << fmt17(p.dt)
                << " horizon=" << fmt17(p.horizon) << "\n";
        summary << "  final |psi+|_{L2}: " << fmt17(psi_traj.states.back().l2_norm()) << "\n";
        for (std::size_t j = 0; j < u_traj.norm_s.size(); ++j)
            summary << "  final u H^" << fmt17(u_traj.norm_s[j])
                    << " norm: " << fmt17(u_traj.norms.back()[j]) << "\n";
    }
    if (c.format == "json") {
        std::ofstream js(dir / "results.json");
        js << results.dump(2) << '\n';
    }
    std::ofstream sum(dir / "summary.txt");
    sum << summary.str();
    return 0;
}

inline int run_smoothing(const RunConfig& c, const std::filesystem::path& dir) {
    SmoothingScanConfig cfg;
    cfg.alpha = c.alpha;
    cfg.betas = c.beta_list.empty() ? std::vector<double>{0.05} : c.beta_list;
    cfg.n_list = c.n_list.empty() ? std::vector<int>{32, 64, 128, 256} : c.n_list;
    cfg.seed = c.seed;
    cfg.horizon = c.horizon;
    cfg.dt_factor = c.dt_factor;
    cfg.amplitude = c.amplitude;
    cfg.output_points = c.output_points;
    cfg.delta = c.delta;
    const SmoothingScanReport rep = smoothing_scan(cfg);

    std::ostringstream summary;
    summary << "smoothing-scan: alpha=" << fmt17(cfg.alpha) << " amplitude=" << fmt17(cfg.amplitude)
            << " horizon=" << fmt17(cfg.horizon) << "\n";
    if (c.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < rep.n_list.size(); ++i)
            for (std::size_t j = 0; j < cfg.betas.size(); ++j)
                rows.push_back({{"N", rep.n_list[i]},
                                {"beta", cfg.betas[j]},
                                {"gamma", cfg.betas[j] + cfg.alpha},
                                {"sup_z", rep.sup_z[i][j]},
                                {"sup_free", rep.sup_free[i][j]}});
        json slopes = json::array();
        for (std::size_t j = 0; j < cfg.betas.size(); ++j)
            slopes.push_back({{"beta", cfg.betas[j]},
                              {"slope_z", rep.slope_z[j].slope},
                              {"slope_z_ci95", rep.slope_z[j].ci95},
                              {"slope_free", rep.slope_free[j].slope},
                              {"slope_free_ci95", rep.slope_free[j].ci95}});
        std::ofstream js(dir / "results.json");
        js << json{{"rows", rows}, {"slopes", slopes}}.dump(2) << '\n';
    } else {
        CsvWriter csv((dir / "smoothing.csv").string());
        csv.header({"N", "beta", "gamma", "sup_z", "sup_free"});
        for (std::size_t i = 0; i < rep.n_list.size(); ++i)
            for (std::size_t j = 0; j < cfg.betas.size(); ++j)
                csv.line({std::to_string(rep.n_list[i]), fmt17(cfg.betas[j]),
                          fmt17(cfg.betas[j] + cfg.alpha), fmt17(rep.sup_z[i][j]),
                          fmt17(rep.sup_free[i][j])});
        CsvWriter slopes((dir / "slopes.csv").string());
        slopes.header({"beta", "slope_z", "slope_z_ci95", "slope_free", "slope_free_ci95"});
        for (std::size_t j = 0; j < cfg.betas.size(); ++j)
            slopes.line({fmt17(cfg.betas[j]), fmt17(rep.slope_z[j].slope),
                         fmt17(rep.slope_z[j].ci95), fmt17(rep.slope_free[j].slope),
                         fmt17(rep.slope_free[j].ci95)});
    }
    for (std::size_t j = 0; j < cfg.betas.size(); ++j) {
        const bool smoothed = rep.slope_z[j].slope <= 0.1;
        summary << "  beta=" << fmt17(cfg.betas[j]) << ": remainder slope "
                << fmt17(rep.slope_z[j].slope) << " (" << (smoothed ? "bounded" : "growing")
                << "), free-part slope " << fmt17(rep.slope_free[j].slope) << "\n";
    }
    std::ofstream sum(dir / "summary.txt");
    sum << summary.str();
    return 0;
}

inline int run_symbol_scan(const RunConfig& c, const std::filesystem::path& dir) {
    const ScanKind kind = c.kind == "M1"   ? ScanKind::M1
                          : c.kind == "M2" ? ScanKind::M2
                          : c.kind == "M3" ? ScanKind::M3
                                           : ScanKind::M4;
    std::ostringstream summary;
    if (c.grid) {
        std::vector<double> grid_vals;
        for (int i = 1; i <= 9; ++i) grid_vals.push_back(0.05 * i);
        const std::vector<int> cutoffs =
            c.n_list.empty() ? std::vector<int>{32, 64, 128, 256} : c.n_list;
        const auto cells = region_map(kind, grid_vals, grid_vals, cutoffs, c.delta);
        if (c.format == "json") {
            json rows = json::array();
            for (const auto& cell : cells)
                rows.push_back({{"alpha", cell.alpha},
                                {"gamma", cell.gamma},
                                {"slope", cell.slope},
                                {"verdict", verdict_str(cell.verdict)}});
            std::ofstream js(dir / "results.json");
            js << json{{"kind", c.kind}, {"cells", rows}}.dump(2) << '\n';
        } else {
            CsvWriter csv((dir / "region_map.csv").string());
            csv.header({"kind", "alpha", "gamma", "slope", "verdict"});
            for (const auto& cell : cells)
                csv.line({c.kind, fmt17(cell.alpha), fmt17(cell.gamma), fmt17(cell.slope),
                          verdict_str(cell.verdict)});
        }
        int growing = 0;
        for (const auto& cell : cells) growing += cell.verdict == Verdict::growing;
        summary << "symbol-scan region map " << c.kind << ": " << growing << "/" << cells.size()
                << " grid cells growing\n";
    } else {
        LatticeScanConfig cfg;
        cfg.kind = kind;
        cfg.alpha = c.alpha;
        cfg.gamma = c.gamma;
        cfg.delta = c.delta;
        if (!c.n_list.empty()) cfg.cutoffs = c.n_list;
        if (c.eps1 != 0) cfg.eps1 = c.eps1;
        if (c.eps2 != 0) cfg.eps2 = c.eps2;
        if (c.eps3 != 0) cfg.eps3 = c.eps3;
        const SymbolScanReport rep = scan_M(cfg);
        if (c.format == "json") {
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"cutoff", r.cutoff},
                                {"sup_shell", r.shell_sup},
                                {"sup_cumulative", r.cumulative_sup},
                                {"argmax", r.argmax},
                                {"argmax_signs", r.argmax_signs}});
            std::ofstream js(dir / "results.json");
            js << json{{"kind", c.kind},
                       {"alpha", c.alpha},
                       {"gamma", c.gamma},
                       {"delta", c.delta},
                       {"rows", rows},
                       {"slope", rep.shell_slope.slope},
                       {"slope_ci95", rep.shell_slope.ci95},
                       {"verdict", verdict_str(rep.verdict)}}
                      .dump(2)
               << '\n';
        } else {
            CsvWriter csv((dir / "scan.csv").string());
            csv.header({"kind", "alpha", "gamma", "delta", "cutoff", "sup_shell",
                        "sup_cumulative", "argmax_xi1", "argmax_xi2", "argmax_xi3", "argmax_xi4",
                        "eps1", "eps2", "eps3", "slope"});
            for (const auto& r : rep.rows)
                csv.line({c.kind, fmt17(c.alpha), fmt17(c.gamma), fmt17(c.delta),
                          std::to_string(r.cutoff), fmt17(r.shell_sup), fmt17(r.cumulative_sup),
                          std::to_string(r.argmax[0]), std::to_string(r.argmax[1]),
                          std::to_string(r.argmax[2]), std::to_string(r.argmax[3]),
                          std::to_string(r.argmax_signs[0]), std::to_string(r.argmax_signs[1]),
                          std::to_string(r.argmax_signs[2]), fmt17(rep.shell_slope.slope)});
        }
        summary << "symbol-scan " << c.kind << " alpha=" << fmt17(c.alpha)
                << " gamma=" << fmt17(c.gamma) << ": slope " << fmt17(rep.shell_slope.slope)
                << " +- " << fmt17(rep.shell_slope.ci95) << ", verdict "
                << verdict_str(rep.verdict) << "\n";
    }
    std::ofstream sum(dir / "summary.txt");
    sum << summary.str();
    return 0;
}

inline int run_counterexample(const RunConfig& c, const std::filesystem::path& dir) {
    std::vector<long long> ns;
    if (c.n_list.empty())
        ns = default_counterexample_n();
    else
        for (int n : c.n_list) ns.push_back(n);
    const CounterexampleReport rep = counterexample_report(c.alpha, c.gamma, ns);
    if (c.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < rep.n_values.size(); ++i)
            rows.push_back({{"N", rep.n_values[i]},
                            {"C", rep.values[i]},
                            {"C_alt", rep.values_alt[i]}});
        std::ofstream js(dir / "results.json");
        js << json{{"alpha", c.alpha},
                   {"gamma", c.gamma},
                   {"rows", rows},
                   {"fitted_slope", rep.fit.slope},
                   {"slope_ci95", rep.fit.ci95},
                   {"theory_exponent", rep.theory_exponent}}
                  .dump(2)
           << '\n';
    } else {
        CsvWriter csv((dir / "counterexample.csv").string());
        csv.header({"N", "C", "C_alt"});
        for (std::size_t i = 0; i < rep.n_values.size(); ++i)
            csv.line({std::to_string(rep.n_values[i]), fmt17(rep.values[i]),
                      fmt17(rep.values_alt[i])});
    }
    std::ofstream sum(dir / "summary.txt");
    char line[160];
    std::snprintf(line, sizeof(line),
                  "counterexample: fitted slope %.4f vs theory %.4f (2*alpha+gamma-1)\n",
                  rep.fit.slope, rep.theory_exponent);
    sum << line;
    return 0;
}

inline int run_tbound(const RunConfig& c, const std::filesystem::path& dir) {
    const std::vector<int> ns =
        c.n_list.empty() ? std::vector<int>{16, 64, 256, 1024} : c.n_list;
    const TBoundReport rep = test_T_boundedness(c.alpha, c.trials, ns, c.seed);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"N", r.trunc},
                            {"max_ratio", r.max_ratio},
                            {"median_ratio", r.median_ratio},
                            {"adversarial_max", r.adversarial_max},
                            {"closed_form_highlow", r.closed_form_highlow}});
        std::ofstream js(dir / "results.json");
        js << json{{"alpha", c.alpha},
                   {"trials", c.trials},
                   {"rows", rows},
                   {"slope", rep.slope.slope},
                   {"slope_ci95", rep.slope.ci95}}
                  .dump(2)
           << '\n';
    } else {
        CsvWriter csv((dir / "tbound.csv").string());
        csv.header({"N", "max_ratio", "median_ratio", "adversarial_max", "closed_form_highlow"});
        for (const auto& r : rep.rows)
            csv.line({std::to_string(r.trunc), fmt17(r.max_ratio), fmt17(r.median_ratio),
                      fmt17(r.adversarial_max), fmt17(r.closed_form_highlow)});
    }
    std::ofstream sum(dir / "summary.txt");
    sum << "t-bound: alpha=" << fmt17(c.alpha) << " cross-N slope of max ratio "
        << fmt17(rep.slope.slope) << " +- " << fmt17(rep.slope.ci95) << "\n";
    return 0;
}

} // namespace detail_cli

inline int run(const RunConfig& config, std::ostream& err = std::cerr) {
    try {
        detail_cli::validate(config);
        const std::filesystem::path dir(config.out_dir);
        std::filesystem::create_directories(dir);
        detail_cli::write_manifest(config, dir);
        if (config.subcommand == "simulate")
            return detail_cli::run_simulate(config, dir, false);
        if (config.subcommand == "decompose")
            return detail_cli::run_simulate(config, dir, true);
        if (config.subcommand == "smoothing-scan") return detail_cli::run_smoothing(config, dir);
        if (config.subcommand == "symbol-scan") return detail_cli::run_symbol_scan(config, dir);
        if (config.subcommand == "counterexample")
            return detail_cli::run_counterexample(config, dir);
        if (config.subcommand == "t-bound") return detail_cli::run_tbound(config, dir);
        err << "error: unknown subcommand '" << config.subcommand << "'\n";
        return 2;
    } catch (const NumericalAbort& e) {
        err << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace goodbsq::cli
