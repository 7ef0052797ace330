// goodbsq -- command line front end.
//
//   goodbsq simulate       direct half-wave integration
//   goodbsq decompose      normal-form decomposed integration
//   goodbsq smoothing-scan remainder-vs-free growth across truncations
//   goodbsq symbol-scan    M1..M4 lattice suprema (--grid for the region map)
//   goodbsq counterexample sharpness constant C(N) and its exponent fit
//   goodbsq t-bound        randomized L2xL2 -> H1 boundedness trials
//
// A flat key=value config file can be passed with --config; command line
// flags override it.  GOODBSQ_THREADS caps the worker pool.

#include <string>
#include <vector>

#include "CLI11.hpp"

#include "goodbsq/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral toolkit for the periodic quadratic Boussinesq flow"};
    app.set_config("--config", "", "flat key=value config file; flags override");
    app.require_subcommand(0, 1);

    goodbsq::cli::RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "data roughness exponent");
        sub->add_option("--gamma", cfg.gamma, "remainder regularity (w-variable)");
        sub->add_option("--beta", cfg.beta_list, "remainder regularity list (u-variable)");
        sub->add_option("--delta", cfg.delta, "modulation exponent slack");
        sub->add_option("--n", cfg.n_list, "truncations / scan cutoffs (repeatable)");
        sub->add_option("--dt", cfg.dt, "time step (omit to resolve the fastest mode)");
        sub->add_option("--horizon", cfg.horizon, "integration horizon");
        sub->add_option("--seed", cfg.seed, "seed for all randomness");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--format", cfg.format, "artifact format: csv or json");
    };

    CLI::App* sim = app.add_subcommand("simulate", "direct half-wave integration");
    CLI::App* dec = app.add_subcommand("decompose", "decomposed integration");
    for (CLI::App* sub : {sim, dec}) {
        add_common(sub);
        sub->add_option("--data", cfg.data, "data family: random or cosine");
        sub->add_option("--amplitude", cfg.amplitude, "data amplitude");
        sub->add_option("--mean0", cfg.mean0, "mean of u0");
        sub->add_option("--mean1", cfg.mean1, "mean of u1");
        sub->add_option("--output-points", cfg.output_points, "recorded output times");
        sub->add_flag("--dump-states", cfg.dump_states, "write final state dumps");
    }

    CLI::App* smo = app.add_subcommand("smoothing-scan", "remainder growth across N");
    add_common(smo);
    smo->add_option("--amplitude", cfg.amplitude, "data amplitude");
    smo->add_option("--output-points", cfg.output_points, "recorded output times");
    smo->add_option("--dt-factor", cfg.dt_factor, "dt * mu_N target");

    CLI::App* sym = app.add_subcommand("symbol-scan", "multiplier lattice scan");
    add_common(sym);
    sym->add_option("--kind", cfg.kind, "M1, M2, M3 or M4");
    sym->add_option("--eps1", cfg.eps1, "first sign (+1/-1; omit to maximize)");
    sym->add_option("--eps2", cfg.eps2, "second sign");
    sym->add_option("--eps3", cfg.eps3, "third sign (trilinear kinds)");
    sym->add_flag("--grid", cfg.grid, "scan the (alpha,gamma) verdict grid");

    CLI::App* ce = app.add_subcommand("counterexample", "sharpness constant C(N)");
    add_common(ce);

    CLI::App* tb = app.add_subcommand("t-bound", "L2xL2 -> H1 boundedness trials");
    add_common(tb);
    tb->add_option("--trials", cfg.trials, "random pairs per truncation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.get_subcommands().empty()) {
        std::cerr << "error: a subcommand is required: simulate, decompose, smoothing-scan, "
                     "symbol-scan, counterexample, t-bound\n";
        return 2;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    return goodbsq::cli::run(cfg);
}
