#include "catsim/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "catsim/config.hpp"
#include "catsim/errors.hpp"
#include "catsim/runner.hpp"
#include "catsim/threads.hpp"
#include "catsim/version.hpp"

namespace catsim {

int cli_main(int argc, const char* const* argv) {
    apply_thread_cap();

    ExperimentConfig cfg;
    CLI::App app{
        "catsim: correlation functions of a kicked particle on a ring "
        "coupled to small scatterers"};
    app.set_version_flag("--version", std::string("catsim ") + kVersion);
    app.set_config("--config", "", "flat key=value configuration file");

    app.add_option("mode,--mode", cfg.mode,
                   "job kind: acf | otoc | classical-acf | period | fit");
    app.add_option("--n_cat_exp", cfg.n_cat_exp,
                   "large-particle dimension exponent, N = 2^n_cat_exp");
    app.add_option("--nu_exp", cfg.nu_exp,
                   "scatterer dimension exponent, nu = 2^nu_exp");
    app.add_option("--n_small", cfg.n_small, "number of scatterers I");
    app.add_option("--shifts", cfg.shifts,
                   "scatterer lattice shifts s_i (default all zero)");
    app.add_option("--eta", cfg.eta, "kick strength (0 disables the kick)");
    app.add_option("--kappa", cfg.kappa, "scattering coupling");
    app.add_option("--t_max", cfg.t_max, "final time");
    app.add_option("--sample_dt", cfg.sample_dt,
                   "sample spacing; 1/sample_dt must be an integer");
    app.add_option("--n_substeps", cfg.n_substeps,
                   "Strang substeps per unit time");
    app.add_flag("--symmetric_indices", cfg.symmetric_indices,
                 "symmetrized momentum labels in fractional kinetic phases");
    app.add_flag("--double_acf", cfg.double_acf,
                 "report 2C(t) instead of C(t)");
    app.add_option("--out_path", cfg.out_path, "output CSV path");
    app.add_option("--memory_budget_bytes", cfg.memory_budget_bytes,
                   "dense-propagator allocation limit");
    app.add_option("--fit_window", cfg.fit_window,
                   "fit window bounds: lo hi")
        ->expected(0, 2);
    app.add_option("--window_scale", cfg.window_scale,
                   "fit window units: t | ln2t");
    app.add_option("--fit_kind", cfg.fit_kind,
                   "power-decay | saturation | rho-slope");
    app.add_option("--in_path", cfg.in_path, "input CSV for mode=fit");
    app.add_option("--ref_path", cfg.ref_path,
                   "reference (kappa=0) CSV for fit_kind=rho-slope");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (cfg.mode.empty()) {
        std::cerr << "catsim: config error: no mode given (positional or "
                     "mode=... in the config file)\n";
        return 2;
    }

    try {
        return run_experiment(cfg, std::cout);
    } catch (const MemoryBudgetError& e) {
        std::cerr << "catsim: memory error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "catsim: io error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "catsim: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "catsim: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace catsim
