#pragma once

#include <string>
#include <utility>
#include <vector>

#include "catsim/geometry.hpp"
#include "catsim/propagator.hpp"

namespace catsim {

// One experiment = one invocation. Populated from a flat key=value config
// file plus command-line overrides; every key mirrors a field here.
struct ExperimentConfig {
    std::string mode;  // acf | otoc | classical-acf | period | fit

    int n_cat_exp = 5;
    int nu_exp = 0;
    int n_small = 0;
    std::vector<int> shifts;  // empty means all zeros

    int eta = 0;
    double kappa = 0.0;

    double t_max = 10.0;
    double sample_dt = 1.0;
    int n_substeps = 32;
    bool symmetric_indices = false;

    bool double_acf = false;
    std::string out_path;
    unsigned long long memory_budget_bytes = 4ull << 30;

    // fit-mode inputs
    std::vector<double> fit_window;   // [lo, hi]
    std::string window_scale = "t";   // "t" or "ln2t"
    std::string fit_kind;             // power-decay | saturation | rho-slope
    std::string in_path;
    std::string ref_path;

    Geometry make_geometry() const;
    PropagatorSpec make_spec() const;

    // Fit window converted to plain time units.
    std::pair<double, double> window_in_t() const;

    // Full configuration as ordered key=value pairs (CSV provenance).
    std::vector<std::pair<std::string, std::string>> provenance() const;
};

}  // namespace catsim
