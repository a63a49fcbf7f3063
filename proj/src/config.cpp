#include "catsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace catsim {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

Geometry ExperimentConfig::make_geometry() const {
    return Geometry(n_cat_exp, nu_exp, n_small, shifts);
}

PropagatorSpec ExperimentConfig::make_spec() const {
    PropagatorSpec spec{make_geometry(), eta,        kappa,
                        n_substeps,      sample_dt,  symmetric_indices};
    spec.validate();
    return spec;
}

std::pair<double, double> ExperimentConfig::window_in_t() const {
    if (fit_window.size() != 2)
        throw std::invalid_argument(
            "config: fit_window must hold two values (lo hi)");
    double lo = fit_window[0], hi = fit_window[1];
    if (window_scale == "ln2t") {
        lo = 0.5 * std::exp(lo);
        hi = 0.5 * std::exp(hi);
    } else if (window_scale != "t") {
        throw std::invalid_argument(
            "config: window_scale must be 't' or 'ln2t', got '" +
            window_scale + "'");
    }
    return {lo, hi};
}

std::vector<std::pair<std::string, std::string>>
ExperimentConfig::provenance() const {
    std::ostringstream sh;
    for (std::size_t i = 0; i < shifts.size(); ++i)
        sh << (i ? " " : "") << shifts[i];
    std::ostringstream fw;
    for (std::size_t i = 0; i < fit_window.size(); ++i)
        fw << (i ? " " : "") << num(fit_window[i]);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("mode", mode);
    kv.emplace_back("n_cat_exp", std::to_string(n_cat_exp));
    kv.emplace_back("nu_exp", std::to_string(nu_exp));
    kv.emplace_back("n_small", std::to_string(n_small));
    kv.emplace_back("shifts", sh.str());
    kv.emplace_back("eta", std::to_string(eta));
    kv.emplace_back("kappa", num(kappa));
    kv.emplace_back("t_max", num(t_max));
    kv.emplace_back("sample_dt", num(sample_dt));
    kv.emplace_back("n_substeps", std::to_string(n_substeps));
    kv.emplace_back("symmetric_indices", symmetric_indices ? "1" : "0");
    kv.emplace_back("double_acf", double_acf ? "1" : "0");
    kv.emplace_back("out_path", out_path);
    kv.emplace_back("memory_budget_bytes", std::to_string(memory_budget_bytes));
    kv.emplace_back("fit_window", fw.str());
    kv.emplace_back("window_scale", window_scale);
    kv.emplace_back("fit_kind", fit_kind);
    kv.emplace_back("in_path", in_path);
    kv.emplace_back("ref_path", ref_path);
    return kv;
}

}  // namespace catsim
