#include "catsim/runner.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "catsim/analysis.hpp"
#include "catsim/classical.hpp"
#include "catsim/csv.hpp"
#include "catsim/errors.hpp"
#include "catsim/observables.hpp"

namespace catsim {

namespace {

std::vector<double> time_grid(double t_max, double sample_dt) {
    const long long n =
        static_cast<long long>(std::floor(t_max / sample_dt + 1e-9));
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i)
        t[static_cast<std::size_t>(i)] = static_cast<double>(i) * sample_dt;
    return t;
}

std::map<std::string, std::string> series_meta(const ExperimentConfig& cfg,
                                               const std::string& quantity) {
    std::ostringstream geo;
    geo << "N=" << (1 << cfg.n_cat_exp) << " nu=" << (1 << cfg.nu_exp)
        << " I=" << cfg.n_small;
    std::map<std::string, std::string> m;
    m["geometry"] = geo.str();
    m["eta"] = std::to_string(cfg.eta);
    m["kappa"] = std::to_string(cfg.kappa);
    m["n_substeps"] = std::to_string(cfg.n_substeps);
    m["quantity"] = quantity;
    return m;
}

const std::vector<double>& named_column(const csv::File& f,
                                        const std::string& name,
                                        std::size_t fallback_index) {
    for (std::size_t i = 0; i < f.col_names.size(); ++i)
        if (f.col_names[i] == name) return f.cols[i];
    if (fallback_index < f.cols.size()) return f.cols[fallback_index];
    throw IoError("csv: no column named '" + name + "'");
}

TimeSeries series_from_csv(const csv::File& f, const std::string& col,
                           std::size_t fallback_index) {
    TimeSeries s;
    s.times = f.cols.at(0);
    s.values = named_column(f, col, fallback_index);
    s.validate();
    return s;
}

void report_fit(std::ostream& out, const std::string& kind,
                const analysis::FitResult& fit) {
    out << "fit=" << kind << "\n";
    for (const auto& [k, v] : fit.params) out << k << "=" << v << "\n";
    out << "residual=" << fit.residual << "\n";
    out << "window=" << fit.window.first << ".." << fit.window.second << "\n";
}

int run_fit(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.in_path.empty())
        throw std::invalid_argument("config: mode=fit requires in_path");
    const csv::File in = csv::read(cfg.in_path);

    if (cfg.fit_kind == "power-decay") {
        TimeSeries s = series_from_csv(in, "sigma_abs_C", 1);
        const auto fit = analysis::fit_power_decay(s, cfg.window_in_t());
        report_fit(out, cfg.fit_kind, fit);
        return 0;
    }
    if (cfg.fit_kind == "saturation") {
        if (in.cols.size() < 2)
            throw IoError("csv: saturation fit needs (kappa, value) columns");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < in.cols[0].size(); ++i)
            pts.emplace_back(in.cols[0][i], in.cols[1][i]);
        const auto fit = analysis::fit_saturation(pts);
        report_fit(out, cfg.fit_kind, fit);
        return 0;
    }
    if (cfg.fit_kind == "rho-slope") {
        if (cfg.ref_path.empty())
            throw std::invalid_argument(
                "config: fit_kind=rho-slope requires ref_path (the kappa=0 run)");
        const csv::File ref = csv::read(cfg.ref_path);
        TimeSeries pert = series_from_csv(in, "O_minus", 3);
        TimeSeries unpert = series_from_csv(ref, "O_minus", 3);
        const TimeSeries rho = analysis::rho_kappa(unpert, pert);

        TimeSeries lnrho;  // ln|1 - rho|, skipping exact ties
        lnrho.meta = rho.meta;
        lnrho.meta["quantity"] = "ln_abs_one_minus_rho";
        for (std::size_t i = 0; i < rho.size(); ++i) {
            const double dev = std::abs(1.0 - rho.values[i]);
            if (dev < 1e-15) continue;
            lnrho.times.push_back(rho.times[i]);
            lnrho.values.push_back(std::log(dev));
        }
        const auto fit = analysis::fit_line(lnrho, cfg.window_in_t());
        report_fit(out, cfg.fit_kind, fit);
        if (!cfg.out_path.empty()) {
            std::vector<csv::Column> cols;
            csv::Column c1{"rho", {}}, c2{"ln_abs_one_minus_rho", {}};
            for (std::size_t i = 0; i < rho.size(); ++i) {
                const double dev = std::abs(1.0 - rho.values[i]);
                c1.values.push_back(rho.values[i]);
                c2.values.push_back(dev > 0 ? std::log(dev)
                                            : -std::numeric_limits<double>::infinity());
            }
            cols.push_back(std::move(c1));
            cols.push_back(std::move(c2));
            csv::write(cfg.out_path, cfg.provenance(), rho.times, cols);
            out << "wrote " << cfg.out_path << "\n";
        }
        return 0;
    }
    throw std::invalid_argument(
        "config: fit_kind must be power-decay, saturation or rho-slope, got '" +
        cfg.fit_kind + "'");
}

}  // namespace

AcfRun run_acf(const ExperimentConfig& cfg) {
    const PropagatorSpec spec = cfg.make_spec();
    const Geometry& g = spec.geometry;

    AcfRun r;
    r.c.meta = series_meta(cfg, "acf");
    r.c.meta["double_acf"] = cfg.double_acf ? "1" : "0";
    accumulate(spec, cfg.t_max, cfg.memory_budget_bytes,
               [&](const DensePropagator& w) {
                   const double v = acf(w, g);
                   r.c.times.push_back(w.time);
                   r.c.values.push_back(cfg.double_acf ? 2.0 * v : v);
               });
    r.delta_c = analysis::delta_c(r.c);
    r.sigma_abs_delta_c = analysis::cumulative_abs(r.delta_c);
    r.sigma_abs_c = analysis::cumulative_abs(r.c);
    return r;
}

OtocRun run_otoc(const ExperimentConfig& cfg) {
    const PropagatorSpec spec = cfg.make_spec();
    const Geometry& g = spec.geometry;

    OtocRun r;
    r.o.meta = series_meta(cfg, "otoc");
    r.o_plus.meta = series_meta(cfg, "otoc_plus");
    r.o_minus.meta = series_meta(cfg, "otoc_minus");
    accumulate(spec, cfg.t_max, cfg.memory_budget_bytes,
               [&](const DensePropagator& w) {
                   const OtocSample s = otoc_sample(w, g);
                   r.o.times.push_back(w.time);
                   r.o.values.push_back(s.o);
                   r.o_plus.times.push_back(w.time);
                   r.o_plus.values.push_back(s.o_plus);
                   r.o_minus.times.push_back(w.time);
                   r.o_minus.values.push_back(s.o_minus);
               });
    r.delta_o = analysis::delta_o(r.o, g);
    return r;
}

TimeSeries classical_acf_series(double t_max, double sample_dt, bool doubled) {
    TimeSeries s;
    s.times = time_grid(t_max, sample_dt);
    s.values.resize(s.times.size());
    for (std::size_t i = 0; i < s.times.size(); ++i)
        s.values[i] = (doubled ? 2.0 : 1.0) *
                      classical::classical_acf(s.times[i]);
    s.meta["quantity"] = "classical_acf";
    s.meta["double_acf"] = doubled ? "1" : "0";
    return s;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.mode == "period") {
        const Geometry g = cfg.make_geometry();
        out << "tau=" << classical::lattice_period(g.n_cat()) << "\n";
        return 0;
    }
    if (cfg.mode == "classical-acf") {
        if (cfg.out_path.empty())
            throw std::invalid_argument(
                "config: mode=classical-acf requires out_path");
        const TimeSeries s =
            classical_acf_series(cfg.t_max, cfg.sample_dt, cfg.double_acf);
        const std::string name = cfg.double_acf ? "2C_cl" : "C_cl";
        csv::write(cfg.out_path, cfg.provenance(), s.times,
                   {{name, s.values}});
        out << "wrote " << cfg.out_path << "\n";
        return 0;
    }
    if (cfg.mode == "acf") {
        if (cfg.out_path.empty())
            throw std::invalid_argument("config: mode=acf requires out_path");
        const AcfRun r = run_acf(cfg);
        const std::string cname = cfg.double_acf ? "2C" : "C";
        csv::write(cfg.out_path, cfg.provenance(), r.c.times,
                   {{cname, r.c.values},
                    {"delta_C", r.delta_c.values},
                    {"sigma_abs_delta_C", r.sigma_abs_delta_c.values},
                    {"sigma_abs_C", r.sigma_abs_c.values}});
        out << "wrote " << cfg.out_path << "\n";
        return 0;
    }
    if (cfg.mode == "otoc") {
        if (cfg.out_path.empty())
            throw std::invalid_argument("config: mode=otoc requires out_path");
        const OtocRun r = run_otoc(cfg);
        // delta_O aligned to the O grid; dropped (nonpositive) samples -> nan
        std::vector<double> dcol(r.o.size(),
                                 std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0, j = 0; i < r.o.size(); ++i) {
            if (j < r.delta_o.size() &&
                std::abs(r.delta_o.times[j] - r.o.times[i]) < 1e-9)
                dcol[i] = r.delta_o.values[j++];
        }
        csv::write(cfg.out_path, cfg.provenance(), r.o.times,
                   {{"O", r.o.values},
                    {"O_plus", r.o_plus.values},
                    {"O_minus", r.o_minus.values},
                    {"delta_O", dcol}});
        out << "wrote " << cfg.out_path << "\n";
        return 0;
    }
    if (cfg.mode == "fit") return run_fit(cfg, out);
    throw std::invalid_argument(
        "config: mode must be one of acf, otoc, classical-acf, period, fit; "
        "got '" + cfg.mode + "'");
}

}  // namespace catsim
