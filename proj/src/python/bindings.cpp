#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catsim/analysis.hpp"
#include "catsim/classical.hpp"
#include "catsim/config.hpp"
#include "catsim/geometry.hpp"
#include "catsim/runner.hpp"
#include "catsim/threads.hpp"
#include "catsim/timeseries.hpp"
#include "catsim/version.hpp"

namespace py = pybind11;
using namespace catsim;

namespace {

py::dict fit_to_dict(const analysis::FitResult& fit) {
    py::dict d;
    py::dict params;
    for (const auto& [k, v] : fit.params) params[py::str(k)] = v;
    d["params"] = params;
    d["residual"] = fit.residual;
    d["window"] = py::make_tuple(fit.window.first, fit.window.second);
    return d;
}

}  // namespace

PYBIND11_MODULE(_catsim, m) {
    m.doc() = "Correlation functions of a kicked particle on a ring coupled "
              "to small scatterers";
    m.attr("__version__") = kVersion;
    apply_thread_cap();

    py::class_<Geometry>(m, "Geometry")
        .def(py::init<int, int, int, std::vector<int>>(), py::arg("n_cat_exp"),
             py::arg("nu_exp"), py::arg("n_small") = 0,
             py::arg("shifts") = std::vector<int>{})
        .def_property_readonly("n_cat", &Geometry::n_cat)
        .def_property_readonly("nu", &Geometry::nu)
        .def_property_readonly("n_small", &Geometry::n_small)
        .def_property_readonly("dim", &Geometry::dim)
        .def_property_readonly("shifts", &Geometry::shifts)
        .def("flatten",
             [](const Geometry& g, int large, const std::vector<int>& small) {
                 return g.flatten(MultiIndex{large, small});
             })
        .def("unflatten",
             [](const Geometry& g, std::size_t k) {
                 const MultiIndex idx = g.unflatten(k);
                 return py::make_tuple(idx.large, idx.small);
             })
        .def("__repr__", [](const Geometry& g) {
            return "Geometry(N=" + std::to_string(g.n_cat()) +
                   ", nu=" + std::to_string(g.nu()) +
                   ", I=" + std::to_string(g.n_small()) +
                   ", dim=" + std::to_string(g.dim()) + ")";
        });

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def_readwrite("times", &TimeSeries::times)
        .def_readwrite("values", &TimeSeries::values)
        .def_readwrite("meta", &TimeSeries::meta)
        .def("__len__", &TimeSeries::size);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("n_cat_exp", &ExperimentConfig::n_cat_exp)
        .def_readwrite("nu_exp", &ExperimentConfig::nu_exp)
        .def_readwrite("n_small", &ExperimentConfig::n_small)
        .def_readwrite("shifts", &ExperimentConfig::shifts)
        .def_readwrite("eta", &ExperimentConfig::eta)
        .def_readwrite("kappa", &ExperimentConfig::kappa)
        .def_readwrite("t_max", &ExperimentConfig::t_max)
        .def_readwrite("sample_dt", &ExperimentConfig::sample_dt)
        .def_readwrite("n_substeps", &ExperimentConfig::n_substeps)
        .def_readwrite("double_acf", &ExperimentConfig::double_acf)
        .def_readwrite("out_path", &ExperimentConfig::out_path)
        .def_readwrite("memory_budget_bytes",
                       &ExperimentConfig::memory_budget_bytes);

    m.def(
        "run_acf",
        [](const ExperimentConfig& cfg) {
            const AcfRun r = run_acf(cfg);
            py::dict d;
            d["times"] = r.c.times;
            d["C"] = r.c.values;
            d["delta_C"] = r.delta_c.values;
            d["sigma_abs_delta_C"] = r.sigma_abs_delta_c.values;
            d["sigma_abs_C"] = r.sigma_abs_c.values;
            return d;
        },
        py::arg("config"),
        "Position autocorrelation run; returns sample grid plus C, delta_C "
        "and their running |.| integrals.");

    m.def(
        "run_otoc",
        [](const ExperimentConfig& cfg) {
            const OtocRun r = run_otoc(cfg);
            py::dict d;
            d["times"] = r.o.times;
            d["O"] = r.o.values;
            d["O_plus"] = r.o_plus.values;
            d["O_minus"] = r.o_minus.values;
            d["delta_O_times"] = r.delta_o.times;
            d["delta_O"] = r.delta_o.values;
            return d;
        },
        py::arg("config"),
        "Out-of-time-order correlator run; returns O, O_plus, O_minus and "
        "the rescaled delta_O on its own (possibly shorter) grid.");

    m.def("classical_acf_series", &classical_acf_series, py::arg("t_max"),
          py::arg("sample_dt"), py::arg("doubled") = false);

    // classical references
    m.def("free_map",
          [](double q, double p, double t) {
              const auto y = classical::free_map({q, p}, t);
              return py::make_tuple(y.q, y.p);
          });
    m.def("cat_map", [](double q, double p) {
        const auto y = classical::cat_map({q, p});
        return py::make_tuple(y.q, y.p);
    });
    m.def("classical_acf", &classical::classical_acf, py::arg("t"));
    m.def("lattice_period", &classical::lattice_period, py::arg("n"));
    m.def("lyapunov", &classical::lyapunov);

    // analysis
    m.def("delta_c", &analysis::delta_c, py::arg("quantum_acf"));
    m.def("cumulative_abs", &analysis::cumulative_abs, py::arg("series"));
    m.def(
        "fit_power_decay",
        [](const TimeSeries& s, double lo, double hi) {
            return fit_to_dict(analysis::fit_power_decay(s, {lo, hi}));
        },
        py::arg("sigma_abs"), py::arg("t_lo"), py::arg("t_hi"));
    m.def("delta_o", &analysis::delta_o, py::arg("otoc_series"),
          py::arg("geometry"));
    m.def(
        "fit_saturation",
        [](const std::vector<std::pair<double, double>>& pts) {
            return fit_to_dict(analysis::fit_saturation(pts));
        },
        py::arg("points"));
    m.def("rho_kappa", &analysis::rho_kappa, py::arg("ominus_unperturbed"),
          py::arg("ominus_perturbed"));
    m.def(
        "fit_line",
        [](const TimeSeries& s, double lo, double hi) {
            return fit_to_dict(analysis::fit_line(s, {lo, hi}));
        },
        py::arg("series"), py::arg("t_lo"), py::arg("t_hi"));
    m.def(
        "otoc_short_time_model",
        [](double c, double a_kappa, double lambda, int n_cat, double t,
           double ln_o_unperturbed) -> py::object {
            const auto v = analysis::otoc_short_time_model(
                {c, a_kappa, lambda, n_cat}, t, ln_o_unperturbed);
            if (!v) return py::none();
            return py::float_(*v);
        },
        py::arg("c"), py::arg("a_kappa"), py::arg("lambda"), py::arg("n_cat"),
        py::arg("t"), py::arg("ln_o_unperturbed"));
}
