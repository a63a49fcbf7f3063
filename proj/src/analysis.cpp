#include "catsim/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "catsim/classical.hpp"

namespace catsim::analysis {

namespace {

bool is_doubled(const TimeSeries& s) {
    auto it = s.meta.find("double_acf");
    return it != s.meta.end() && (it->second == "1" || it->second == "true");
}

std::vector<std::size_t> window_indices(const TimeSeries& s, double lo,
                                        double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.times[i] >= lo - 1e-12 && s.times[i] <= hi + 1e-12)
            idx.push_back(i);
    return idx;
}

void check_window(const TimeSeries& s, std::pair<double, double> w) {
    if (s.size() == 0) throw std::invalid_argument("fit: empty series");
    if (w.first > w.second)
        throw std::invalid_argument("fit: window lower bound above upper");
    if (w.first < s.times.front() - 1e-9 || w.second > s.times.back() + 1e-9)
        throw std::invalid_argument("fit: window outside the data range");
}

struct PowerDecayCost {
    const std::vector<double>& t;
    const std::vector<double>& y;

    double cost(double a, double b, double d) const {
        double c = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double u = std::pow(t[i], 1.0 - d);
            const double r = a * (1.0 - b * u) - y[i];
            c += r * r;
        }
        return c;
    }
};

// Linear profile over (A, A*B) for fixed d; used to seed each start.
void profile_linear(const std::vector<double>& t, const std::vector<double>& y,
                    double d, double& a, double& b) {
    double s11 = 0, s1u = 0, suu = 0, s1y = 0, suy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double u = std::pow(t[i], 1.0 - d);
        s11 += 1.0;
        s1u += u;
        suu += u * u;
        s1y += y[i];
        suy += u * y[i];
    }
    const double det = s11 * suu - s1u * s1u;
    if (std::abs(det) < 1e-300) {
        a = s1y / std::max(s11, 1.0);
        b = 0.0;
        return;
    }
    // model y = A - (A*B) u
    const double c0 = (s1y * suu - s1u * suy) / det;   // A
    const double c1 = -(s11 * suy - s1u * s1y) / det;  // A*B
    a = c0;
    b = (std::abs(c0) > 1e-300) ? c1 / c0 : 0.0;
}

}  // namespace

TimeSeries delta_c(const TimeSeries& quantum_acf) {
    quantum_acf.validate();
    const double scale = is_doubled(quantum_acf) ? 2.0 : 1.0;
    TimeSeries out;
    out.times = quantum_acf.times;
    out.values.resize(quantum_acf.size());
    for (std::size_t i = 0; i < quantum_acf.size(); ++i)
        out.values[i] = quantum_acf.values[i] -
                        scale * classical::classical_acf(quantum_acf.times[i]);
    out.meta = quantum_acf.meta;
    out.meta["quantity"] = "delta_c";
    return out;
}

TimeSeries cumulative_abs(const TimeSeries& s) {
    s.validate();
    TimeSeries out;
    out.times = s.times;
    out.values.resize(s.size());
    out.meta = s.meta;
    out.meta["quantity"] = "cumulative_abs";
    if (s.size() == 0) return out;
    out.values[0] = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double dt = s.times[i] - s.times[i - 1];
        out.values[i] = out.values[i - 1] +
                        0.5 * dt * (std::abs(s.values[i]) +
                                    std::abs(s.values[i - 1]));
    }
    return out;
}

FitResult fit_power_decay(const TimeSeries& sigma_abs,
                          std::pair<double, double> window) {
    sigma_abs.validate();
    check_window(sigma_abs, window);
    const auto idx = window_indices(sigma_abs, window.first, window.second);
    if (idx.size() < 4)
        throw std::invalid_argument(
            "fit_power_decay: fewer than 4 samples in window");
    std::vector<double> t(idx.size()), y(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        t[i] = sigma_abs.times[idx[i]];
        y[i] = sigma_abs.values[idx[i]];
        if (t[i] <= 0.0)
            throw std::invalid_argument(
                "fit_power_decay: window must exclude t <= 0");
    }

    PowerDecayCost f{t, y};
    const double d_starts[] = {1.2, 1.6, 2.0, 2.8};
    double best_a = 0, best_b = 0, best_d = 0,
           best_cost = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    std::ostringstream trace;

    for (double d0 : d_starts) {
        double a, b, d = d0;
        profile_linear(t, y, d, a, b);
        double lambda = 1e-4;
        double cost = f.cost(a, b, d);
        bool converged = false;
        for (int it = 0; it < 300; ++it) {
            // residuals and Jacobian
            Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
            Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
            for (std::size_t i = 0; i < t.size(); ++i) {
                const double u = std::pow(t[i], 1.0 - d);
                const double r = a * (1.0 - b * u) - y[i];
                Eigen::Vector3d j;
                j[0] = 1.0 - b * u;                 // d/dA
                j[1] = -a * u;                      // d/dB
                j[2] = a * b * std::log(t[i]) * u;  // d/dd
                jtj += j * j.transpose();
                jtr += j * r;
            }
            Eigen::Matrix3d damped = jtj;
            damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
            const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
            const double na = a + step[0], nb = b + step[1], nd = d + step[2];
            if (nd <= 1.0 + 1e-9 || nd >= 4.0 - 1e-9) {
                lambda *= 10.0;
                if (lambda > 1e12) break;
                continue;
            }
            const double ncost = f.cost(na, nb, nd);
            if (ncost < cost) {
                const double rel = (cost - ncost) / std::max(cost, 1e-300);
                a = na;
                b = nb;
                d = nd;
                cost = ncost;
                lambda = std::max(lambda / 3.0, 1e-12);
                if (rel < 1e-13) {
                    converged = true;
                    break;
                }
            } else {
                lambda *= 10.0;
                if (lambda > 1e12) {
                    converged = true;  // stalled at a local minimum
                    break;
                }
            }
        }
        trace << "start d=" << d0 << " -> d=" << d << " cost=" << cost
              << (converged ? "" : " (not converged)") << "; ";
        if (!converged) continue;
        const bool first = !any_converged;
        any_converged = true;
        const double tol = 1e-9 * std::max(1.0, cost);
        if (first || cost < best_cost - tol ||
            (std::abs(cost - best_cost) <= tol && d < best_d)) {
            best_a = a;
            best_b = b;
            best_d = d;
            best_cost = cost;
        }
    }
    if (!any_converged)
        throw std::runtime_error("fit_power_decay: no start converged: " +
                                 trace.str());

    FitResult res;
    res.params["A"] = best_a;
    res.params["B"] = best_b;
    res.params["d"] = best_d;
    res.residual = std::sqrt(best_cost / static_cast<double>(t.size()));
    res.window = window;
    return res;
}

TimeSeries delta_o(const TimeSeries& otoc_series, const Geometry& g) {
    otoc_series.validate();
    TimeSeries out;
    out.meta = otoc_series.meta;
    out.meta["quantity"] = "delta_o";
    const double shift = 2.0 * std::log(static_cast<double>(g.n_cat()) / M_PI);
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < otoc_series.size(); ++i) {
        if (otoc_series.values[i] <= 0.0) {
            ++dropped;
            continue;
        }
        out.times.push_back(otoc_series.times[i]);
        out.values.push_back(std::log(otoc_series.values[i]) + shift);
    }
    if (dropped > 0) out.meta["dropped_samples"] = std::to_string(dropped);
    return out;
}

FitResult fit_saturation(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument(
            "fit_saturation: need at least two (kappa, value) points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    for (const auto& [kappa, v] : points) {
        if (kappa <= 0.0)
            throw std::invalid_argument("fit_saturation: kappa must be > 0");
        const double x = std::log(kappa);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    const double n = static_cast<double>(points.size());
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12)
        throw std::invalid_argument("fit_saturation: kappa values coincide");
    const double a = (n * sxy - sx * sy) / det;
    const double b = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (const auto& [kappa, v] : points) {
        const double r = a * std::log(kappa) + b - v;
        ss += r * r;
    }
    FitResult res;
    res.params["a"] = a;
    res.params["intercept"] = b;
    res.residual = std::sqrt(ss / n);
    res.window = {xmin, xmax};
    return res;
}

TimeSeries rho_kappa(const TimeSeries& ominus_unperturbed,
                     const TimeSeries& ominus_perturbed) {
    ominus_unperturbed.validate();
    ominus_perturbed.validate();
    if (ominus_unperturbed.size() != ominus_perturbed.size())
        throw std::invalid_argument("rho_kappa: series lengths differ");
    TimeSeries out;
    out.meta = ominus_perturbed.meta;
    out.meta["quantity"] = "rho_kappa";
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < ominus_perturbed.size(); ++i) {
        if (std::abs(ominus_unperturbed.times[i] - ominus_perturbed.times[i]) >
            1e-9)
            throw std::invalid_argument("rho_kappa: sample grids differ");
        const double den = ominus_perturbed.values[i];
        if (std::abs(den) < 1e-12) {
            ++dropped;
            continue;
        }
        out.times.push_back(ominus_perturbed.times[i]);
        out.values.push_back(ominus_unperturbed.values[i] / den);
    }
    if (dropped > 0) out.meta["dropped_samples"] = std::to_string(dropped);
    return out;
}

FitResult fit_line(const TimeSeries& s, std::pair<double, double> window) {
    s.validate();
    check_window(s, window);
    const auto idx = window_indices(s, window.first, window.second);
    if (idx.size() < 2)
        throw std::invalid_argument("fit_line: fewer than 2 samples in window");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i : idx) {
        sx += s.times[i];
        sy += s.values[i];
        sxx += s.times[i] * s.times[i];
        sxy += s.times[i] * s.values[i];
    }
    const double n = static_cast<double>(idx.size());
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy * sxx - sx * sxy) / det;
    double ss = 0.0;
    for (std::size_t i : idx) {
        const double r = slope * s.times[i] + intercept - s.values[i];
        ss += r * r;
    }
    FitResult res;
    res.params["slope"] = slope;
    res.params["intercept"] = intercept;
    res.residual = std::sqrt(ss / n);
    res.window = window;
    return res;
}

double window_mean(const TimeSeries& s, double t_lo, double t_hi) {
    const auto idx = window_indices(s, t_lo, t_hi);
    if (idx.empty())
        throw std::invalid_argument("window_mean: no samples in window");
    double sum = 0.0;
    for (std::size_t i : idx) sum += s.values[i];
    return sum / static_cast<double>(idx.size());
}

std::optional<double> otoc_short_time_model(const ShortTimeModelParams& p,
                                            double t,
                                            double ln_o_unperturbed) {
    const double b = 0.5;  // constant value of O_plus
    const double ratio = static_cast<double>(p.n_cat) / M_PI;
    const double delta = std::exp(-p.c + p.a_kappa + 0.5 * t);
    const double arg =
        1.0 + delta * (b * ratio * ratio * std::exp(-2.0 * p.lambda * t) - 1.0);
    if (arg <= 0.0) return std::nullopt;
    return ln_o_unperturbed + std::log(arg);
}

}  // namespace catsim::analysis
