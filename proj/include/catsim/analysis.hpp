#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "catsim/geometry.hpp"
#include "catsim/timeseries.hpp"

namespace catsim::analysis {

struct FitResult {
    std::map<std::string, double> params;
    double residual = 0.0;  // root-mean-square over the fit window
    std::pair<double, double> window{0.0, 0.0};
};

// Quantum-minus-classical ACF on the input grid. If meta["double_acf"] is
// "1" the classical reference is doubled to match.
TimeSeries delta_c(const TimeSeries& quantum_acf);

// Trapezoidal running integral of |value| from the first sample.
TimeSeries cumulative_abs(const TimeSeries& s);

// Least-squares fit of S(t) = A*(1 - B*t^(1-d)) to a cumulative-|C| series
// over the given time window; damped least squares with multi-start over d,
// d constrained to (1, 4). Params: "A", "B", "d".
FitResult fit_power_decay(const TimeSeries& sigma_abs,
                          std::pair<double, double> window);

// Rescaled log-OTOC: delta_O(t) = ln O(t) + 2 ln(N/pi). Nonpositive samples
// are dropped and counted in meta["dropped_samples"].
TimeSeries delta_o(const TimeSeries& otoc_series, const Geometry& g);

// Slope of delta_O(infinity) against ln(kappa). Input points are
// (kappa, delta_O_infinity); at least two required. Params: "a", "intercept".
FitResult fit_saturation(const std::vector<std::pair<double, double>>& points);

// rho_kappa(t) = O_minus(kappa=0; t) / O_minus(kappa; t) on a common grid.
// Samples with |denominator| < 1e-12 are dropped and counted in
// meta["dropped_samples"].
TimeSeries rho_kappa(const TimeSeries& ominus_unperturbed,
                     const TimeSeries& ominus_perturbed);

// Plain linear fit y = slope*x + intercept over samples inside the window.
FitResult fit_line(const TimeSeries& s, std::pair<double, double> window);

// Mean of samples with t in [t_lo, t_hi]; the late-time estimator used for
// delta_O(infinity).
double window_mean(const TimeSeries& s, double t_lo, double t_hi);

struct ShortTimeModelParams {
    double c = 0.0;        // offset constant shared across couplings
    double a_kappa = 0.0;  // coupling-dependent amplitude
    double lambda = 0.0;   // classical Lyapunov exponent
    int n_cat = 0;
};

// Short-time model of the perturbed log-OTOC:
//   ln O(kappa;t) = ln O(0;t) + ln{1 + delta*(B*(N/pi)^2*exp(-2*lambda*t) - 1)}
// with delta = exp(-c + a_kappa + t/2) and B = 1/2. Returns nullopt when the
// logarithm argument is nonpositive (invalid point).
std::optional<double> otoc_short_time_model(const ShortTimeModelParams& p,
                                            double t,
                                            double ln_o_unperturbed);

}  // namespace catsim::analysis
