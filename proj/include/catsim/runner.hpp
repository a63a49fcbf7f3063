#pragma once

#include <iosfwd>

#include "catsim/config.hpp"
#include "catsim/timeseries.hpp"

namespace catsim {

struct AcfRun {
    TimeSeries c;                  // C(t), doubled when configured
    TimeSeries delta_c;            // C - C_cl (same normalization)
    TimeSeries sigma_abs_delta_c;  // running integral of |delta C|
    TimeSeries sigma_abs_c;        // running integral of |C|
};

struct OtocRun {
    TimeSeries o;
    TimeSeries o_plus;
    TimeSeries o_minus;
    TimeSeries delta_o;  // ln O + 2 ln(N/pi); nonpositive samples dropped
};

AcfRun run_acf(const ExperimentConfig& cfg);
OtocRun run_otoc(const ExperimentConfig& cfg);

// Classical reference on the same grid shape as the quantum runs.
TimeSeries classical_acf_series(double t_max, double sample_dt, bool doubled);

// Executes one configured job: runs the simulation or fit, writes CSV output
// where the mode calls for it, and prints the textual report to `out`.
// Returns a process exit status (0 on success).
int run_experiment(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace catsim
