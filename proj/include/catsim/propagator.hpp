#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

#include "catsim/diagonal.hpp"
#include "catsim/geometry.hpp"
#include "catsim/state.hpp"

namespace catsim {

// Parameters of the unit-time Floquet step U = K * U_flow, where U_flow is
// the split-step integration of the kinetic term plus the scattering
// potential kappa*V over one kick period, and K is the quadratic kick of
// strength eta applied at integer times.
struct PropagatorSpec {
    Geometry geometry;
    int eta = 0;            // kick strength; 0 disables the kick
    double kappa = 0.0;     // scattering coupling; phase rate kappa (rad) per coincidence
    int n_substeps = 32;    // Strang substeps per unit time
    double sample_dt = 1.0; // observation grid spacing; 1/sample_dt integral
    bool symmetric_indices = false;  // symmetrized momentum labels in the
                                     // fractional kinetic phases

    void validate() const;

    // Substeps between consecutive samples (= n_substeps * sample_dt).
    int substeps_per_sample() const;
    int samples_per_unit() const;
};

// One second-order Strang substep over dt:
//   exp(-i*kappa*V*dt/2) F^dag exp(i*free_phases(dt)) F exp(-i*kappa*V*dt/2)
// with F the full position->momentum transform. Exactly unitary for any dt.
// The state must be in the position representation.
StateVector substep(StateVector state, const PropagatorSpec& spec, double dt);

// Advance one kick period: n_substeps substeps of length 1/n_substeps, then
// the kick phases (kick after the inter-kick flow).
StateVector evolve_unit(StateVector state, const PropagatorSpec& spec);

// Dense propagator snapshot W(t) = U^t: columns are U^t applied to the
// position-basis vectors; both indices live in the position representation.
struct DensePropagator {
    double time = 0.0;
    Eigen::MatrixXcd matrix;
};

// Streams W(t) on the grid t = 0, sample_dt, 2*sample_dt, ..., t_max by
// advancing all D columns in lockstep. Kick phases are applied exactly at
// integer times, before the sample taken there. The matrix buffer is reused
// between samples; copy it if you need to keep a snapshot.
class PropagatorStream {
public:
    PropagatorStream(PropagatorSpec spec, double t_max,
                     std::size_t memory_budget_bytes);

    // Advance to the next sample; false once past t_max.
    bool next();

    const DensePropagator& current() const { return current_; }
    double time() const { return current_.time; }
    const Eigen::MatrixXcd& matrix() const { return current_.matrix; }

private:
    PropagatorSpec spec_;
    long long total_substeps_;
    long long substep_index_ = 0;
    int substeps_per_sample_;
    bool started_ = false;
    Eigen::VectorXcd vhalf_;     // empty when kappa == 0
    Eigen::VectorXcd free_fac_;  // kinetic factor with 1/D folded in
    Eigen::VectorXcd kick_fac_;  // empty when eta == 0
    DensePropagator current_;
};

// Callback-driven accumulation over the sample grid.
void accumulate(const PropagatorSpec& spec, double t_max,
                std::size_t memory_budget_bytes,
                const std::function<void(const DensePropagator&)>& sink);

// max_{ij} |(W^dag W - 1)_{ij}|; the strict unitarity defect (O(D^3)).
double max_unitarity_defect(const Eigen::MatrixXcd& w);

// max_j |  ||column_j|| - 1 |; a cheap unitarity proxy (O(D^2)).
double column_norm_drift(const Eigen::MatrixXcd& w);

}  // namespace catsim
