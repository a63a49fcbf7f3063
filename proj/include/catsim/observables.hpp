#pragma once

#include <Eigen/Dense>

#include "catsim/geometry.hpp"
#include "catsim/propagator.hpp"
#include "catsim/state.hpp"

namespace catsim {

// Periodicized single-particle observable, diagonal in one representation.
struct ObservableDiag {
    Rep rep = Rep::position;
    Eigen::VectorXd values;
};

// sin(2*pi*j0/N) on the large particle, diagonal in position.
ObservableDiag q_diag(const Geometry& g);

// -sin(2*pi*k0/N) on the large particle, diagonal in momentum.
ObservableDiag p_diag(const Geometry& g);

// Position autocorrelation C(t) = (1/D) Tr[W^dag Q W Q] evaluated from
// |W|^2 only. Returns the undoubled value; C(0) = 1/2 for N >= 3.
double acf(const DensePropagator& w, const Geometry& g);

struct OtocSample {
    double o = 0.0;        // O(t)  = O_plus - O_minus
    double o_plus = 0.0;   // 2 <P^2 Q^2(t)>
    double o_minus = 0.0;  // 2 <P Q(t) P Q(t)>
};

// All three OTOC functionals from shared intermediates. O_plus needs only
// per-axis transforms of W; O_minus forms Q(t) = W^dag Q W with one dense
// product per call.
OtocSample otoc_sample(const DensePropagator& w, const Geometry& g);

double otoc_plus(const DensePropagator& w, const Geometry& g);
double otoc_minus(const DensePropagator& w, const Geometry& g);
double otoc(const DensePropagator& w, const Geometry& g);

}  // namespace catsim
