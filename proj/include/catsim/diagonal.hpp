#pragma once

#include <Eigen/Dense>

#include "catsim/geometry.hpp"
#include "catsim/state.hpp"

namespace catsim {

// A diagonal operator given by D real values in a definite representation.
// `values` holds phase angles (radians) for the kinetic and kick factors and
// raw coincidence counts for the scattering potential.
struct DiagonalFactor {
    Rep rep = Rep::position;
    Eigen::VectorXd values;
};

// Kinetic phases over a time span dt, diagonal in the momentum
// representation: angle(l0, l1..lI) = -pi*dt*(l0^2/N + sum_i l_i^2/nu).
// Momentum indices run 0..n-1 by default; `symmetric` relabels them to
// [-n/2, n/2) inside the quadratic (a sensitivity knob for the fractional
// flow; at integer times the two conventions differ by a global phase).
DiagonalFactor free_phases(const Geometry& g, double dt,
                           bool symmetric = false);

// Kick phases, diagonal in position: angle(j0, .) = +pi*eta*j0^2/N,
// independent of the scatterer indices.
DiagonalFactor kick_phases(const Geometry& g, int eta);

// Point-interaction coincidence count, diagonal in position: the number of
// scatterers i with j0 == (N/nu)*j_i + s_i (mod N). Values lie in [0, I].
DiagonalFactor scattering_counts(const Geometry& g);

// Multiply amplitudes pointwise by exp(i*scale*values). The state's tags
// must all equal the factor's representation.
void apply_phases(StateVector& state, const Geometry& g,
                  const DiagonalFactor& f, double scale = 1.0);

}  // namespace catsim
