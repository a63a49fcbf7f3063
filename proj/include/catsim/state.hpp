#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "catsim/geometry.hpp"

namespace catsim {

enum class Rep { position, momentum };

// Joint wavefunction: D complex amplitudes plus one representation tag per
// particle. Transforms and propagation steps preserve the Euclidean norm.
class StateVector {
public:
    StateVector(const Geometry& g, Rep rep = Rep::position)
        : amplitudes(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.dim()))),
          reps(static_cast<std::size_t>(g.n_particles()), rep) {}

    Eigen::VectorXcd amplitudes;
    std::vector<Rep> reps;

    double norm() const { return amplitudes.norm(); }

    bool all_in(Rep rep) const {
        for (Rep r : reps)
            if (r != rep) return false;
        return true;
    }
};

// Basis delta function at the given lattice point, in position representation.
StateVector position_delta(const Geometry& g, const MultiIndex& idx);

// Normalized uniform superposition over the position basis.
StateVector uniform_state(const Geometry& g);

}  // namespace catsim
