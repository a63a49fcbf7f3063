#include "catsim/propagator.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

#include "catsim/errors.hpp"
#include "catsim/fourier.hpp"

namespace catsim {

namespace {

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol;
}

Eigen::VectorXcd unit_phases(const Eigen::VectorXd& angles) {
    Eigen::VectorXcd out(angles.size());
    for (Eigen::Index k = 0; k < angles.size(); ++k)
        out[k] = std::complex<double>(std::cos(angles[k]), std::sin(angles[k]));
    return out;
}

void rowwise_mul(std::complex<double>* data, std::size_t dim,
                 std::size_t batch, const Eigen::VectorXcd& fac) {
#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(batch); ++c) {
        Eigen::Map<Eigen::VectorXcd> col(
            data + static_cast<std::size_t>(c) * dim,
            static_cast<Eigen::Index>(dim));
        col.array() *= fac.array();
    }
}

// Half-step scattering factor exp(-i*kappa*c*dt/2) per basis state.
Eigen::VectorXcd scatter_half_factor(const Geometry& g, double kappa,
                                     double dt) {
    const DiagonalFactor counts = scattering_counts(g);
    Eigen::VectorXd angles = -0.5 * kappa * dt * counts.values;
    return unit_phases(angles);
}

// Kinetic factor for one substep with the inverse-transform normalization
// (1/D) folded in, so the surrounding transforms can run unnormalized.
Eigen::VectorXcd free_factor_folded(const Geometry& g, double dt,
                                    bool symmetric) {
    const DiagonalFactor ph = free_phases(g, dt, symmetric);
    Eigen::VectorXcd fac = unit_phases(ph.values);
    fac *= 1.0 / static_cast<double>(g.dim());
    return fac;
}

void apply_substep_batch(std::complex<double>* data, const Geometry& g,
                         std::size_t batch, const Eigen::VectorXcd* vhalf,
                         const Eigen::VectorXcd& free_fac) {
    if (vhalf) rowwise_mul(data, g.dim(), batch, *vhalf);
    fft::all_axes_unnormalized(data, g, batch, FourierDirection::to_momentum);
    rowwise_mul(data, g.dim(), batch, free_fac);
    fft::all_axes_unnormalized(data, g, batch, FourierDirection::to_position);
    if (vhalf) rowwise_mul(data, g.dim(), batch, *vhalf);
}

void warn_if_aliased(const PropagatorSpec& spec) {
    if (spec.kappa <= 0.0) return;
    const double kdt = spec.kappa / spec.n_substeps;
    if (kdt >= 2.0 * M_PI - 1e-12)
        std::cerr << "catsim: warning: scattering phase per substep is "
                  << kdt << " rad (>= 2*pi); the potential aliases. "
                     "Increase n_substeps to at least ~2*kappa.\n";
}

}  // namespace

void PropagatorSpec::validate() const {
    if (kappa < 0.0)
        throw std::invalid_argument("propagator: kappa must be >= 0");
    if (n_substeps < 1)
        throw std::invalid_argument("propagator: n_substeps must be >= 1");
    if (!(sample_dt > 0.0))
        throw std::invalid_argument("propagator: sample_dt must be > 0");
    if (!near_integer(1.0 / sample_dt))
        throw std::invalid_argument(
            "propagator: 1/sample_dt must be an integer, got sample_dt = " +
            std::to_string(sample_dt));
    if (!near_integer(static_cast<double>(n_substeps) * sample_dt))
        throw std::invalid_argument(
            "propagator: n_substeps*sample_dt must be an integer so samples "
            "land on substep boundaries");
}

int PropagatorSpec::substeps_per_sample() const {
    return static_cast<int>(
        std::llround(static_cast<double>(n_substeps) * sample_dt));
}

int PropagatorSpec::samples_per_unit() const {
    return static_cast<int>(std::llround(1.0 / sample_dt));
}

StateVector substep(StateVector state, const PropagatorSpec& spec, double dt) {
    spec.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("substep: dt must be > 0");
    if (!state.all_in(Rep::position))
        throw std::invalid_argument(
            "substep: state must be in the position representation");
    const Geometry& g = spec.geometry;
    Eigen::VectorXcd vhalf;
    const bool scattering = spec.kappa > 0.0 && g.n_small() > 0;
    if (scattering) vhalf = scatter_half_factor(g, spec.kappa, dt);
    const Eigen::VectorXcd free_fac =
        free_factor_folded(g, dt, spec.symmetric_indices);
    apply_substep_batch(state.amplitudes.data(), g, 1,
                        scattering ? &vhalf : nullptr, free_fac);
    return state;
}

StateVector evolve_unit(StateVector state, const PropagatorSpec& spec) {
    spec.validate();
    if (!state.all_in(Rep::position))
        throw std::invalid_argument(
            "evolve_unit: state must be in the position representation");
    const Geometry& g = spec.geometry;
    const double dt = 1.0 / spec.n_substeps;
    Eigen::VectorXcd vhalf;
    const bool scattering = spec.kappa > 0.0 && g.n_small() > 0;
    if (scattering) vhalf = scatter_half_factor(g, spec.kappa, dt);
    const Eigen::VectorXcd free_fac =
        free_factor_folded(g, dt, spec.symmetric_indices);
    for (int s = 0; s < spec.n_substeps; ++s)
        apply_substep_batch(state.amplitudes.data(), g, 1,
                            scattering ? &vhalf : nullptr, free_fac);
    if (spec.eta != 0) {
        const Eigen::VectorXcd kick = unit_phases(kick_phases(g, spec.eta).values);
        rowwise_mul(state.amplitudes.data(), g.dim(), 1, kick);
    }
    return state;
}

PropagatorStream::PropagatorStream(PropagatorSpec spec, double t_max,
                                   std::size_t memory_budget_bytes)
    : spec_(std::move(spec)) {
    spec_.validate();
    if (t_max < 0.0)
        throw std::invalid_argument("accumulate: t_max must be >= 0");
    const Geometry& g = spec_.geometry;
    const std::size_t required = g.dim() * g.dim() * sizeof(std::complex<double>);
    if (required > memory_budget_bytes)
        throw MemoryBudgetError(
            "accumulate: dense propagator needs " + std::to_string(required) +
            " bytes (D = " + std::to_string(g.dim()) +
            "), over the configured budget of " +
            std::to_string(memory_budget_bytes) + " bytes");
    warn_if_aliased(spec_);

    substeps_per_sample_ = spec_.substeps_per_sample();
    const long long n_samples =
        static_cast<long long>(std::floor(t_max / spec_.sample_dt + 1e-9));
    total_substeps_ = n_samples * substeps_per_sample_;

    const bool scattering = spec_.kappa > 0.0 && g.n_small() > 0;
    const double dt = 1.0 / spec_.n_substeps;
    if (scattering) vhalf_ = scatter_half_factor(g, spec_.kappa, dt);
    free_fac_ = free_factor_folded(g, dt, spec_.symmetric_indices);
    if (spec_.eta != 0)
        kick_fac_ = unit_phases(kick_phases(g, spec_.eta).values);

    current_.time = 0.0;
    current_.matrix = Eigen::MatrixXcd::Identity(
        static_cast<Eigen::Index>(g.dim()), static_cast<Eigen::Index>(g.dim()));
}

bool PropagatorStream::next() {
    if (!started_) {
        started_ = true;
        return true;  // W(0) = identity
    }
    if (substep_index_ >= total_substeps_) return false;
    const Geometry& g = spec_.geometry;
    const Eigen::VectorXcd* vhalf = vhalf_.size() > 0 ? &vhalf_ : nullptr;
    for (int s = 0; s < substeps_per_sample_; ++s) {
        apply_substep_batch(current_.matrix.data(), g, g.dim(), vhalf,
                            free_fac_);
        ++substep_index_;
        if (substep_index_ % spec_.n_substeps == 0 && kick_fac_.size() > 0)
            rowwise_mul(current_.matrix.data(), g.dim(), g.dim(), kick_fac_);
    }
    current_.time = static_cast<double>(substep_index_) / spec_.n_substeps;
    return true;
}

void accumulate(const PropagatorSpec& spec, double t_max,
                std::size_t memory_budget_bytes,
                const std::function<void(const DensePropagator&)>& sink) {
    PropagatorStream stream(spec, t_max, memory_budget_bytes);
    while (stream.next()) sink(stream.current());
}

double max_unitarity_defect(const Eigen::MatrixXcd& w) {
    Eigen::MatrixXcd gram = w.adjoint() * w;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff();
}

double column_norm_drift(const Eigen::MatrixXcd& w) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < w.cols(); ++c)
        worst = std::max(worst, std::abs(w.col(c).norm() - 1.0));
    return worst;
}

}  // namespace catsim
