#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "catsim/geometry.hpp"
#include "catsim/state.hpp"

namespace catsim {

enum class FourierDirection { to_momentum, to_position };

// Unitary per-particle discrete Fourier transform. The position->momentum
// kernel is (1/sqrt(n)) exp(-2*pi*i*k*l/n); to_position uses the conjugate.
// Throws if the particle's representation tag does not match the source rep.
void transform(StateVector& state, const Geometry& g, int particle,
               FourierDirection dir);

// Transform every particle axis in turn (tags must all match the source rep).
void transform_all(StateVector& state, const Geometry& g,
                   FourierDirection dir);

namespace fft {

// DFT of length `len` along one strided tensor axis of a column-major
// (dim x batch) block, applied to every column. `scale` multiplies every
// output element; pass 1/sqrt(len) for the unitary normalization or fold
// the normalization elsewhere and pass 1. Sign convention: to_momentum
// uses exp(-2*pi*i*k*l/len).
void axis_transform(std::complex<double>* data, std::size_t dim,
                    std::size_t batch, int len, std::size_t stride,
                    FourierDirection dir, double scale);

// Same transform applied along the *column* index of a column-major
// (dim x dim) matrix, over the axis-0 component of that index: used to
// change the input basis of a propagator (right-multiplication by the
// axis-0 DFT matrix, which is symmetric).
void column_index_axis0_transform(Eigen::MatrixXcd& m, const Geometry& g,
                                  FourierDirection dir);

// All particle axes of every column, unnormalized (scale 1 on each axis).
void all_axes_unnormalized(std::complex<double>* data, const Geometry& g,
                           std::size_t batch, FourierDirection dir);

}  // namespace fft

}  // namespace catsim
