#pragma once

#include <cstddef>
#include <vector>

namespace catsim {

// Multi-index into the joint lattice: `large` indexes the big particle
// (0..N-1), `small[i]` the i-th scatterer (0..nu-1).
struct MultiIndex {
    int large = 0;
    std::vector<int> small;
};

// Joint configuration lattice of one large particle of Hilbert dimension N
// on a ring and I scatterers of dimension nu each, nu | N, both powers of
// two. The flattened dimension is D = N * nu^I with the large-particle
// index varying fastest. Shift s_i places the origin of the i-th scatterer
// sublattice at s_i / N; valid range is [0, N/nu).
class Geometry {
public:
    Geometry(int n_cat_exp, int nu_exp, int n_small,
             std::vector<int> shifts = {});

    int n_cat() const { return n_cat_; }
    int nu() const { return nu_; }
    int n_small() const { return n_small_; }
    int n_particles() const { return n_small_ + 1; }
    const std::vector<int>& shifts() const { return shifts_; }
    std::size_t dim() const { return dim_; }

    // Axis length of a particle's factor space: N for particle 0, nu after.
    int axis_len(int particle) const { return particle == 0 ? n_cat_ : nu_; }
    std::size_t axis_stride(int particle) const;

    std::size_t flatten(const MultiIndex& idx) const;
    MultiIndex unflatten(std::size_t k) const;

    // Large-particle component of a flattened index (the fast axis).
    int large_index(std::size_t k) const {
        return static_cast<int>(k % static_cast<std::size_t>(n_cat_));
    }

    bool operator==(const Geometry& other) const;

private:
    int n_cat_;
    int nu_;
    int n_small_;
    std::vector<int> shifts_;
    std::size_t dim_;
};

// Named constructor mirroring the exponent-based configuration surface:
// N = 2^n_cat_exp, nu = 2^nu_exp. An empty shift list means all zeros.
Geometry build_geometry(int n_cat_exp, int nu_exp, int n_small,
                        std::vector<int> shifts = {});

}  // namespace catsim
