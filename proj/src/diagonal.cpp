#include "catsim/diagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace catsim {

DiagonalFactor free_phases(const Geometry& g, double dt, bool symmetric) {
    DiagonalFactor f;
    f.rep = Rep::momentum;
    f.values.resize(static_cast<Eigen::Index>(g.dim()));
    const double n_cat = static_cast<double>(g.n_cat());
    const double nu = static_cast<double>(g.nu());
    const std::size_t n_cat_sz = static_cast<std::size_t>(g.n_cat());

    const auto label = [symmetric](std::size_t l, int n) {
        double v = static_cast<double>(l);
        if (symmetric && l >= static_cast<std::size_t>(n) / 2)
            v -= static_cast<double>(n);
        return v;
    };

    // quadratic phase of one axis, reused across the outer indices
    std::vector<double> large(n_cat_sz);
    for (std::size_t l = 0; l < n_cat_sz; ++l) {
        const double v = label(l, g.n_cat());
        large[l] = v * v / n_cat;
    }

    for (std::size_t k = 0; k < g.dim(); ++k) {
        std::size_t rest = k / n_cat_sz;
        double q = large[k % n_cat_sz];
        for (int i = 0; i < g.n_small(); ++i) {
            const double li =
                label(rest % static_cast<std::size_t>(g.nu()), g.nu());
            q += li * li / nu;
            rest /= static_cast<std::size_t>(g.nu());
        }
        f.values[static_cast<Eigen::Index>(k)] = -M_PI * dt * q;
    }
    return f;
}

DiagonalFactor kick_phases(const Geometry& g, int eta) {
    DiagonalFactor f;
    f.rep = Rep::position;
    f.values.resize(static_cast<Eigen::Index>(g.dim()));
    const double n_cat = static_cast<double>(g.n_cat());
    for (std::size_t k = 0; k < g.dim(); ++k) {
        const double j0 = static_cast<double>(g.large_index(k));
        f.values[static_cast<Eigen::Index>(k)] =
            M_PI * static_cast<double>(eta) * j0 * j0 / n_cat;
    }
    return f;
}

DiagonalFactor scattering_counts(const Geometry& g) {
    DiagonalFactor f;
    f.rep = Rep::position;
    f.values.resize(static_cast<Eigen::Index>(g.dim()));
    const int n_cat = g.n_cat();
    const int site_step = n_cat / g.nu();
    for (std::size_t k = 0; k < g.dim(); ++k) {
        const MultiIndex idx = g.unflatten(k);
        int count = 0;
        for (int i = 0; i < g.n_small(); ++i) {
            const int site =
                (site_step * idx.small[static_cast<std::size_t>(i)] +
                 g.shifts()[static_cast<std::size_t>(i)]) % n_cat;
            if (site == idx.large) ++count;
        }
        f.values[static_cast<Eigen::Index>(k)] = static_cast<double>(count);
    }
    return f;
}

void apply_phases(StateVector& state, const Geometry& g,
                  const DiagonalFactor& f, double scale) {
    if (!state.all_in(f.rep))
        throw std::invalid_argument(
            "apply_phases: state representation does not match the factor");
    if (state.amplitudes.size() != f.values.size())
        throw std::invalid_argument("apply_phases: dimension mismatch");
    (void)g;
    for (Eigen::Index k = 0; k < f.values.size(); ++k) {
        const double a = scale * f.values[k];
        state.amplitudes[k] *= std::complex<double>(std::cos(a), std::sin(a));
    }
}

}  // namespace catsim
