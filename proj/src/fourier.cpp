#include "catsim/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace catsim {

namespace fft {

namespace {

struct Tables {
    std::vector<std::complex<double>> tw_fwd;  // exp(-2*pi*i*j/n)
    std::vector<std::complex<double>> tw_inv;  // exp(+2*pi*i*j/n)
    std::vector<int> rev;
};

const Tables& tables_for(int n) {
    static std::mutex mu;
    static std::map<int, Tables> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Tables t;
    t.tw_fwd.resize(static_cast<std::size_t>(n / 2));
    t.tw_inv.resize(static_cast<std::size_t>(n / 2));
    for (int j = 0; j < n / 2; ++j) {
        const double a = -2.0 * M_PI * static_cast<double>(j) / n;
        t.tw_fwd[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
        t.tw_inv[static_cast<std::size_t>(j)] = {std::cos(a), -std::sin(a)};
    }
    t.rev.resize(static_cast<std::size_t>(n));
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (1 << b)) r |= 1 << (bits - 1 - b);
        t.rev[static_cast<std::size_t>(i)] = r;
    }
    return cache.emplace(n, std::move(t)).first->second;
}

// In-place radix-2 on one contiguous line.
void fft_line(std::complex<double>* a, int n,
              const std::complex<double>* tw, const int* rev) {
    for (int i = 0; i < n; ++i) {
        const int r = rev[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    for (int m = 2; m <= n; m <<= 1) {
        const int half = m >> 1;
        const int step = n / m;
        for (int k = 0; k < n; k += m) {
            for (int j = 0; j < half; ++j) {
                const std::complex<double> w = tw[j * step];
                const std::complex<double> u = a[k + j];
                const std::complex<double> v = a[k + j + half] * w;
                a[k + j] = u + v;
                a[k + j + half] = u - v;
            }
        }
    }
}

// In-place radix-2 over an axis of length n whose consecutive values are
// `stride` elements apart; the stride run is contiguous, so every butterfly
// sweeps a vectorizable block of `stride` elements.
void fft_axis_blocked(std::complex<double>* base, int n, std::size_t stride,
                      const std::complex<double>* tw, const int* rev) {
    for (int i = 0; i < n; ++i) {
        const int r = rev[i];
        if (i < r)
            std::swap_ranges(base + static_cast<std::size_t>(i) * stride,
                             base + static_cast<std::size_t>(i) * stride + stride,
                             base + static_cast<std::size_t>(r) * stride);
    }
    for (int m = 2; m <= n; m <<= 1) {
        const int half = m >> 1;
        const int step = n / m;
        for (int k = 0; k < n; k += m) {
            for (int j = 0; j < half; ++j) {
                const std::complex<double> w = tw[j * step];
                std::complex<double>* u =
                    base + static_cast<std::size_t>(k + j) * stride;
                std::complex<double>* v =
                    base + static_cast<std::size_t>(k + j + half) * stride;
                if (j == 0) {
                    for (std::size_t t = 0; t < stride; ++t) {
                        const std::complex<double> uu = u[t];
                        const std::complex<double> vv = v[t];
                        u[t] = uu + vv;
                        v[t] = uu - vv;
                    }
                } else {
                    for (std::size_t t = 0; t < stride; ++t) {
                        const std::complex<double> uu = u[t];
                        const std::complex<double> vv = v[t] * w;
                        u[t] = uu + vv;
                        v[t] = uu - vv;
                    }
                }
            }
        }
    }
}

void scale_block(std::complex<double>* data, std::size_t count, double scale) {
    for (std::size_t i = 0; i < count; ++i) data[i] *= scale;
}

}  // namespace

void axis_transform(std::complex<double>* data, std::size_t dim,
                    std::size_t batch, int len, std::size_t stride,
                    FourierDirection dir, double scale) {
    if (len == 1) return;
    if ((len & (len - 1)) != 0)
        throw std::invalid_argument("axis_transform: length must be a power of two");
    const Tables& t = tables_for(len);
    const std::complex<double>* tw =
        dir == FourierDirection::to_momentum ? t.tw_fwd.data() : t.tw_inv.data();
    const std::size_t block = stride * static_cast<std::size_t>(len);
    const std::size_t n_blocks = dim / block;

#pragma omp parallel for schedule(static)
    for (long long c = 0; c < static_cast<long long>(batch); ++c) {
        std::complex<double>* col = data + static_cast<std::size_t>(c) * dim;
        for (std::size_t b = 0; b < n_blocks; ++b) {
            std::complex<double>* base = col + b * block;
            if (stride == 1)
                fft_line(base, len, tw, t.rev.data());
            else
                fft_axis_blocked(base, len, stride, tw, t.rev.data());
        }
        if (scale != 1.0) scale_block(col, dim, scale);
    }
}

void all_axes_unnormalized(std::complex<double>* data, const Geometry& g,
                           std::size_t batch, FourierDirection dir) {
    for (int p = 0; p < g.n_particles(); ++p)
        axis_transform(data, g.dim(), batch, g.axis_len(p), g.axis_stride(p),
                       dir, 1.0);
}

void column_index_axis0_transform(Eigen::MatrixXcd& m, const Geometry& g,
                                  FourierDirection dir) {
    const int n = g.n_cat();
    if (n == 1) return;
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    const Tables& t = tables_for(n);
    const std::complex<double>* tw =
        dir == FourierDirection::to_momentum ? t.tw_fwd.data() : t.tw_inv.data();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const std::size_t n_groups = static_cast<std::size_t>(m.cols()) /
                                 static_cast<std::size_t>(n);

    // Column index c = c0 + n*group; gather the c0-line for each row.
#pragma omp parallel
    {
        std::vector<std::complex<double>> line(static_cast<std::size_t>(n));
#pragma omp for schedule(static) collapse(2)
        for (long long grp = 0; grp < static_cast<long long>(n_groups); ++grp) {
            for (long long r = 0; r < static_cast<long long>(dim); ++r) {
                std::complex<double>* base =
                    m.data() + static_cast<std::size_t>(r) +
                    static_cast<std::size_t>(grp) * static_cast<std::size_t>(n) * dim;
                for (int c0 = 0; c0 < n; ++c0)
                    line[static_cast<std::size_t>(c0)] =
                        base[static_cast<std::size_t>(c0) * dim];
                fft_line(line.data(), n, tw, t.rev.data());
                for (int c0 = 0; c0 < n; ++c0)
                    base[static_cast<std::size_t>(c0) * dim] =
                        line[static_cast<std::size_t>(c0)] * scale;
            }
        }
    }
}

}  // namespace fft

void transform(StateVector& state, const Geometry& g, int particle,
               FourierDirection dir) {
    if (particle < 0 || particle >= g.n_particles())
        throw std::out_of_range("transform: particle index out of range");
    const Rep want =
        dir == FourierDirection::to_momentum ? Rep::position : Rep::momentum;
    if (state.reps[static_cast<std::size_t>(particle)] != want)
        throw std::invalid_argument(
            "transform: particle " + std::to_string(particle) +
            " is not in the source representation");
    const int len = g.axis_len(particle);
    fft::axis_transform(state.amplitudes.data(), g.dim(), 1, len,
                        g.axis_stride(particle), dir,
                        1.0 / std::sqrt(static_cast<double>(len)));
    state.reps[static_cast<std::size_t>(particle)] =
        dir == FourierDirection::to_momentum ? Rep::momentum : Rep::position;
}

void transform_all(StateVector& state, const Geometry& g,
                   FourierDirection dir) {
    for (int p = 0; p < g.n_particles(); ++p) transform(state, g, p, dir);
}

StateVector position_delta(const Geometry& g, const MultiIndex& idx) {
    StateVector s(g);
    s.amplitudes[static_cast<Eigen::Index>(g.flatten(idx))] = 1.0;
    return s;
}

StateVector uniform_state(const Geometry& g) {
    StateVector s(g);
    const double a = 1.0 / std::sqrt(static_cast<double>(g.dim()));
    s.amplitudes.setConstant(a);
    return s;
}

}  // namespace catsim
