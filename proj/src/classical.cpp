#include "catsim/classical.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace catsim::classical {

namespace {

double mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // guard against floor rounding at the boundary
    return r;
}

}  // namespace

TorusPoint free_map(TorusPoint x, double t) {
    return {mod1(x.q + x.p * t), mod1(x.p)};
}

double classical_acf(double t) {
    const double x = 2.0 * M_PI * t;
    if (std::abs(x) < 1e-8) return 0.5 * (1.0 - x * x / 6.0);
    return std::sin(x) / (2.0 * x);
}

TorusPoint cat_map(TorusPoint x) {
    return {mod1(x.q + x.p), mod1(x.q + 2.0 * x.p)};
}

int lattice_period(int n) {
    if (n < 2) throw std::invalid_argument("lattice_period: N must be >= 2");
    // entries of [[1,1],[1,2]]^tau mod N
    std::int64_t a = 1, b = 1, c = 1, d = 2;
    const std::int64_t m = n;
    for (int tau = 1; tau <= 8 * n; ++tau) {
        if (a % m == 1 % m && b % m == 0 && c % m == 0 && d % m == 1 % m)
            return tau;
        const std::int64_t na = (a + b) % m, nb = (a + 2 * b) % m;
        const std::int64_t nc = (c + d) % m, nd = (c + 2 * d) % m;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    throw std::runtime_error("lattice_period: no period found (unexpected)");
}

double lyapunov() { return std::log((3.0 + std::sqrt(5.0)) / 2.0); }

}  // namespace catsim::classical
