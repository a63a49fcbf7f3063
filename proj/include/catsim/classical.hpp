#pragma once

namespace catsim::classical {

// Point on the unit two-torus; coordinates reduced mod 1.
struct TorusPoint {
    double q = 0.0;
    double p = 0.0;
};

// Free shear flow over time t: (q + p*t mod 1, p).
TorusPoint free_map(TorusPoint x, double t);

// Classical free-rotor position autocorrelation, sin(2*pi*t)/(4*pi*t) with
// the removable singularity at t = 0 evaluated as 1/2.
double classical_acf(double t);

// One period of the cat dynamics: free flow then kick, (q+p, q+2p) mod 1.
TorusPoint cat_map(TorusPoint x);

// Smallest tau >= 1 with [[1,1],[1,2]]^tau = identity mod N, by iterated
// modular matrix multiplication. For N = 2^j, j >= 2 this equals 3*2^(j-2).
int lattice_period(int n);

// ln((3+sqrt(5))/2), the Lyapunov exponent of the cat map.
double lyapunov();

}  // namespace catsim::classical
