#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <catsim/diagonal.hpp>
#include <catsim/errors.hpp>
#include <catsim/fourier.hpp>
#include <catsim/observables.hpp>
#include <catsim/propagator.hpp>
#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace catsim;

namespace {

StateVector random_state(const Geometry& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    StateVector s(g);
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
        s.amplitudes[i] = std::complex<double>(nd(rng), nd(rng));
    s.amplitudes.normalize();
    return s;
}

}  // namespace

TEST_CASE("free_phases values, identity, additivity") {
    const Geometry g = build_geometry(3, 0, 0);  // N = 8
    const DiagonalFactor f = free_phases(g, 1.0);
    CHECK(f.rep == Rep::momentum);
    CHECK(f.values[3] == doctest::Approx(-9.0 * M_PI / 8.0).epsilon(1e-14));

    const DiagonalFactor zero = free_phases(g, 0.0);
    for (Eigen::Index i = 0; i < zero.values.size(); ++i)
        CHECK(zero.values[i] == 0.0);

    const DiagonalFactor a = free_phases(g, 0.3);
    const DiagonalFactor b = free_phases(g, 1.4);
    const DiagonalFactor ab = free_phases(g, 1.7);
    for (Eigen::Index i = 0; i < ab.values.size(); ++i)
        CHECK(a.values[i] + b.values[i] ==
              doctest::Approx(ab.values[i]).epsilon(1e-12));

    // joint phases include every scatterer axis
    const Geometry gm = build_geometry(3, 1, 2);
    const DiagonalFactor fm = free_phases(gm, 1.0);
    const std::size_t k = gm.flatten({3, {1, 1}});
    CHECK(fm.values[static_cast<Eigen::Index>(k)] ==
          doctest::Approx(-M_PI * (9.0 / 8.0 + 0.5 + 0.5)).epsilon(1e-13));
}

TEST_CASE("kick_phases values") {
    const Geometry g8 = build_geometry(3, 0, 0);
    CHECK(kick_phases(g8, 1).values[3] ==
          doctest::Approx(9.0 * M_PI / 8.0).epsilon(1e-14));
    CHECK(kick_phases(g8, 1).rep == Rep::position);

    const DiagonalFactor off = kick_phases(g8, 0);
    for (Eigen::Index i = 0; i < off.values.size(); ++i)
        CHECK(off.values[i] == 0.0);

    // eta=1, N=4, j0=2: phase angle pi -> factor -1
    const Geometry g4 = build_geometry(2, 0, 0);
    const double angle = kick_phases(g4, 1).values[2];
    CHECK(std::cos(angle) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::sin(angle) == doctest::Approx(0.0).epsilon(1e-14));

    // negative eta gives the elliptic sign
    CHECK(kick_phases(g4, -1).values[1] ==
          doctest::Approx(-M_PI / 4.0).epsilon(1e-14));
}

TEST_CASE("scattering_counts") {
    const Geometry none = build_geometry(4, 1, 0);
    const DiagonalFactor z = scattering_counts(none);
    for (Eigen::Index i = 0; i < z.values.size(); ++i) CHECK(z.values[i] == 0.0);

    // nu = N, shift 0: coincidence iff j0 == j1
    const Geometry eq = build_geometry(3, 3, 1);
    const DiagonalFactor c = scattering_counts(eq);
    for (std::size_t k = 0; k < eq.dim(); ++k) {
        const MultiIndex idx = eq.unflatten(k);
        CHECK(c.values[static_cast<Eigen::Index>(k)] ==
              (idx.large == idx.small[0] ? 1.0 : 0.0));
    }

    // N=8, nu=2, s=[0]: j1=1 occupies site 4
    const Geometry g = build_geometry(3, 1, 1);
    const DiagonalFactor f = scattering_counts(g);
    CHECK(f.values[static_cast<Eigen::Index>(g.flatten({4, {1}}))] == 1.0);
    CHECK(f.values[static_cast<Eigen::Index>(g.flatten({3, {1}}))] == 0.0);
    CHECK(f.values[static_cast<Eigen::Index>(g.flatten({0, {0}}))] == 1.0);
}

TEST_CASE("scattering_counts against position-space enumeration") {
    // independent oracle: compare real-space positions as doubles
    const Geometry g = build_geometry(3, 1, 2, {0, 1});
    const DiagonalFactor f = scattering_counts(g);
    for (std::size_t k = 0; k < g.dim(); ++k) {
        const MultiIndex idx = g.unflatten(k);
        const double big = static_cast<double>(idx.large) / g.n_cat();
        int count = 0;
        for (int i = 0; i < g.n_small(); ++i) {
            double qi = static_cast<double>(idx.small[i]) / g.nu() +
                        static_cast<double>(g.shifts()[i]) / g.n_cat();
            qi -= std::floor(qi);
            if (std::abs(qi - big) < 1e-9) ++count;
        }
        CHECK(f.values[static_cast<Eigen::Index>(k)] == double(count));
    }
}

TEST_CASE("substep with kappa = 0 is the exact free flow") {
    const Geometry g = build_geometry(4, 1, 1);
    PropagatorSpec spec{g, 0, 0.0, 7, 1.0};
    const double dt = 0.37;
    StateVector s = random_state(g, 5);

    StateVector expect = s;
    transform_all(expect, g, FourierDirection::to_momentum);
    apply_phases(expect, g, free_phases(g, dt));
    transform_all(expect, g, FourierDirection::to_position);

    const StateVector got = substep(s, spec, dt);
    CHECK((got.amplitudes - expect.amplitudes).norm() < 1e-13);
}

TEST_CASE("substep norm preservation over 1e3 applications") {
    const Geometry g = build_geometry(4, 1, 1);
    PropagatorSpec spec{g, 0, 3.0, 8, 1.0};
    StateVector s = random_state(g, 9);
    for (int i = 0; i < 1000; ++i) s = substep(std::move(s), spec, 1.0 / 8);
    CHECK(std::abs(s.norm() - 1.0) < 1e-13);
}

TEST_CASE("substep rejects bad input") {
    const Geometry g = build_geometry(3, 0, 0);
    PropagatorSpec spec{g, 0, 0.0, 4, 1.0};
    StateVector s = random_state(g, 1);
    CHECK_THROWS_AS(substep(s, spec, 0.0), std::invalid_argument);
    transform_all(s, g, FourierDirection::to_momentum);
    CHECK_THROWS_AS(substep(s, spec, 0.5), std::invalid_argument);
}

TEST_CASE("spec validation") {
    const Geometry g = build_geometry(3, 0, 0);
    CHECK_THROWS_AS((PropagatorSpec{g, 0, -1.0, 4, 1.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((PropagatorSpec{g, 0, 0.0, 0, 1.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((PropagatorSpec{g, 0, 0.0, 4, 0.3}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS((PropagatorSpec{g, 0, 0.0, 4, 0.125}).validate(),
                    std::invalid_argument);  // samples off the substep grid
    CHECK_NOTHROW((PropagatorSpec{g, 0, 0.0, 4, 0.25}).validate());
    CHECK_NOTHROW((PropagatorSpec{g, 0, 0.0, 4, 1.0}).validate());
}

TEST_CASE("evolve_unit at N = 4 equals the direct kernel product") {
    const Geometry g = build_geometry(2, 0, 0);
    PropagatorSpec spec{g, 1, 0.0, 4, 1.0};

    // direct construction from the printed matrix elements:
    // U_free[k][l] = exp(-i*pi*l^2/N) * exp(2*pi*i*k*l/N) / sqrt(N),
    // K = diag(exp(i*pi*l^2/N)) (unitarized), U = K * U_free
    const int n = 4;
    Eigen::MatrixXcd ufree(n, n), kick = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const double a =
                -M_PI * l * l / n + 2.0 * M_PI * k * l / n;
            ufree(k, l) = std::complex<double>(std::cos(a), std::sin(a)) /
                          std::sqrt(static_cast<double>(n));
        }
    for (int l = 0; l < n; ++l) {
        const double a = M_PI * l * l / n;
        kick(l, l) = std::complex<double>(std::cos(a), std::sin(a));
    }
    const Eigen::MatrixXcd expect = kick * ufree;

    Eigen::MatrixXcd got(n, n);
    for (int col = 0; col < n; ++col) {
        StateVector s = position_delta(g, {col, {}});
        s = evolve_unit(std::move(s), spec);
        got.col(col) = s.amplitudes;
    }
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("evolve_unit with eta = 0 leaves momentum moduli unchanged") {
    const Geometry g = build_geometry(4, 0, 0);
    PropagatorSpec spec{g, 0, 0.0, 8, 1.0};
    StateVector s = random_state(g, 21);
    StateVector before = s;
    transform_all(before, g, FourierDirection::to_momentum);
    StateVector after = evolve_unit(std::move(s), spec);
    transform_all(after, g, FourierDirection::to_momentum);
    for (Eigen::Index i = 0; i < after.amplitudes.size(); ++i)
        CHECK(std::abs(after.amplitudes[i]) ==
              doctest::Approx(std::abs(before.amplitudes[i])).epsilon(1e-12));
}

TEST_CASE("unit step is unitary") {
    const Geometry g = build_geometry(4, 1, 1);
    PropagatorSpec spec{g, 1, 2.5, 8, 1.0};
    PropagatorStream st(spec, 1.0, 1ull << 24);
    st.next();
    st.next();
    CHECK(max_unitarity_defect(st.matrix()) < 1e-12);
}

TEST_CASE("accumulate starts from the identity and stays unitary") {
    const Geometry g = build_geometry(3, 1, 2);  // D = 32
    PropagatorSpec spec{g, 1, 1.5, 8, 0.5};
    bool first = true;
    int samples = 0;
    accumulate(spec, 20.0, 1ull << 24, [&](const DensePropagator& w) {
        if (first) {
            CHECK(w.time == 0.0);
            CHECK((w.matrix - Eigen::MatrixXcd::Identity(32, 32))
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
            first = false;
        }
        CHECK(max_unitarity_defect(w.matrix) < 1e-10);
        ++samples;
    });
    CHECK(samples == 41);
}

TEST_CASE("memory budget is enforced before allocation") {
    const Geometry g = build_geometry(8, 1, 3);  // D = 2048
    PropagatorSpec spec{g, 0, 0.0, 1, 1.0};
    try {
        PropagatorStream st(spec, 1.0, 1024);
        FAIL("expected MemoryBudgetError");
    } catch (const MemoryBudgetError& e) {
        const std::string what = e.what();
        CHECK(what.find(std::to_string(2048ull * 2048 * 16)) !=
              std::string::npos);
    }
}

TEST_CASE("kicked ACF is independent of the substep count when kappa = 0") {
    const Geometry g = build_geometry(4, 0, 0);
    std::vector<std::vector<double>> runs;
    for (int n : {1, 4, 16}) {
        PropagatorSpec spec{g, 1, 0.0, n, 1.0};
        std::vector<double> c;
        accumulate(spec, 8.0, 1ull << 24, [&](const DensePropagator& w) {
            c.push_back(acf(w, g));
        });
        runs.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < runs[0].size(); ++i) {
        CHECK(runs[0][i] == doctest::Approx(runs[1][i]).epsilon(1e-12));
        CHECK(runs[1][i] == doctest::Approx(runs[2][i]).epsilon(1e-12));
    }
}

TEST_CASE("split-step agrees with the exact diagonalized propagator") {
    const Geometry g = build_geometry(4, 1, 1);  // D = 32
    const double kappa = 2.0;
    const oracles::ExactPropagator exact(g, 1, kappa);
    PropagatorSpec spec{g, 1, kappa, 256, 0.5};
    double worst = 0.0;
    accumulate(spec, 3.0, 1ull << 24, [&](const DensePropagator& w) {
        const Eigen::MatrixXcd ref = exact.at(w.time);
        worst = std::max(worst, (w.matrix - ref).cwiseAbs().maxCoeff());
    });
    // n = 256 substeps at kappa = 2: splitting error well under 1e-4
    CHECK(worst < 1e-4);
}

TEST_CASE("self-convergence approaches second order") {
    const Geometry g = build_geometry(5, 1, 1);
    const StateVector init = random_state(g, 12345);
    auto evolve_with = [&](int n) {
        PropagatorSpec spec{g, 0, 8.0, n, 1.0};
        StateVector s = init;
        for (int i = 0; i < n; ++i) s = substep(std::move(s), spec, 1.0 / n);
        return s;
    };
    const StateVector ref = evolve_with(1024);
    const double e32 = (evolve_with(32).amplitudes - ref.amplitudes).norm();
    const double e64 = (evolve_with(64).amplitudes - ref.amplitudes).norm();
    const double e128 = (evolve_with(128).amplitudes - ref.amplitudes).norm();
    CHECK(std::log2(e32 / e64) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log2(e64 / e128) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("symmetric momentum labels differ only off the integer grid") {
    // kappa = 0: at integer times the two labelings agree up to a global
    // phase, which every trace functional ignores
    const Geometry g = build_geometry(4, 1, 1);
    PropagatorSpec raw{g, 1, 0.0, 8, 0.5};
    PropagatorSpec sym = raw;
    sym.symmetric_indices = true;

    std::vector<double> craw, csym;
    std::vector<double> traw;
    accumulate(raw, 3.0, 1ull << 24, [&](const DensePropagator& w) {
        craw.push_back(acf(w, g));
        traw.push_back(w.time);
    });
    accumulate(sym, 3.0, 1ull << 24, [&](const DensePropagator& w) {
        csym.push_back(acf(w, g));
    });
    bool differ_somewhere = false;
    for (std::size_t i = 0; i < craw.size(); ++i) {
        const bool integer_time =
            std::abs(traw[i] - std::round(traw[i])) < 1e-9;
        if (integer_time)
            CHECK(craw[i] == doctest::Approx(csym[i]).epsilon(1e-9));
        else if (std::abs(craw[i] - csym[i]) > 1e-6)
            differ_somewhere = true;
    }
    CHECK(differ_somewhere);
}
