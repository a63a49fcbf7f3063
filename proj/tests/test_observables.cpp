#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <catsim/observables.hpp>
#include <catsim/propagator.hpp>
#include <cmath>

#include "oracles.hpp"

using namespace catsim;

TEST_CASE("q_diag and p_diag at N = 4") {
    const Geometry g = build_geometry(2, 0, 0);
    const ObservableDiag q = q_diag(g);
    const ObservableDiag p = p_diag(g);
    const double eq[4] = {0.0, 1.0, 0.0, -1.0};
    for (int j = 0; j < 4; ++j) {
        CHECK(q.values[j] == doctest::Approx(eq[j]).epsilon(1e-15));
        CHECK(p.values[j] == doctest::Approx(-eq[j]).epsilon(1e-15));
    }
    CHECK(q.rep == Rep::position);
    CHECK(p.rep == Rep::momentum);
}

TEST_CASE("mean of q^2 over the basis is 1/2") {
    for (int e : {2, 3, 4, 6}) {
        const Geometry g = build_geometry(e, 0, 0);
        const ObservableDiag q = q_diag(g);
        const double mean =
            q.values.squaredNorm() / static_cast<double>(g.dim());
        CHECK(mean == doctest::Approx(0.5).epsilon(1e-13));
    }
    // constant across scatterer indices
    const Geometry g = build_geometry(4, 1, 2);
    const ObservableDiag q = q_diag(g);
    for (std::size_t k = 0; k < g.dim(); ++k)
        CHECK(q.values[static_cast<Eigen::Index>(k)] ==
              doctest::Approx(q.values[static_cast<Eigen::Index>(
                  k % static_cast<std::size_t>(g.n_cat()))]));
}

TEST_CASE("ACF at t = 0 is 1/2 (doubled: 1)") {
    for (int e : {2, 4}) {
        const Geometry g = build_geometry(e, 1, 1);
        DensePropagator w{0.0, Eigen::MatrixXcd::Identity(
                                   static_cast<Eigen::Index>(g.dim()),
                                   static_cast<Eigen::Index>(g.dim()))};
        CHECK(acf(w, g) == doctest::Approx(0.5).epsilon(1e-13));
    }
}

TEST_CASE("fast paths match brute-force dense traces on random unitaries") {
    const Geometry geoms[] = {build_geometry(3, 1, 1),    // D = 16
                              build_geometry(4, 1, 1),    // D = 32
                              build_geometry(4, 2, 1),    // D = 64
                              build_geometry(2, 1, 2)};   // D = 16
    int seed = 100;
    for (const Geometry& g : geoms) {
        for (int rep = 0; rep < 3; ++rep) {
            DensePropagator w{
                1.0, oracles::random_unitary(static_cast<int>(g.dim()),
                                             static_cast<unsigned>(++seed))};
            const OtocSample s = otoc_sample(w, g);
            CHECK(acf(w, g) ==
                  doctest::Approx(oracles::trace_acf(w.matrix, g))
                      .epsilon(1e-10));
            CHECK(s.o_plus ==
                  doctest::Approx(oracles::trace_otoc_plus(w.matrix, g))
                      .epsilon(1e-10));
            CHECK(s.o_minus ==
                  doctest::Approx(oracles::trace_otoc_minus(w.matrix, g))
                      .epsilon(1e-10));
            CHECK(s.o == doctest::Approx(oracles::trace_otoc(w.matrix, g))
                             .epsilon(1e-10));
            // nonnegativity and the shared-intermediate identity
            CHECK(s.o >= -1e-10);
            CHECK(s.o_plus >= 0.0);
            CHECK(s.o == doctest::Approx(s.o_plus - s.o_minus)
                             .epsilon(1e-12));
        }
    }
}

TEST_CASE("free particle OTOC constants") {
    const Geometry g = build_geometry(4, 0, 0);  // N = 16
    PropagatorSpec spec{g, 0, 0.0, 4, 1.0};
    accumulate(spec, 10.0, 1ull << 28, [&](const DensePropagator& w) {
        const OtocSample s = otoc_sample(w, g);
        CHECK(s.o_plus == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(s.o_minus ==
              doctest::Approx(0.5 * std::cos(2.0 * M_PI / 16)).epsilon(1e-12));
        CHECK(s.o == doctest::Approx(0.5 * (1.0 - std::cos(2.0 * M_PI / 16)))
                         .epsilon(1e-10));
    });
}

TEST_CASE("O_minus at N = 4 vanishes for the free particle") {
    const Geometry g = build_geometry(2, 0, 0);
    PropagatorSpec spec{g, 0, 0.0, 2, 1.0};
    accumulate(spec, 3.0, 1ull << 20, [&](const DensePropagator& w) {
        CHECK(otoc_sample(w, g).o_minus ==
              doctest::Approx(0.0).epsilon(1e-12));
    });
}

TEST_CASE("O_plus(0) = 1/2 for N >= 5") {
    for (int e : {3, 4, 5}) {
        const Geometry g = build_geometry(e, 0, 0);
        DensePropagator w{0.0, Eigen::MatrixXcd::Identity(
                                   static_cast<Eigen::Index>(g.dim()),
                                   static_cast<Eigen::Index>(g.dim()))};
        CHECK(otoc_sample(w, g).o_plus == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("free-particle anti-periodicity of the ACF at N = 32") {
    const Geometry g = build_geometry(5, 0, 0);
    PropagatorSpec spec{g, 0, 0.0, 1, 1.0};
    std::vector<double> c;
    accumulate(spec, 64.0, 1ull << 24, [&](const DensePropagator& w) {
        c.push_back(acf(w, g));
    });
    REQUIRE(c.size() == 65);
    for (int t = 0; t <= 32; ++t)
        CHECK(c[static_cast<std::size_t>(t + 32)] ==
              doctest::Approx(-c[static_cast<std::size_t>(t)]).epsilon(1e-10));
}

TEST_CASE("cat ACF structure at N = 16: resurgence at the lattice period") {
    const Geometry g = build_geometry(4, 0, 0);
    PropagatorSpec spec{g, 1, 0.0, 1, 1.0};
    std::vector<double> c2;
    accumulate(spec, 12.0, 1ull << 24, [&](const DensePropagator& w) {
        c2.push_back(2.0 * acf(w, g));
    });
    CHECK(std::abs(c2[12]) > 0.9);
    for (int t = 1; t <= 11; ++t) CHECK(std::abs(c2[static_cast<std::size_t>(t)]) < 0.05);
}

TEST_CASE("environment decouples when kappa = 0") {
    const Geometry g1 = build_geometry(4, 0, 0);
    const Geometry g2 = build_geometry(4, 1, 2);
    PropagatorSpec s1{g1, 1, 0.0, 4, 1.0};
    PropagatorSpec s2{g2, 1, 0.0, 4, 1.0};
    std::vector<double> a1, a2, o1, o2;
    accumulate(s1, 6.0, 1ull << 26, [&](const DensePropagator& w) {
        a1.push_back(acf(w, g1));
        o1.push_back(otoc_sample(w, g1).o);
    });
    accumulate(s2, 6.0, 1ull << 26, [&](const DensePropagator& w) {
        a2.push_back(acf(w, g2));
        o2.push_back(otoc_sample(w, g2).o);
    });
    for (std::size_t i = 0; i < a1.size(); ++i) {
        CHECK(a1[i] == doctest::Approx(a2[i]).epsilon(1e-10));
        CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-10));
    }
}
