#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pointtrap/characterize.hpp"
#include "test_util.hpp"

using namespace ptp;

TEST_CASE("node height for the published electrode dimensions") {
    CHECK(trap_height({650e-6, 3.24e-3}) ==
          doctest::Approx(958.226e-6).epsilon(1e-5));
    CHECK(trap_height(ptt::optimal_geometry(1e-3)) ==
          doctest::Approx(1e-3).epsilon(1e-5));
    CHECK(trap_height({650e-6, 3.24e-3}, 0.52) ==
          doctest::Approx(599.30e-6).epsilon(1e-4));
}

TEST_CASE("node and turning point are the stationary points of the axial field") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ueps(-0.4, 0.4);
    for (int i = 0; i < 50; ++i) {
        const RingGeometry geom = ptt::random_geometry(rng);
        const double eps = ueps(rng);
        const double z0p = trap_height(geom, eps);
        const double zmax = turning_point(geom, eps);
        CHECK(zmax > z0p);
        // The node is a zero of the on-axis field d(kappa)/dz...
        const double f = geometric_factor(geom, eps);
        CHECK(std::abs(kappa_axial_dz(geom, eps, z0p)) < 1e-9 * f * z0p);
        // ...and the turning point is a zero of its derivative.
        CHECK(std::abs(kappa_axial_d2z(geom, eps, zmax)) < 1e-6 * f / zmax * z0p);
        // Sign change brackets confirm both are genuine crossings.
        CHECK(kappa_axial_dz(geom, eps, 0.999 * z0p) *
                  kappa_axial_dz(geom, eps, 1.001 * z0p) < 0.0);
        CHECK(kappa_axial_d2z(geom, eps, 0.999 * zmax) *
                  kappa_axial_d2z(geom, eps, 1.001 * zmax) < 0.0);
    }
}

TEST_CASE("turning point at the depth-optimal geometry") {
    CHECK(turning_point(ptt::optimal_geometry(1e-3)) ==
          doctest::Approx(1.957965e-3).epsilon(1e-5));
}

TEST_CASE("geometric factor: value, scaling, and curvature oracle") {
    const RingGeometry geom = ptt::optimal_geometry();
    const double f = geometric_factor(geom);
    CHECK(f == doctest::Approx(0.4715653198987552).epsilon(1e-8));
    // f has units of 1/length^2.
    CHECK(geometric_factor({2.0 * geom.a, 2.0 * geom.b}) ==
          doctest::Approx(f / 4.0).epsilon(1e-12));
    // Independent oracle: f equals -d^2 kappa/dz^2 at the node (5-point FD).
    const double z0 = trap_height(geom, 0.0);
    const double h = 1e-4 * z0;
    const auto k = [&](double z) { return kappa_axial(geom, 0.0, z); };
    const double d2 = (-k(z0 - 2 * h) + 16.0 * k(z0 - h) - 30.0 * k(z0) +
                       16.0 * k(z0 + h) - k(z0 + 2 * h)) / (12.0 * h * h);
    CHECK(f == doctest::Approx(-d2).epsilon(1e-8));
    // The generalized factor reduces to the closed form at epsilon = 0.
    CHECK(geometric_factor(geom, 0.0) == f);
    CHECK(geometric_factor(geom, 0.3) ==
          doctest::Approx(-kappa_axial_d2z(geom, 0.3, trap_height(geom, 0.3)))
              .epsilon(1e-12));
}

TEST_CASE("stability parameter and secular frequencies at the reference drive") {
    const TrapConfig c = ptt::reference_config();
    CHECK(mathieu_q(c) == doctest::Approx(0.122913).epsilon(1e-4));
    const SecularFrequencies sf = secular_frequencies(c);
    CHECK(sf.omega_z / (2.0 * constants::pi) ==
          doctest::Approx(347.65e3).epsilon(1e-3));
    // Radial-to-axial ratio of 1/2, with the radial value coming from a
    // quadratic fit to the numerically integrated pseudopotential.
    CHECK(sf.omega_rho / sf.omega_z == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("secular frequencies scale linearly with drive amplitude") {
    TrapConfig c = ptt::reference_config();
    const SecularFrequencies sf1 = secular_frequencies(c);
    const double q1 = mathieu_q(c);
    c.drive.v_rf *= 2.0;
    const SecularFrequencies sf2 = secular_frequencies(c);
    CHECK(mathieu_q(c) == doctest::Approx(2.0 * q1).epsilon(1e-12));
    CHECK(sf2.omega_z == doctest::Approx(2.0 * sf1.omega_z).epsilon(1e-12));
    CHECK(sf2.omega_rho == doctest::Approx(2.0 * sf1.omega_rho).epsilon(1e-9));
}

TEST_CASE("trap depth and four-rod reference values") {
    const TrapConfig c = ptt::reference_config();
    CHECK(trap_depth(c) / constants::ev == doctest::Approx(0.19259).epsilon(1e-3));
    const FourRodReferences ref = four_rod_references(c);
    CHECK(ref.d_4rod / constants::ev == doctest::Approx(9.774).epsilon(1e-3));
    CHECK(mathieu_q(c) / ref.q_4rod ==
          doctest::Approx(0.4715653198987552).epsilon(1e-6));
    CHECK(trap_depth(c) / ref.d_4rod ==
          doctest::Approx(0.0197034).epsilon(1e-4));
    // Halving the length scale quadruples the four-rod q.
    TrapConfig half = c;
    half.geometry = {c.geometry.a / 2.0, c.geometry.b / 2.0};
    CHECK(four_rod_references(half).q_4rod ==
          doctest::Approx(4.0 * ref.q_4rod).epsilon(1e-10));
}

TEST_CASE("upper barrier equals the on-axis pseudopotential maximum") {
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> ueps(-0.2, 0.5);
    for (int i = 0; i < 20; ++i) {
        TrapConfig c = ptt::reference_config();
        c.geometry = ptt::random_geometry(rng);
        c.drive.epsilon = ueps(rng);
        const double z0p = trap_height(c.geometry, c.drive.epsilon);
        const AxialBarriers bars = axial_barriers(c);
        CHECK(bars.upper ==
              doctest::Approx(axial_pseudopotential(
                                  c, turning_point(c.geometry, c.drive.epsilon)))
                  .epsilon(1e-12));
        // Brute-force scan above the node never exceeds the reported barrier.
        double best = 0.0;
        for (int j = 1; j <= 2000; ++j)
            best = std::max(best,
                            axial_pseudopotential(c, z0p * (1.0 + 9.0 * j / 2000.0)));
        CHECK(best <= bars.upper * (1.0 + 1e-9));
        CHECK(best > 0.95 * bars.upper);
        // Same for the surface-side barrier below the node.
        double best_lo = 0.0;
        for (int j = 1; j < 2000; ++j)
            best_lo = std::max(best_lo,
                               axial_pseudopotential(c, z0p * j / 2000.0));
        CHECK(best_lo <= bars.lower * (1.0 + 1e-9));
        CHECK(bars.lower <= best_lo * 1.05 + 1e-30);
        CHECK(trap_depth(c) == doctest::Approx(std::min(bars.lower, bars.upper)));
    }
}

TEST_CASE("depth is positive for any valid geometry") {
    std::mt19937 rng(99);
    for (int i = 0; i < 100; ++i) {
        TrapConfig c = ptt::reference_config();
        c.geometry = ptt::random_geometry(rng);
        CHECK(trap_depth(c) > 0.0);
    }
}

TEST_CASE("metric scaling with geometry size at fixed drive") {
    const double s = 3.0;
    TrapConfig c1 = ptt::reference_config();
    TrapConfig c2 = c1;
    c2.geometry = {s * c1.geometry.a, s * c1.geometry.b};
    CHECK(trap_height(c2.geometry) ==
          doctest::Approx(s * trap_height(c1.geometry)).epsilon(1e-12));
    CHECK(mathieu_q(c2) == doctest::Approx(mathieu_q(c1) / (s * s)).epsilon(1e-10));
    CHECK(trap_depth(c2) == doctest::Approx(trap_depth(c1) / (s * s)).epsilon(1e-9));
}

TEST_CASE("dual-drive validity window") {
    const RingGeometry geom{650e-6, 3.24e-3};
    const double eps_c = epsilon_critical(geom);
    CHECK(eps_c == doctest::Approx(1.0 - 650.0 / 3240.0).epsilon(1e-14));
    CHECK_NOTHROW(trap_height(geom, eps_c - 1e-6));
    CHECK_THROWS_AS(trap_height(geom, eps_c), NoTrapError);
    CHECK_THROWS_AS(trap_height(geom, eps_c + 0.05), NoTrapError);
    // Strong out-of-phase center drive also destroys the node.
    const double ba = geom.b / geom.a;
    CHECK_THROWS_AS(trap_height(geom, 1.0 - ba * ba - 0.5), NoTrapError);
}

TEST_CASE("drive-ratio sweep: monotonic node, range, and barrier crossover") {
    const TrapConfig c = ptt::experiment_config();
    const double z0 = trap_height(c.geometry);
    const auto sweep = epsilon_sweep(c, 0.0, 0.75, 76);
    REQUIRE(sweep.size() == 76);

    CHECK(sweep.front().z0_prime == doctest::Approx(z0).epsilon(1e-12));
    CHECK(sweep.front().q_prime == doctest::Approx(mathieu_q(c)).epsilon(1e-12));

    for (std::size_t i = 1; i < sweep.size(); ++i) {
        REQUIRE(sweep[i].valid); // 0.75 < critical value of ~0.799
        CHECK(sweep[i].z0_prime < sweep[i - 1].z0_prime);
        CHECK(sweep[i].depth_prime > 0.0);
    }
    // Out-of-phase center drive pushes the node up instead.
    const auto neg = epsilon_sweep(c, -0.5, 0.0, 2);
    CHECK(neg.front().z0_prime > z0);

    // Raising the drive ratio to 0.7 lowers the node by ~0.61 of the height
    // for this geometry (~0.58 for the depth-optimal one, checked below).
    const double range = sweep.front().z0_prime - sweep[70].z0_prime;
    CHECK(sweep[70].epsilon == doctest::Approx(0.70).epsilon(1e-12));
    CHECK(range == doctest::Approx(z0 - trap_height(c.geometry, 0.7)).epsilon(1e-12));
    CHECK(range / z0 == doctest::Approx(0.6134).epsilon(1e-3));
    const RingGeometry opt = ptt::optimal_geometry();
    CHECK((trap_height(opt) - trap_height(opt, 0.7)) / trap_height(opt) ==
          doctest::Approx(0.58094).epsilon(1e-3));

    // The effective depth becomes surface-limited near 0.69.
    std::size_t cross = 0;
    for (std::size_t i = 0; i < sweep.size(); ++i)
        if (sweep[i].depth_limited_below) { cross = i; break; }
    REQUIRE(cross > 0);
    CHECK_FALSE(sweep[cross - 1].depth_limited_below);
    CHECK(sweep[cross].epsilon > 0.64);
    CHECK(sweep[cross].epsilon < 0.75);

    // Entries beyond the critical ratio are flagged, not fatal.
    const auto wide = epsilon_sweep(c, 0.78, 0.82, 5);
    CHECK(wide.front().valid);
    CHECK_FALSE(wide.back().valid);
}

TEST_CASE("characterize_trap bundles the individual metrics") {
    const TrapConfig c = ptt::experiment_config();
    const TrapCharacteristics tc = characterize_trap(c);
    CHECK(tc.z0 == trap_height(c.geometry));
    CHECK(tc.z_max == turning_point(c.geometry));
    CHECK(tc.q == mathieu_q(c));
    CHECK(tc.depth == trap_depth(c));
    CHECK(tc.epsilon_used == 0.0);
    CHECK(tc.omega_rho / tc.omega_z == doctest::Approx(0.5).epsilon(0.01));
    CHECK(tc.q_4rod == four_rod_references(c).q_4rod);
}
