#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pointtrap/characterize.hpp"
#include "pointtrap/optimize.hpp"
#include "test_util.hpp"

using namespace ptp;

TEST_CASE("depth-optimal design at unit height") {
    const OptimizationResult r = optimize_depth_at_height(1.0);
    CHECK(r.converged);
    CHECK(r.a_over_z0 == doctest::Approx(0.651679).epsilon(1e-4));
    CHECK(r.b_over_z0 == doctest::Approx(3.57668).epsilon(1e-4));
    CHECK(r.zmax_over_z0 == doctest::Approx(1.957965).epsilon(1e-4));
    CHECK(r.q_over_q4rod == doctest::Approx(0.4715652).epsilon(1e-4));
    CHECK(r.d_over_d4rod == doctest::Approx(0.0197034).epsilon(1e-4));
    // Tighter pins on the frozen optimum, as a regression guard.
    CHECK(r.a_over_z0 == doctest::Approx(0.6516794629).epsilon(1e-6));
    CHECK(r.d_over_d4rod == doctest::Approx(0.01970343706672).epsilon(1e-9));
}

TEST_CASE("height constraint inversion round-trips") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> ua(0.05, 1.35);
    std::uniform_real_distribution<double> uz(1e-5, 1e-2);
    for (int i = 0; i < 50; ++i) {
        const double z0 = uz(rng);
        const double a = ua(rng) * z0;
        const double b = height_constrained_b(a, z0);
        CHECK(b > a);
        CHECK(trap_height({a, b}) == doctest::Approx(z0).epsilon(1e-12));
    }
}

TEST_CASE("infeasible inner radius is rejected") {
    CHECK_THROWS_AS(height_constrained_b(1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(height_constrained_b(max_a_over_z0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(height_constrained_b(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(height_constrained_b(0.5, -1.0), std::invalid_argument);
    CHECK_NOTHROW(height_constrained_b(1.41, 1.0));
}

TEST_CASE("optimum is scale invariant") {
    const OptimizationResult big = optimize_depth_at_height(1.0);
    const OptimizationResult small = optimize_depth_at_height(1e-6);
    CHECK(small.a_over_z0 == doctest::Approx(big.a_over_z0).epsilon(1e-8));
    CHECK(small.b_over_z0 == doctest::Approx(big.b_over_z0).epsilon(1e-8));
    CHECK(small.d_over_d4rod == doctest::Approx(big.d_over_d4rod).epsilon(1e-8));
}

TEST_CASE("optimum is independent of the starting bracket") {
    const OptimizationResult ref = optimize_depth_at_height(1.0);
    const double brackets[][2] = {
        {0.1, 1.3}, {0.3, 1.0}, {0.5, 0.9}, {0.6, 0.7}, {0.2, 1.39}};
    for (const auto& br : brackets) {
        const OptimizationResult r = optimize_depth_at_height(1.0, br[0], br[1]);
        CHECK(r.converged);
        CHECK(r.a_over_z0 == doctest::Approx(ref.a_over_z0).epsilon(1e-7));
        CHECK(r.d_over_d4rod == doctest::Approx(ref.d_over_d4rod).epsilon(1e-10));
    }
}

TEST_CASE("perturbing the optimal design along the constraint reduces depth") {
    const OptimizationResult r = optimize_depth_at_height(1.0);
    const double d_opt = depth_ratio({r.a_over_z0, r.b_over_z0});
    CHECK(d_opt == doctest::Approx(r.d_over_d4rod).epsilon(1e-10));
    for (double da : {-0.01, 0.01, -0.05, 0.05}) {
        const double a = r.a_over_z0 * (1.0 + da);
        const double b = height_constrained_b(a, 1.0);
        CHECK(depth_ratio({a, b}) < d_opt);
    }
}

TEST_CASE("objective matches the full characterization at the optimum") {
    const OptimizationResult r = optimize_depth_at_height(1e-3);
    TrapConfig c = ptt::reference_config();
    c.geometry = {r.a_over_z0 * 1e-3, r.b_over_z0 * 1e-3};
    const TrapCharacteristics tc = characterize_trap(c);
    CHECK(tc.depth / tc.d_4rod == doctest::Approx(r.d_over_d4rod).epsilon(1e-9));
    CHECK(tc.q / tc.q_4rod == doctest::Approx(r.q_over_q4rod).epsilon(1e-9));
    CHECK(tc.z_max == doctest::Approx(r.zmax_over_z0 * 1e-3).epsilon(1e-9));
}
