#pragma once

#include "pointtrap/types.hpp"

// Depth optimization at fixed node height. The height constraint is eliminated
// by solving for b given a, reducing the problem to a 1D bracketed
// maximization; the objective is the closed-form depth ratio D/D_4rod.

namespace ptp {

struct OptimizationResult {
    double a_over_z0     = 0.0;
    double b_over_z0     = 0.0;
    double zmax_over_z0  = 0.0;
    double q_over_q4rod  = 0.0;
    double d_over_d4rod  = 0.0;
    bool converged       = false;
    int iterations       = 0;
};

/// Largest a (in z0 units) for which the height constraint is satisfiable:
/// z0 -> a/sqrt(2) as b -> a, and grows monotonically with b.
inline constexpr double max_a_over_z0 = 1.4142135623730951; // sqrt(2)

/// The unique b > a with z0(a, b) = z0_target. Throws std::invalid_argument
/// when a is outside the feasible range.
double height_constrained_b(double a, double z0_target);

/// Dimensionless single-rf depth ratio D/D_4rod for the given geometry.
double depth_ratio(const RingGeometry& geom);

/// Maximize D/D_4rod over (a, b) subject to z0(a, b) = z0_target.
OptimizationResult optimize_depth_at_height(double z0_target);

/// Same, with an explicit starting bracket on a/z0 (for robustness checks).
OptimizationResult optimize_depth_at_height(double z0_target, double a_lo_over_z0,
                                            double a_hi_over_z0);

} // namespace ptp
