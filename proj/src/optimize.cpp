#include "pointtrap/optimize.hpp"

#include <cmath>
#include <limits>

#include "pointtrap/characterize.hpp"
#include "pointtrap/fieldcore.hpp"

namespace ptp {

namespace {
constexpr double kGolden = 0.6180339887498949;

double node_height_sq(double a, double b) {
    const double a43 = std::pow(a, 4.0 / 3.0), b43 = std::pow(b, 4.0 / 3.0);
    return a43 * b43 / (std::pow(a, 2.0 / 3.0) + std::pow(b, 2.0 / 3.0));
}
} // namespace

double height_constrained_b(double a, double z0_target) {
    if (!(a > 0.0) || !(z0_target > 0.0))
        throw std::invalid_argument("height_constrained_b: require a, z0_target > 0");
    const double target_sq = z0_target * z0_target;
    // z0 increases monotonically with b from a/sqrt(2) (b -> a) to infinity.
    if (!(a < max_a_over_z0 * z0_target))
        throw std::invalid_argument(
            "height_constrained_b: a >= sqrt(2) z0_target, constraint infeasible");

    double lo = a * (1.0 + 1e-12);
    double hi = std::max(2.0 * a, z0_target);
    while (node_height_sq(a, hi) < target_sq) {
        hi *= 2.0;
        if (hi > 1e12 * z0_target)
            throw std::invalid_argument("height_constrained_b: no bracket found");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (node_height_sq(a, mid) < target_sq)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    return 0.5 * (lo + hi);
}

double depth_ratio(const RingGeometry& geom) {
    geom.validate();
    const double z0 = trap_height(geom);
    const double g = kappa_axial_dz(geom, 0.0, turning_point(geom));
    return z0 * z0 * g * g;
}

OptimizationResult optimize_depth_at_height(double z0_target, double a_lo_over_z0,
                                            double a_hi_over_z0) {
    if (!(z0_target > 0.0))
        throw std::invalid_argument("optimize_depth_at_height: z0_target > 0 required");
    if (!(a_lo_over_z0 > 0.0) || !(a_hi_over_z0 > a_lo_over_z0) ||
        !(a_hi_over_z0 < max_a_over_z0))
        throw std::invalid_argument("optimize_depth_at_height: bad bracket");

    const auto objective = [&](double a_scaled) {
        const double a = a_scaled * z0_target;
        const double b = height_constrained_b(a, z0_target);
        return depth_ratio({a, b});
    };

    double lo = a_lo_over_z0, hi = a_hi_over_z0;
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = objective(c), fd = objective(d);
    int iters = 0;
    const int max_iters = 200;
    const double width_tol = 1e-10;
    while (hi - lo > width_tol && iters < max_iters) {
        if (fc > fd) {
            hi = d; d = c; fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = objective(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = objective(d);
        }
        ++iters;
    }

    OptimizationResult res;
    res.iterations = iters;
    res.converged = (hi - lo) <= width_tol;
    res.a_over_z0 = 0.5 * (lo + hi);
    const double a = res.a_over_z0 * z0_target;
    const double b = height_constrained_b(a, z0_target);
    const RingGeometry geom{a, b};
    res.b_over_z0 = b / z0_target;
    res.zmax_over_z0 = turning_point(geom) / z0_target;
    res.q_over_q4rod = geometric_factor(geom) * z0_target * z0_target;
    res.d_over_d4rod = depth_ratio(geom);
    return res;
}

OptimizationResult optimize_depth_at_height(double z0_target) {
    return optimize_depth_at_height(z0_target, 0.05, 1.40);
}

} // namespace ptp
