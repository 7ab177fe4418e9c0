#pragma once

#include <vector>

#include "pointtrap/fieldcore.hpp"
#include "pointtrap/types.hpp"

// Time-domain integration of a charged particle in the full oscillating rf
// field (no pseudopotential approximation): axial 1D motion from the closed
// form on-axis field, and meridian-plane 2D motion from an interpolated field
// map. Fixed-step classical RK4.

namespace ptp {

struct TrajectoryPoint {
    double t     = 0.0; // s
    double rho   = 0.0; // m (signed meridian-plane coordinate in 3d mode)
    double z     = 0.0; // m
    double v_rho = 0.0; // m/s
    double v_z   = 0.0; // m/s
};

using Trajectory = std::vector<TrajectoryPoint>;

/// Largest admissible step: 1/50 of an rf period.
double max_time_step(const RfDrive& drive);

/// On-axis motion z''= -(Q/M) V cos(Omega t) dkappa/dz, exact nonlinear field.
/// Throws EscapeError if z leaves (0, 10 z_max).
Trajectory integrate_axial(const TrapConfig& config, double z_init, double v_init,
                           double duration, double dt);

/// Optional static axial terms: a uniform dc field and a dc harmonic restoring
/// force (an idealized endcap), added on top of the rf force.
struct AxialStaticTerms {
    double e_dc          = 0.0; // V/m, along +z
    double spring_k      = 0.0; // N/m
    double spring_center = 0.0; // m
};

Trajectory integrate_axial(const TrapConfig& config, double z_init, double v_init,
                           double duration, double dt,
                           const AxialStaticTerms& statics);

struct State2d {
    double rho = 0.0, z = 0.0, v_rho = 0.0, v_z = 0.0;
};

/// Meridian-plane motion driven at Omega_rf with forces bicubically
/// interpolated from a precomputed field map. The map must cover the motion;
/// leaving its extent raises EscapeError.
Trajectory integrate_3d(const TrapConfig& config, const State2d& init,
                        double duration, double dt, const FieldMap& map);

/// Convenience overload: builds the default map, 400x400 over
/// [0, 2 z0] x [0.2 z0, 3 z0].
Trajectory integrate_3d(const TrapConfig& config, const State2d& init,
                        double duration, double dt);

struct MathieuPoint {
    double tau = 0.0;
    double z   = 0.0;
    double v   = 0.0;
};

/// Reference integration of z'' + 2 q cos(2 tau) z = 0.
std::vector<MathieuPoint> mathieu_reference(double q, double tau_max, double dtau,
                                            double z_init = 1.0,
                                            double v_init = 0.0);

struct StabilityPoint {
    double q      = 0.0;
    bool stable   = false;
    double growth = 0.0; // envelope growth rate per unit tau
};

/// Bounded/unbounded classification of the Mathieu equation over 200 rf
/// periods, worst case over two independent initial conditions.
std::vector<StabilityPoint> stability_scan(double q_min, double q_max, int n);

struct DcResponse {
    Trajectory trajectory;
    double displacement     = 0.0; // m, time-averaged shift of z from the node
    double driven_amplitude = 0.0; // m, response at Omega_rf
};

/// Axial motion with an added uniform dc field along z: equilibrium shift and
/// the rf-driven micromotion it induces.
DcResponse micromotion_with_dc(const TrapConfig& config, double e_dc,
                               double duration, double dt);

/// Catmull-Rom bicubic interpolation of one field-map channel at (rho, z).
/// Channel pointers must come from the same map.
double interpolate_map(const FieldMap& map, const std::vector<double>& channel,
                       double rho, double z);

} // namespace ptp
