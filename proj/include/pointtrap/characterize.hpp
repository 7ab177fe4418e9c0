#pragma once

#include <vector>

#include "pointtrap/fieldcore.hpp"
#include "pointtrap/types.hpp"

// Closed-form trap metrics of the three-electrode point Paul trap: rf node
// height, pseudopotential turning point, geometric factor, Mathieu q, secular
// frequencies, trap depth, and four-rod reference values, for single- and
// dual-rf drive.

namespace ptp {

struct TrapCharacteristics {
    double z0        = 0.0; // m, rf node height
    double z_max     = 0.0; // m, on-axis pseudopotential turning point
    double f_value   = 0.0; // 1/m^2, geometric factor at epsilon_used
    double q         = 0.0; // Mathieu q
    double omega_z   = 0.0; // rad/s
    double omega_rho = 0.0; // rad/s (quadratic fit to the radial pseudopotential)
    double depth     = 0.0; // J
    double q_4rod    = 0.0;
    double d_4rod    = 0.0; // J
    double epsilon_used = 0.0;
};

/// Largest epsilon for which an on-axis rf node exists: 1 - a/b.
double epsilon_critical(const RingGeometry& geom);

/// Height z0'(epsilon) of the rf node above the electrode plane.
/// Throws NoTrapError for epsilon >= 1 - a/b.
double trap_height(const RingGeometry& geom, double epsilon = 0.0);

/// On-axis pseudopotential maximum z_max'(epsilon) bounding the trap above.
double turning_point(const RingGeometry& geom, double epsilon = 0.0);

/// Geometric factor f(a, b) in 1/m^2 (single-rf). Equals |d^2 kappa/dz^2| at z0.
double geometric_factor(const RingGeometry& geom);

/// Generalized geometric factor at nonzero epsilon, evaluated at z0'(epsilon).
double geometric_factor(const RingGeometry& geom, double epsilon);

/// Mathieu q-parameter at the configured drive (epsilon taken from the drive).
double mathieu_q(const TrapConfig& config);

struct FourRodReferences {
    double q_4rod = 0.0;
    double d_4rod = 0.0; // J
};

/// q and depth of a four-rod linear Paul trap with ion-electrode distance z0,
/// used as dimensionless normalization.
FourRodReferences four_rod_references(const TrapConfig& config);

/// On-axis pseudopotential at z (closed form), in J.
double axial_pseudopotential(const TrapConfig& config, double z);

struct AxialBarriers {
    double lower = 0.0; // J, barrier between node and surface
    double upper = 0.0; // J, barrier at the turning point above the node
};

/// The two on-axis escape barriers measured from the node.
AxialBarriers axial_barriers(const TrapConfig& config);

/// Effective trap depth: min(lower, upper) barrier. At epsilon = 0 this is the
/// closed-form single-rf depth.
double trap_depth(const TrapConfig& config);

struct SecularFrequencies {
    double omega_z   = 0.0; // rad/s
    double omega_rho = 0.0; // rad/s
};

/// Axial secular frequency q Omega/(2 sqrt 2) plus the radial frequency from a
/// quadratic least-squares fit of the numerically integrated pseudopotential
/// over |rho| <= 0.05 z0. Warns (via returned value only) above q = 0.3; the
/// small-q validity check is the caller's concern.
SecularFrequencies secular_frequencies(const TrapConfig& config,
                                       const FieldOptions& opt = {});

/// Full metrics bundle.
TrapCharacteristics characterize_trap(const TrapConfig& config,
                                      const FieldOptions& opt = {});

struct EpsilonSweepEntry {
    double epsilon     = 0.0;
    double z0_prime    = 0.0; // m
    double q_prime     = 0.0;
    double depth_prime = 0.0; // J
    bool valid         = true;  // false beyond epsilon_critical
    bool depth_limited_below = false; // depth set by the surface-side barrier
};

/// Sweep of node height, q, and effective depth vs epsilon. Entries beyond the
/// critical epsilon are flagged invalid rather than fatal.
std::vector<EpsilonSweepEntry> epsilon_sweep(const TrapConfig& config,
                                             double eps_min, double eps_max,
                                             int n);

} // namespace ptp
