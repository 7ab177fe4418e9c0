#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pointtrap/fieldcore.hpp"
#include "pointtrap/types.hpp"

// Equilibrium configurations of N ions: trap confinement plus mutual Coulomb
// repulsion, minimized by adaptive gradient descent with a damped-dynamics
// polish, best of several seeded random restarts.

namespace ptp {

struct CrystalConfiguration {
    std::vector<std::array<double, 3>> positions; // m, trap frame (z absolute)
    double total_energy       = 0.0; // J
    bool converged            = false;
    double max_residual_force = 0.0; // N
};

enum class PotentialModel {
    Harmonic,  // quadratic expansion 1/2 M (w_rho^2 rho^2 + w_z^2 dz^2)
    FullField, // pseudopotential interpolated from a field map
};

struct CrystalOptions {
    PotentialModel model     = PotentialModel::Harmonic;
    double force_tol         = 1e-19; // N, convergence threshold per ion
    int max_iterations       = 200000;
    const FieldMap* map      = nullptr; // required for FullField
    // When set, accepted descent energies of the first restart are recorded.
    std::vector<double>* energy_trace = nullptr;
};

/// Best-of-restarts local minimum for N ions. Deterministic for a given seed.
CrystalConfiguration crystal_equilibrium(const TrapConfig& config, int n_ions,
                                         std::uint64_t seed, int restarts,
                                         const CrystalOptions& opt = {});

/// Total potential energy (trap confinement + Coulomb) of an explicit ion
/// arrangement, under the same model crystal_equilibrium minimizes.
double crystal_energy(const TrapConfig& config,
                      const std::vector<std::array<double, 3>>& positions,
                      const CrystalOptions& opt = {});

struct PlanarityResult {
    bool planar     = false;
    double z_spread = 0.0; // m
};

/// True iff the axial spread max z - min z is within tol.
PlanarityResult planarity(const CrystalConfiguration& crystal, double tol);

/// Analytic two-ion equilibrium separation in the radial harmonic potential:
/// d = (Q^2 / (2 pi eps0 M omega_rho^2))^(1/3).
double two_ion_separation(const IonSpecies& ion, double omega_rho);

} // namespace ptp
