#pragma once

#include <span>
#include <vector>

#include "pointtrap/quadrature.hpp"
#include "pointtrap/types.hpp"

// Electrostatics of stacks of concentric annular electrodes in the plane z = 0.
// The dimensionless shape function kappa is the spatial part of the potential,
// Phi = V_rf cos(Omega_rf t) kappa(z, rho). On axis kappa has a closed form;
// off axis it is an oscillatory Bessel integral evaluated by panel quadrature.

namespace ptp {

/// Hankel-space amplitude of one electrode: V [beta J1(k beta) - alpha J1(k alpha)].
double annular_coefficient(const AnnularElectrode& electrode, double k);

/// The three-electrode trap as an electrode stack with unit ring amplitude:
/// inner disk (0, a) at epsilon, ring (a, b) at 1.
std::vector<AnnularElectrode> three_electrode_stack(const RingGeometry& geom,
                                                    double epsilon);

/// Closed-form on-axis shape function of the three-electrode trap.
double kappa_axial(const RingGeometry& geom, double epsilon, double z);

/// Closed-form on-axis d(kappa)/dz.
double kappa_axial_dz(const RingGeometry& geom, double epsilon, double z);

/// Closed-form on-axis d^2(kappa)/dz^2.
double kappa_axial_d2z(const RingGeometry& geom, double epsilon, double z);

struct FieldOptions {
    QuadratureOptions quad;
    // Truncation: the exp(-k z) damping bounds the tail; k_max = -ln(tail_tol)/z,
    // capped so that k_max * max radius <= k_cap_scaled (cost grows as 1/z).
    double tail_tol     = 1e-16;
    double k_cap_scaled = 1e6;
};

struct QuadResult {
    double value = 0.0;
    bool degraded = false; // truncation cap was hit (very small z)
};

/// kappa(z, rho) for an arbitrary electrode stack, by quadrature of the
/// Hankel integral. z > 0, rho >= 0.
double kappa_numeric(std::span<const AnnularElectrode> stack, double z, double rho,
                     const FieldOptions& opt = {});
QuadResult kappa_numeric_ex(std::span<const AnnularElectrode> stack, double z,
                            double rho, const FieldOptions& opt = {});

struct KappaGradient {
    double dz   = 0.0; // 1/m
    double drho = 0.0; // 1/m
};

/// Gradient of kappa by quadrature of the differentiated integrand.
KappaGradient kappa_gradient(std::span<const AnnularElectrode> stack, double z,
                             double rho, const FieldOptions& opt = {});

/// Q^2 V_rf^2 / (4 M Omega_rf^2), the pseudopotential scale in J m^2.
double pseudopotential_prefactor(const RfDrive& drive, const IonSpecies& ion);

/// Pseudopotential Psi(z, rho) = prefactor * |grad kappa|^2, in J.
double pseudopotential(const TrapConfig& config, double z, double rho,
                       const FieldOptions& opt = {});

/// kappa, Psi and grad kappa sampled over a uniform (rho, z) grid.
/// Row-major with rho varying fastest: index = iz * n_rho + irho.
struct FieldMap {
    std::vector<double> rho; // n_rho grid values, m
    std::vector<double> z;   // n_z grid values, m
    std::vector<double> kappa;
    std::vector<double> psi;      // J
    std::vector<double> dk_dz;    // 1/m
    std::vector<double> dk_drho;  // 1/m

    std::size_t index(std::size_t iz, std::size_t irho) const {
        return iz * rho.size() + irho;
    }
};

FieldMap field_map(const TrapConfig& config, double rho_min, double rho_max,
                   double z_min, double z_max, int n_rho, int n_z,
                   const FieldOptions& opt = {});

} // namespace ptp
