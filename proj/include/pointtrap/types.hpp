#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointtrap/constants.hpp"

namespace ptp {

/// Raised when a quadrature or fit fails to reach its requested tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the requested drive has no on-axis rf node (epsilon >= 1 - a/b).
class NoTrapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an integrated particle leaves the allowed region.
class EscapeError : public std::runtime_error {
public:
    EscapeError(const std::string& what, double t_escape)
        : std::runtime_error(what), time(t_escape) {}
    double time; // s
};

/// Flat ring electrode at uniform potential: inner radius alpha, outer radius
/// beta, voltage amplitude v. alpha == 0 describes a disk.
struct AnnularElectrode {
    double inner_radius = 0.0; // m
    double outer_radius = 0.0; // m
    double amplitude    = 0.0; // V

    void validate() const {
        if (!(inner_radius >= 0.0) || !(outer_radius > inner_radius))
            throw std::invalid_argument("AnnularElectrode: require 0 <= inner < outer");
        if (!std::isfinite(amplitude))
            throw std::invalid_argument("AnnularElectrode: amplitude must be finite");
    }
};

/// The rf ring electrode of the three-electrode trap: inner radius a, outer
/// radius b. These are the two geometric degrees of freedom of the design.
struct RingGeometry {
    double a = 0.0; // m
    double b = 0.0; // m

    void validate() const {
        if (!(a > 0.0) || !(b > a))
            throw std::invalid_argument("RingGeometry: require 0 < a < b");
    }
};

/// Rf drive: amplitude, angular frequency, and the signed ratio epsilon of the
/// inner-electrode drive to the ring drive. epsilon > 0 is in-phase, epsilon < 0
/// out-of-phase; other relative phases are not modeled.
struct RfDrive {
    double v_rf     = 0.0; // V
    double omega_rf = 0.0; // rad/s
    double epsilon  = 0.0; // dimensionless

    void validate() const {
        if (!(v_rf >= 0.0))
            throw std::invalid_argument("RfDrive: v_rf must be >= 0");
        if (!(omega_rf > 0.0))
            throw std::invalid_argument("RfDrive: omega_rf must be > 0");
        if (!(epsilon <= 1.0) || !std::isfinite(epsilon))
            throw std::invalid_argument("RfDrive: epsilon must be finite and <= 1");
    }
};

struct IonSpecies {
    double charge = 0.0; // C
    double mass   = 0.0; // kg

    void validate() const {
        if (charge == 0.0 || !std::isfinite(charge))
            throw std::invalid_argument("IonSpecies: charge must be nonzero");
        if (!(mass > 0.0))
            throw std::invalid_argument("IonSpecies: mass must be > 0");
    }

    static IonSpecies sr88() {
        return {constants::elementary_charge,
                constants::sr88_mass_amu * constants::atomic_mass_unit};
    }
};

/// Full description of an operating point: geometry + drive + species.
struct TrapConfig {
    RingGeometry geometry;
    RfDrive drive;
    IonSpecies ion;

    void validate() const {
        geometry.validate();
        drive.validate();
        ion.validate();
    }
};

} // namespace ptp
