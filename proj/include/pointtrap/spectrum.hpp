#pragma once

#include <span>

#include "pointtrap/types.hpp"

// Spectral peak estimation for trajectory analysis: Hann-windowed FFT with
// parabolic interpolation of the peak bin.

namespace ptp {

struct SpectrumPeak {
    double frequency = 0.0; // rad/s
    double amplitude = 0.0; // same unit as the input samples
};

/// Strongest spectral component of `samples` (uniform spacing dt) with angular
/// frequency in [omega_lo, omega_hi]. The mean is removed before analysis.
SpectrumPeak dominant_peak(std::span<const double> samples, double dt,
                           double omega_lo, double omega_hi);

} // namespace ptp
