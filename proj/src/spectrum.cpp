#include "pointtrap/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

namespace ptp {

namespace {
std::mutex fftw_plan_mutex; // FFTW planning is not thread-safe
}

SpectrumPeak dominant_peak(std::span<const double> samples, double dt,
                           double omega_lo, double omega_hi) {
    const std::size_t n = samples.size();
    if (n < 16) throw std::invalid_argument("dominant_peak: record too short");
    if (!(dt > 0.0) || !(omega_hi > omega_lo) || !(omega_lo >= 0.0))
        throw std::invalid_argument("dominant_peak: bad frequency window");

    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(n);

    std::vector<double> windowed(n);
    double window_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(2.0 * constants::pi * i / (n - 1)));
        windowed[i] = (samples[i] - mean) * w;
        window_sum += w;
    }

    std::vector<std::complex<double>> out(n / 2 + 1);
    {
        std::lock_guard lock(fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(
            static_cast<int>(n), windowed.data(),
            reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    const double bin_width = 2.0 * constants::pi / (dt * static_cast<double>(n));
    std::size_t m_lo = static_cast<std::size_t>(std::max(1.0, std::ceil(omega_lo / bin_width)));
    std::size_t m_hi = static_cast<std::size_t>(std::floor(omega_hi / bin_width));
    m_hi = std::min(m_hi, n / 2 - 1);
    if (m_lo >= m_hi)
        throw std::invalid_argument("dominant_peak: window narrower than one bin");

    std::size_t best = m_lo;
    double best_mag = 0.0;
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
        const double mag = std::abs(out[m]);
        if (mag > best_mag) {
            best_mag = mag;
            best = m;
        }
    }
    if (best_mag <= 0.0)
        throw NumericalError("dominant_peak: empty spectrum in window");

    // Parabolic interpolation on log magnitude around the peak bin.
    double delta = 0.0;
    double log_peak = std::log(best_mag);
    if (best > 0 && best < n / 2) {
        const double lm = std::log(std::max(std::abs(out[best - 1]), 1e-300));
        const double lp = std::log(std::max(std::abs(out[best + 1]), 1e-300));
        const double denom = lm - 2.0 * log_peak + lp;
        if (denom < 0.0) {
            delta = 0.5 * (lm - lp) / denom;
            delta = std::clamp(delta, -0.5, 0.5);
            log_peak -= 0.25 * (lm - lp) * delta;
        }
    }

    SpectrumPeak peak;
    peak.frequency = (static_cast<double>(best) + delta) * bin_width;
    peak.amplitude = 2.0 * std::exp(log_peak) / window_sum;
    return peak;
}

} // namespace ptp
