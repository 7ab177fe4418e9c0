#include "pointtrap/characterize.hpp"

#include <algorithm>
#include <cmath>

namespace ptp {

namespace {

constexpr double kGolden = 0.6180339887498949; // (sqrt(5)-1)/2

// Validity window of the node formula: (1-epsilon) must lie in (a/b, (b/a)^2).
void check_node_exists(const RingGeometry& geom, double epsilon) {
    const double r = geom.a / geom.b;
    if (!(1.0 - epsilon > r))
        throw NoTrapError("no on-axis rf node: epsilon >= 1 - a/b");
    if (!(1.0 - epsilon < 1.0 / (r * r)))
        throw NoTrapError("no on-axis rf node: out-of-phase drive too strong");
}

} // namespace

double epsilon_critical(const RingGeometry& geom) {
    geom.validate();
    return 1.0 - geom.a / geom.b;
}

double trap_height(const RingGeometry& geom, double epsilon) {
    geom.validate();
    check_node_exists(geom, epsilon);
    const double t = std::pow(1.0 - epsilon, 2.0 / 3.0);
    const double a = geom.a, b = geom.b;
    const double a43 = std::pow(a, 4.0 / 3.0), b43 = std::pow(b, 4.0 / 3.0);
    const double num = b * b * a43 * t - a * a * b43;
    const double den = b43 - a43 * t;
    return std::sqrt(num / den);
}

double turning_point(const RingGeometry& geom, double epsilon) {
    geom.validate();
    check_node_exists(geom, epsilon);
    const double t = std::pow(1.0 - epsilon, 2.0 / 5.0);
    const double a = geom.a, b = geom.b;
    const double a45 = std::pow(a, 4.0 / 5.0), b45 = std::pow(b, 4.0 / 5.0);
    const double num = b * b * a45 * t - a * a * b45;
    const double den = b45 - a45 * t;
    return std::sqrt(num / den);
}

double geometric_factor(const RingGeometry& geom) {
    geom.validate();
    const double u = std::pow(geom.a, 2.0 / 3.0), v = std::pow(geom.b, 2.0 / 3.0);
    const double num = 9.0 * (v - u) * (v - u) * std::pow(v + u, 6.0);
    const double den = u * u * v * v * std::pow(v * v + u * v + u * u, 5.0);
    return std::sqrt(num / den);
}

double geometric_factor(const RingGeometry& geom, double epsilon) {
    if (epsilon == 0.0) return geometric_factor(geom);
    const double z0p = trap_height(geom, epsilon);
    return -kappa_axial_d2z(geom, epsilon, z0p);
}

double mathieu_q(const TrapConfig& config) {
    config.validate();
    const double f = geometric_factor(config.geometry, config.drive.epsilon);
    return 2.0 * config.ion.charge * config.drive.v_rf * f /
           (config.ion.mass * config.drive.omega_rf * config.drive.omega_rf);
}

FourRodReferences four_rod_references(const TrapConfig& config) {
    config.validate();
    const double z0 = trap_height(config.geometry, config.drive.epsilon);
    const double z02 = z0 * z0;
    FourRodReferences ref;
    ref.q_4rod = 2.0 * config.ion.charge * config.drive.v_rf /
                 (config.ion.mass * config.drive.omega_rf * config.drive.omega_rf * z02);
    ref.d_4rod = pseudopotential_prefactor(config.drive, config.ion) / z02;
    return ref;
}

double axial_pseudopotential(const TrapConfig& config, double z) {
    config.validate();
    const double g = kappa_axial_dz(config.geometry, config.drive.epsilon, z);
    return pseudopotential_prefactor(config.drive, config.ion) * g * g;
}

AxialBarriers axial_barriers(const TrapConfig& config) {
    config.validate();
    const RingGeometry& geom = config.geometry;
    const double eps = config.drive.epsilon;
    const double z0p = trap_height(geom, eps);
    const double pref = pseudopotential_prefactor(config.drive, config.ion);

    AxialBarriers bars;
    const double g_max = kappa_axial_dz(geom, eps, turning_point(geom, eps));
    bars.upper = pref * g_max * g_max;

    // Surface-side barrier: sup of Psi on (0, z0'). The z->0 limit of the
    // on-axis field is finite, (1-eps)/a - 1/b; an interior maximum may also
    // exist, so scan and refine.
    const double g0 = (1.0 - eps) / geom.a - 1.0 / geom.b;
    double best = g0 * g0;
    const int n_scan = 256;
    int best_i = -1;
    const double z_lo = 1e-6 * z0p;
    const double ratio = std::pow(z0p / z_lo, 1.0 / (n_scan - 1));
    auto g2 = [&](double z) {
        const double g = kappa_axial_dz(geom, eps, z);
        return g * g;
    };
    double zi = z_lo;
    for (int i = 0; i < n_scan; ++i, zi *= ratio) {
        const double v = g2(zi);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (best_i > 0 && best_i < n_scan - 1) {
        // Golden-section refinement of the interior maximum.
        double lo = z_lo * std::pow(ratio, best_i - 1);
        double hi = z_lo * std::pow(ratio, best_i + 1);
        double c = hi - kGolden * (hi - lo);
        double d = lo + kGolden * (hi - lo);
        double fc = g2(c), fd = g2(d);
        for (int it = 0; it < 80 && hi - lo > 1e-14 * z0p; ++it) {
            if (fc > fd) {
                hi = d; d = c; fd = fc;
                c = hi - kGolden * (hi - lo);
                fc = g2(c);
            } else {
                lo = c; c = d; fc = fd;
                d = lo + kGolden * (hi - lo);
                fd = g2(d);
            }
        }
        best = std::max(best, std::max(fc, fd));
    }
    bars.lower = pref * best;
    return bars;
}

double trap_depth(const TrapConfig& config) {
    const AxialBarriers bars = axial_barriers(config);
    return std::min(bars.lower, bars.upper);
}

SecularFrequencies secular_frequencies(const TrapConfig& config,
                                       const FieldOptions& opt) {
    config.validate();
    SecularFrequencies out;
    const double q = mathieu_q(config);
    out.omega_z = std::abs(q) * config.drive.omega_rf / (2.0 * std::sqrt(2.0));

    // Radial frequency from a quadratic least-squares fit Psi = c0 + c2 rho^2
    // over |rho| <= 0.05 z0', 11 sample points.
    const double z0p = trap_height(config.geometry, config.drive.epsilon);
    const double window = 0.05 * z0p;
    const auto stack = three_electrode_stack(config.geometry, config.drive.epsilon);
    const double pref = pseudopotential_prefactor(config.drive, config.ion);

    const int n = 11;
    double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
    for (int j = 0; j < n; ++j) {
        const double rho = window * j / (n - 1);
        const KappaGradient g = kappa_gradient(stack, z0p, rho, opt);
        const double psi = pref * (g.dz * g.dz + g.drho * g.drho);
        const double x = rho * rho;
        s0 += 1.0;
        s1 += x;
        s2 += x * x;
        t0 += psi;
        t1 += psi * x;
    }
    const double det = s0 * s2 - s1 * s1;
    const double c2 = (s0 * t1 - s1 * t0) / det;
    if (!(c2 > 0.0))
        throw NumericalError("secular_frequencies: radial samples are non-convex");
    out.omega_rho = std::sqrt(2.0 * c2 / config.ion.mass);
    return out;
}

TrapCharacteristics characterize_trap(const TrapConfig& config,
                                      const FieldOptions& opt) {
    config.validate();
    TrapCharacteristics c;
    c.epsilon_used = config.drive.epsilon;
    c.z0 = trap_height(config.geometry, c.epsilon_used);
    c.z_max = turning_point(config.geometry, c.epsilon_used);
    c.f_value = geometric_factor(config.geometry, c.epsilon_used);
    c.q = mathieu_q(config);
    const SecularFrequencies sf = secular_frequencies(config, opt);
    c.omega_z = sf.omega_z;
    c.omega_rho = sf.omega_rho;
    c.depth = trap_depth(config);
    const FourRodReferences ref = four_rod_references(config);
    c.q_4rod = ref.q_4rod;
    c.d_4rod = ref.d_4rod;
    return c;
}

std::vector<EpsilonSweepEntry> epsilon_sweep(const TrapConfig& config,
                                             double eps_min, double eps_max,
                                             int n) {
    config.validate();
    if (n < 2) throw std::invalid_argument("epsilon_sweep: n must be >= 2");
    if (!(eps_max > eps_min))
        throw std::invalid_argument("epsilon_sweep: require eps_min < eps_max");

    std::vector<EpsilonSweepEntry> sweep(n);
    for (int i = 0; i < n; ++i) {
        EpsilonSweepEntry& e = sweep[i];
        e.epsilon = eps_min + (eps_max - eps_min) * i / (n - 1);
        TrapConfig c = config;
        c.drive.epsilon = e.epsilon;
        try {
            e.z0_prime = trap_height(c.geometry, e.epsilon);
            e.q_prime = mathieu_q(c);
            const AxialBarriers bars = axial_barriers(c);
            e.depth_prime = std::min(bars.lower, bars.upper);
            e.depth_limited_below = bars.lower < bars.upper;
        } catch (const NoTrapError&) {
            e.valid = false;
        }
    }
    return sweep;
}

} // namespace ptp
