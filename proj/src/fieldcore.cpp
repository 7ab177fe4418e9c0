#include "pointtrap/fieldcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "pointtrap/bessel.hpp"

namespace ptp {

double annular_coefficient(const AnnularElectrode& e, double k) {
    e.validate();
    if (!(k >= 0.0)) throw std::invalid_argument("annular_coefficient: k must be >= 0");
    if (e.amplitude == 0.0) return 0.0;
    const double outer = e.outer_radius * bessel_j1(k * e.outer_radius);
    const double inner = e.inner_radius > 0.0
                             ? e.inner_radius * bessel_j1(k * e.inner_radius)
                             : 0.0;
    return e.amplitude * (outer - inner);
}

std::vector<AnnularElectrode> three_electrode_stack(const RingGeometry& geom,
                                                    double epsilon) {
    geom.validate();
    std::vector<AnnularElectrode> stack;
    if (epsilon != 0.0) stack.push_back({0.0, geom.a, epsilon});
    stack.push_back({geom.a, geom.b, 1.0});
    return stack;
}

double kappa_axial(const RingGeometry& geom, double epsilon, double z) {
    geom.validate();
    if (!(z > 0.0)) throw std::invalid_argument("kappa_axial: z must be > 0");
    const double ta = z / std::sqrt(z * z + geom.a * geom.a);
    const double tb = z / std::sqrt(z * z + geom.b * geom.b);
    return ta - tb + epsilon * (1.0 - ta);
}

double kappa_axial_dz(const RingGeometry& geom, double epsilon, double z) {
    geom.validate();
    if (!(z > 0.0)) throw std::invalid_argument("kappa_axial_dz: z must be > 0");
    const double a2 = geom.a * geom.a, b2 = geom.b * geom.b;
    return (1.0 - epsilon) * a2 * std::pow(z * z + a2, -1.5) -
           b2 * std::pow(z * z + b2, -1.5);
}

double kappa_axial_d2z(const RingGeometry& geom, double epsilon, double z) {
    geom.validate();
    if (!(z > 0.0)) throw std::invalid_argument("kappa_axial_d2z: z must be > 0");
    const double a2 = geom.a * geom.a, b2 = geom.b * geom.b;
    return -3.0 * z * ((1.0 - epsilon) * a2 * std::pow(z * z + a2, -2.5) -
                       b2 * std::pow(z * z + b2, -2.5));
}

namespace {

// Shared driver: integrates sum_i A_i(k) exp(-k z) kernel(k) dk over panels of
// one oscillation period each, out to the damping-limited cutoff.
template <class Kernel>
QuadResult hankel_integral(std::span<const AnnularElectrode> stack, double z,
                           double rho, const FieldOptions& opt, Kernel kernel) {
    if (!(z > 0.0)) throw std::invalid_argument("field integral: z must be > 0");
    if (!(rho >= 0.0)) throw std::invalid_argument("field integral: rho must be >= 0");
    if (stack.empty()) return {0.0, false};

    double r_max = rho;
    for (const auto& e : stack) {
        e.validate();
        r_max = std::max(r_max, e.outer_radius);
    }

    QuadResult res;
    double k_max = -std::log(opt.tail_tol) / z;
    if (k_max * r_max > opt.k_cap_scaled) {
        k_max = opt.k_cap_scaled / r_max;
        res.degraded = true;
    }

    const auto integrand = [&](double k) {
        double a = 0.0;
        for (const auto& e : stack) {
            if (e.amplitude == 0.0) continue;
            double v = e.outer_radius * bessel_j1(k * e.outer_radius);
            if (e.inner_radius > 0.0)
                v -= e.inner_radius * bessel_j1(k * e.inner_radius);
            a += e.amplitude * v;
        }
        return a * std::exp(-k * z) * kernel(k);
    };

    // Panel width of one half oscillation of the fastest Bessel factor.
    const double panel = constants::pi / r_max;
    QuadratureOptions q = opt.quad;
    double total = 0.0;
    double lo = 0.0;
    while (lo < k_max) {
        const double hi = std::min(lo + panel, k_max);
        q.abs_tol = std::max(opt.quad.abs_tol,
                             opt.quad.rel_tol * std::abs(total) * 1e-2);
        total += integrate(integrand, lo, hi, q);
        lo = hi;
    }
    res.value = total;
    return res;
}

} // namespace

QuadResult kappa_numeric_ex(std::span<const AnnularElectrode> stack, double z,
                            double rho, const FieldOptions& opt) {
    return hankel_integral(stack, z, rho, opt,
                           [rho](double k) { return bessel_j0(k * rho); });
}

double kappa_numeric(std::span<const AnnularElectrode> stack, double z, double rho,
                     const FieldOptions& opt) {
    return kappa_numeric_ex(stack, z, rho, opt).value;
}

KappaGradient kappa_gradient(std::span<const AnnularElectrode> stack, double z,
                             double rho, const FieldOptions& opt) {
    KappaGradient g;
    g.dz = hankel_integral(stack, z, rho, opt,
                           [rho](double k) { return -k * bessel_j0(k * rho); })
               .value;
    g.drho = hankel_integral(stack, z, rho, opt,
                             [rho](double k) { return -k * bessel_j1(k * rho); })
                 .value;
    return g;
}

double pseudopotential_prefactor(const RfDrive& drive, const IonSpecies& ion) {
    drive.validate();
    ion.validate();
    const double qv = ion.charge * drive.v_rf;
    return qv * qv / (4.0 * ion.mass * drive.omega_rf * drive.omega_rf);
}

double pseudopotential(const TrapConfig& config, double z, double rho,
                       const FieldOptions& opt) {
    config.validate();
    const auto stack = three_electrode_stack(config.geometry, config.drive.epsilon);
    const KappaGradient g = kappa_gradient(stack, z, rho, opt);
    return pseudopotential_prefactor(config.drive, config.ion) *
           (g.dz * g.dz + g.drho * g.drho);
}

FieldMap field_map(const TrapConfig& config, double rho_min, double rho_max,
                   double z_min, double z_max, int n_rho, int n_z,
                   const FieldOptions& opt) {
    config.validate();
    if (!(rho_min >= 0.0) || !(rho_max > rho_min))
        throw std::invalid_argument("field_map: require 0 <= rho_min < rho_max");
    if (!(z_min > 0.0) || !(z_max > z_min))
        throw std::invalid_argument("field_map: require 0 < z_min < z_max");
    if (n_rho < 2 || n_z < 2)
        throw std::invalid_argument("field_map: need at least 2 points per axis");

    FieldMap map;
    map.rho.resize(n_rho);
    map.z.resize(n_z);
    for (int i = 0; i < n_rho; ++i)
        map.rho[i] = rho_min + (rho_max - rho_min) * i / (n_rho - 1);
    for (int i = 0; i < n_z; ++i)
        map.z[i] = z_min + (z_max - z_min) * i / (n_z - 1);

    const std::size_t n = static_cast<std::size_t>(n_rho) * n_z;
    map.kappa.resize(n);
    map.psi.resize(n);
    map.dk_dz.resize(n);
    map.dk_drho.resize(n);

    const auto stack = three_electrode_stack(config.geometry, config.drive.epsilon);
    const double pref = pseudopotential_prefactor(config.drive, config.ion);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string fail_msg;
    std::mutex fail_mutex;

    const auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n || failed.load()) return;
            const std::size_t iz = idx / n_rho;
            const std::size_t irho = idx % n_rho;
            try {
                const double zz = map.z[iz], rr = map.rho[irho];
                map.kappa[idx] = kappa_numeric(stack, zz, rr, opt);
                const KappaGradient g = kappa_gradient(stack, zz, rr, opt);
                map.dk_dz[idx] = g.dz;
                map.dk_drho[idx] = g.drho;
                map.psi[idx] = pref * (g.dz * g.dz + g.drho * g.drho);
            } catch (const std::exception& e) {
                std::lock_guard lock(fail_mutex);
                failed.store(true);
                fail_msg = "field_map: failure at (rho=" +
                           std::to_string(map.rho[irho]) +
                           ", z=" + std::to_string(map.z[iz]) + "): " + e.what();
            }
        }
    };

    const unsigned n_threads =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failed.load()) throw NumericalError(fail_msg);
    return map;
}

} // namespace ptp
