#include "pointtrap/crystal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "pointtrap/characterize.hpp"
#include "pointtrap/dynamics.hpp"

namespace ptp {

double two_ion_separation(const IonSpecies& ion, double omega_rho) {
    ion.validate();
    if (!(omega_rho > 0.0))
        throw std::invalid_argument("two_ion_separation: omega_rho must be > 0");
    const double q2k = constants::coulomb_constant * ion.charge * ion.charge;
    return std::cbrt(2.0 * q2k / (ion.mass * omega_rho * omega_rho));
}

namespace {

using Vec3 = std::array<double, 3>;

struct TrapField {
    // Harmonic parameters (trap frame centered on the node)
    double m_wz2  = 0.0; // M omega_z^2
    double m_wr2  = 0.0; // M omega_rho^2
    double z_node = 0.0;
    // FullField
    const FieldMap* map = nullptr;
    double fd_step_rho = 0.0, fd_step_z = 0.0;

    double energy(const Vec3& p) const {
        if (!map) {
            const double dz = p[2] - z_node;
            return 0.5 * (m_wr2 * (p[0] * p[0] + p[1] * p[1]) + m_wz2 * dz * dz);
        }
        const double rho = std::hypot(p[0], p[1]);
        return interpolate_map(*map, map->psi, rho, p[2]);
    }

    Vec3 gradient(const Vec3& p) const {
        if (!map)
            return {m_wr2 * p[0], m_wr2 * p[1], m_wz2 * (p[2] - z_node)};
        const double rho = std::hypot(p[0], p[1]);
        const double dpsi_drho =
            (interpolate_map(*map, map->psi, rho + fd_step_rho, p[2]) -
             interpolate_map(*map, map->psi, std::max(rho - fd_step_rho, 0.0), p[2])) /
            (fd_step_rho + std::min(rho, fd_step_rho));
        const double dpsi_dz =
            (interpolate_map(*map, map->psi, rho, p[2] + fd_step_z) -
             interpolate_map(*map, map->psi, rho, p[2] - fd_step_z)) /
            (2.0 * fd_step_z);
        if (rho < 1e-18) return {0.0, 0.0, dpsi_dz};
        return {dpsi_drho * p[0] / rho, dpsi_drho * p[1] / rho, dpsi_dz};
    }
};

struct System {
    TrapField trap;
    double coulomb = 0.0; // k Q^2

    double energy(const std::vector<Vec3>& pos) const {
        double e = 0.0;
        for (const auto& p : pos) e += trap.energy(p);
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
                const double dx = pos[i][0] - pos[j][0];
                const double dy = pos[i][1] - pos[j][1];
                const double dz = pos[i][2] - pos[j][2];
                e += coulomb / std::sqrt(dx * dx + dy * dy + dz * dz);
            }
        return e;
    }

    // Forces (negative gradient), returns max per-ion force magnitude.
    double forces(const std::vector<Vec3>& pos, std::vector<Vec3>& f) const {
        const std::size_t n = pos.size();
        f.assign(n, {0.0, 0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 g = trap.gradient(pos[i]);
            for (int k = 0; k < 3; ++k) f[i][k] -= g[k];
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = pos[i][0] - pos[j][0];
                const double dy = pos[i][1] - pos[j][1];
                const double dz = pos[i][2] - pos[j][2];
                const double r2 = dx * dx + dy * dy + dz * dz;
                const double s = coulomb / (r2 * std::sqrt(r2));
                f[i][0] += s * dx; f[i][1] += s * dy; f[i][2] += s * dz;
                f[j][0] -= s * dx; f[j][1] -= s * dy; f[j][2] -= s * dz;
            }
        double fmax = 0.0;
        for (const auto& fi : f)
            fmax = std::max(fmax, std::sqrt(fi[0] * fi[0] + fi[1] * fi[1] + fi[2] * fi[2]));
        return fmax;
    }
};

CrystalConfiguration minimize_once(const System& sys, std::vector<Vec3> pos,
                                   double length_scale, double force_scale,
                                   const CrystalOptions& opt,
                                   std::vector<double>* trace = nullptr) {
    const std::size_t n = pos.size();
    std::vector<Vec3> f, trial_pos;
    double fmax = sys.forces(pos, f);
    double e = sys.energy(pos);
    double alpha = 0.01 * length_scale / std::max(force_scale, 1e-300);
    int iter = 0;
    if (trace) trace->push_back(e);

    // Phase 1: gradient descent with adaptive step and backtracking.
    for (; iter < opt.max_iterations && fmax > opt.force_tol; ++iter) {
        trial_pos = pos;
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) trial_pos[i][k] += alpha * f[i][k];
        double e_trial;
        try {
            e_trial = sys.energy(trial_pos);
        } catch (const EscapeError&) {
            // Trial step left the field map: treat as an uphill move.
            e_trial = std::numeric_limits<double>::infinity();
        }
        if (e_trial < e) {
            pos.swap(trial_pos);
            e = e_trial;
            alpha *= 1.1;
            fmax = sys.forces(pos, f);
            if (trace) trace->push_back(e);
        } else {
            alpha *= 0.5;
            if (alpha * fmax < 1e-18 * length_scale) break;
        }
    }

    // Phase 2: damped-dynamics polish (velocity quenched when moving uphill).
    if (fmax > opt.force_tol) {
        std::vector<Vec3> v(n, {0.0, 0.0, 0.0});
        double dt = std::sqrt(0.01 * length_scale / std::max(force_scale, 1e-300));
        for (; iter < opt.max_iterations && fmax > opt.force_tol; ++iter) {
            double power = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (int k = 0; k < 3; ++k) {
                    v[i][k] = 0.9 * v[i][k] + dt * f[i][k];
                    power += v[i][k] * f[i][k];
                }
            if (power < 0.0) {
                for (auto& vi : v) vi = {0.0, 0.0, 0.0};
                dt *= 0.5;
            } else {
                dt *= 1.02;
            }
            for (std::size_t i = 0; i < n; ++i)
                for (int k = 0; k < 3; ++k) pos[i][k] += dt * v[i][k];
            fmax = sys.forces(pos, f);
        }
        e = sys.energy(pos);
    }

    CrystalConfiguration out;
    out.positions = std::move(pos);
    out.total_energy = e;
    out.max_residual_force = fmax;
    out.converged = fmax <= opt.force_tol;
    return out;
}

System build_system(const TrapConfig& config, const CrystalOptions& opt,
                    const SecularFrequencies& sf, double z0) {
    System sys;
    sys.coulomb = constants::coulomb_constant * config.ion.charge * config.ion.charge;
    sys.trap.z_node = z0;
    if (opt.model == PotentialModel::Harmonic) {
        sys.trap.m_wz2 = config.ion.mass * sf.omega_z * sf.omega_z;
        sys.trap.m_wr2 = config.ion.mass * sf.omega_rho * sf.omega_rho;
    } else {
        sys.trap.map = opt.map;
        sys.trap.fd_step_rho = 0.25 * (opt.map->rho[1] - opt.map->rho[0]);
        sys.trap.fd_step_z = 0.25 * (opt.map->z[1] - opt.map->z[0]);
    }
    return sys;
}

} // namespace

double crystal_energy(const TrapConfig& config,
                      const std::vector<std::array<double, 3>>& positions,
                      const CrystalOptions& opt) {
    config.validate();
    if (positions.empty())
        throw std::invalid_argument("crystal_energy: empty configuration");
    if (opt.model == PotentialModel::FullField && opt.map == nullptr)
        throw std::invalid_argument("crystal_energy: FullField needs a map");
    const double z0 = trap_height(config.geometry, config.drive.epsilon);
    const SecularFrequencies sf = secular_frequencies(config);
    return build_system(config, opt, sf, z0).energy(positions);
}

CrystalConfiguration crystal_equilibrium(const TrapConfig& config, int n_ions,
                                         std::uint64_t seed, int restarts,
                                         const CrystalOptions& opt) {
    config.validate();
    if (n_ions < 1) throw std::invalid_argument("crystal_equilibrium: n_ions >= 1");
    if (restarts < 1) throw std::invalid_argument("crystal_equilibrium: restarts >= 1");
    if (opt.model == PotentialModel::FullField && opt.map == nullptr)
        throw std::invalid_argument("crystal_equilibrium: FullField needs a map");

    const double z0 = trap_height(config.geometry, config.drive.epsilon);
    const SecularFrequencies sf = secular_frequencies(config);
    const System sys = build_system(config, opt, sf, z0);

    const double d_scale = two_ion_separation(config.ion, sf.omega_rho);
    const double f_scale = config.ion.mass * sf.omega_rho * sf.omega_rho * d_scale;

    std::vector<CrystalConfiguration> results(restarts);
    std::atomic<int> next{0};
    const auto worker = [&] {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= restarts) return;
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r) * 0x9E3779B97F4A7C15ull);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            const double spread = d_scale * (0.5 + std::sqrt(static_cast<double>(n_ions)));
            std::vector<Vec3> pos(n_ions);
            for (auto& p : pos)
                p = {spread * u(rng), spread * u(rng),
                     z0 + 0.1 * d_scale * u(rng)};
            if (n_ions == 1) pos[0] = {0.05 * d_scale * u(rng), 0.05 * d_scale * u(rng),
                                       z0 + 0.05 * d_scale * u(rng)};
            try {
                results[r] = minimize_once(sys, std::move(pos), d_scale, f_scale,
                                           opt, r == 0 ? opt.energy_trace : nullptr);
            } catch (const std::exception&) {
                // A restart that wanders off the field map is discarded.
                results[r].converged = false;
                results[r].total_energy = std::numeric_limits<double>::infinity();
            }
        }
    };
    const unsigned n_threads = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()), restarts);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int best = 0;
    for (int r = 1; r < restarts; ++r) {
        if (results[r].converged && !results[best].converged)
            best = r;
        else if (results[r].converged == results[best].converged &&
                 results[r].total_energy < results[best].total_energy)
            best = r;
    }
    return results[best];
}

PlanarityResult planarity(const CrystalConfiguration& crystal, double tol) {
    if (crystal.positions.empty())
        throw std::invalid_argument("planarity: empty configuration");
    double z_lo = crystal.positions[0][2], z_hi = z_lo;
    for (const auto& p : crystal.positions) {
        z_lo = std::min(z_lo, p[2]);
        z_hi = std::max(z_hi, p[2]);
    }
    return {z_hi - z_lo <= tol, z_hi - z_lo};
}

} // namespace ptp
