#include "pointtrap/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "pointtrap/characterize.hpp"
#include "pointtrap/spectrum.hpp"

namespace ptp {

double max_time_step(const RfDrive& drive) {
    return 2.0 * constants::pi / (50.0 * drive.omega_rf);
}

namespace {

void check_step(const TrapConfig& config, double duration, double dt) {
    if (!(dt > 0.0) || !(duration > dt))
        throw std::invalid_argument("integrate: require 0 < dt < duration");
    if (dt > max_time_step(config.drive))
        throw std::invalid_argument(
            "integrate: dt too large, need dt <= rf period / 50");
}

// One RK4 step of x'' = acc(x, t) for a generic small state.
template <int N, class Acc>
void rk4_step(double (&x)[N], double (&v)[N], double t, double dt, const Acc& acc) {
    double a1[N], a2[N], a3[N], a4[N];
    double xt[N], vt[N];

    acc(x, t, a1);
    for (int i = 0; i < N; ++i) {
        xt[i] = x[i] + 0.5 * dt * v[i];
        vt[i] = v[i] + 0.5 * dt * a1[i];
    }
    acc(xt, t + 0.5 * dt, a2);
    double xt2[N];
    for (int i = 0; i < N; ++i) {
        xt2[i] = x[i] + 0.5 * dt * vt[i];
        vt[i] = v[i] + 0.5 * dt * a2[i];
    }
    acc(xt2, t + 0.5 * dt, a3);
    double xt3[N];
    for (int i = 0; i < N; ++i) {
        xt3[i] = x[i] + dt * vt[i];
        vt[i] = v[i] + dt * a3[i];
    }
    acc(xt3, t + dt, a4);

    for (int i = 0; i < N; ++i) {
        const double k1 = v[i];
        const double k2 = v[i] + 0.5 * dt * a1[i];
        const double k3 = v[i] + 0.5 * dt * a2[i];
        const double k4 = v[i] + dt * a3[i];
        x[i] += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        v[i] += dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
    }
}

Trajectory integrate_axial_impl(const TrapConfig& config, double z_init,
                                double v_init, double duration, double dt,
                                const AxialStaticTerms& st) {
    config.validate();
    check_step(config, duration, dt);
    if (!(z_init > 0.0))
        throw std::invalid_argument("integrate_axial: z_init must be > 0");

    const double z_escape = 10.0 * turning_point(config.geometry, config.drive.epsilon);
    const double qm = config.ion.charge / config.ion.mass;
    const double v_rf = config.drive.v_rf;
    const double omega = config.drive.omega_rf;
    const RingGeometry geom = config.geometry;
    const double eps = config.drive.epsilon;
    const double inv_m = 1.0 / config.ion.mass;

    const auto acc = [&](const double (&x)[1], double t, double (&a)[1]) {
        a[0] = -qm * v_rf * std::cos(omega * t) * kappa_axial_dz(geom, eps, x[0]) +
               qm * st.e_dc - inv_m * st.spring_k * (x[0] - st.spring_center);
    };

    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(duration / dt));
    Trajectory traj;
    traj.reserve(n_steps + 1);
    double x[1] = {z_init}, v[1] = {v_init};
    traj.push_back({0.0, 0.0, x[0], 0.0, v[0]});
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = i * dt;
        rk4_step(x, v, t, dt, acc);
        if (!(x[0] > 0.0) || x[0] > z_escape)
            throw EscapeError("integrate_axial: particle escaped", t + dt);
        traj.push_back({t + dt, 0.0, x[0], 0.0, v[0]});
    }
    return traj;
}

} // namespace

Trajectory integrate_axial(const TrapConfig& config, double z_init, double v_init,
                           double duration, double dt) {
    return integrate_axial_impl(config, z_init, v_init, duration, dt, {});
}

Trajectory integrate_axial(const TrapConfig& config, double z_init, double v_init,
                           double duration, double dt,
                           const AxialStaticTerms& statics) {
    return integrate_axial_impl(config, z_init, v_init, duration, dt, statics);
}

double interpolate_map(const FieldMap& map, const std::vector<double>& channel,
                       double rho, double z) {
    const std::size_t nr = map.rho.size(), nz = map.z.size();
    if (nr < 4 || nz < 4)
        throw std::invalid_argument("interpolate_map: need at least a 4x4 grid");
    const double dr = map.rho[1] - map.rho[0];
    const double dz = map.z[1] - map.z[0];
    const double fr = (rho - map.rho[0]) / dr;
    const double fz = (z - map.z[0]) / dz;
    if (fr < 0.0 || fr > static_cast<double>(nr - 1) || fz < 0.0 ||
        fz > static_cast<double>(nz - 1))
        throw EscapeError("interpolate_map: point outside field map", 0.0);

    const auto cell = [](double f, std::size_t n) {
        long i = static_cast<long>(std::floor(f));
        i = std::clamp<long>(i, 1, static_cast<long>(n) - 3);
        return std::pair<long, double>{i, f - static_cast<double>(i)};
    };
    const auto [ir, tr] = cell(fr, nr);
    const auto [iz, tz] = cell(fz, nz);

    // Catmull-Rom weights
    const auto weights = [](double t, double (&w)[4]) {
        const double t2 = t * t, t3 = t2 * t;
        w[0] = 0.5 * (-t3 + 2.0 * t2 - t);
        w[1] = 0.5 * (3.0 * t3 - 5.0 * t2 + 2.0);
        w[2] = 0.5 * (-3.0 * t3 + 4.0 * t2 + t);
        w[3] = 0.5 * (t3 - t2);
    };
    double wr[4], wz[4];
    weights(tr, wr);
    weights(tz, wz);

    double val = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i)
            val += wz[j] * wr[i] *
                   channel[map.index(static_cast<std::size_t>(iz + j - 1),
                                     static_cast<std::size_t>(ir + i - 1))];
    return val;
}

Trajectory integrate_3d(const TrapConfig& config, const State2d& init,
                        double duration, double dt, const FieldMap& map) {
    config.validate();
    check_step(config, duration, dt);

    const double qm = config.ion.charge / config.ion.mass;
    const double v_rf = config.drive.v_rf;
    const double omega = config.drive.omega_rf;

    // Signed meridian coordinate: kappa is even in rho, its rho-derivative odd.
    const auto acc = [&](const double (&x)[2], double t, double (&a)[2]) {
        const double r = std::abs(x[0]);
        const double sign = x[0] < 0.0 ? -1.0 : 1.0;
        const double drive = -qm * v_rf * std::cos(omega * t);
        a[0] = drive * sign * interpolate_map(map, map.dk_drho, r, x[1]);
        a[1] = drive * interpolate_map(map, map.dk_dz, r, x[1]);
    };

    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(duration / dt));
    Trajectory traj;
    traj.reserve(n_steps + 1);
    double x[2] = {init.rho, init.z}, v[2] = {init.v_rho, init.v_z};
    traj.push_back({0.0, x[0], x[1], v[0], v[1]});
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = i * dt;
        try {
            rk4_step(x, v, t, dt, acc);
        } catch (const EscapeError&) {
            throw EscapeError("integrate_3d: particle left field map", t + dt);
        }
        traj.push_back({t + dt, x[0], x[1], v[0], v[1]});
    }
    return traj;
}

Trajectory integrate_3d(const TrapConfig& config, const State2d& init,
                        double duration, double dt) {
    const double z0 = trap_height(config.geometry, config.drive.epsilon);
    const FieldMap map =
        field_map(config, 0.0, 2.0 * z0, 0.2 * z0, 3.0 * z0, 400, 400);
    return integrate_3d(config, init, duration, dt, map);
}

std::vector<MathieuPoint> mathieu_reference(double q, double tau_max, double dtau,
                                            double z_init, double v_init) {
    if (!std::isfinite(q)) throw std::invalid_argument("mathieu_reference: q not finite");
    if (!(dtau > 0.0) || !(tau_max > dtau))
        throw std::invalid_argument("mathieu_reference: require 0 < dtau < tau_max");

    const auto acc = [q](const double (&x)[1], double tau, double (&a)[1]) {
        a[0] = -2.0 * q * std::cos(2.0 * tau) * x[0];
    };
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(tau_max / dtau));
    std::vector<MathieuPoint> out;
    out.reserve(n_steps + 1);
    double x[1] = {z_init}, v[1] = {v_init};
    out.push_back({0.0, x[0], v[0]});
    for (std::size_t i = 0; i < n_steps; ++i) {
        rk4_step(x, v, i * dtau, dtau, acc);
        out.push_back({(i + 1) * dtau, x[0], v[0]});
    }
    return out;
}

std::vector<StabilityPoint> stability_scan(double q_min, double q_max, int n) {
    if (n < 2) throw std::invalid_argument("stability_scan: n must be >= 2");
    // 200 rf periods = tau range of 200 pi.
    const double tau_max = 200.0 * constants::pi;
    const double dtau = 0.005;
    const double growth_threshold = std::log(10.0) / (0.5 * tau_max);

    std::vector<StabilityPoint> out(n);
    for (int i = 0; i < n; ++i) {
        const double q = q_min + (q_max - q_min) * i / (n - 1);
        double worst = 0.0;
        for (int ic = 0; ic < 2; ++ic) {
            const auto traj = mathieu_reference(q, tau_max, dtau,
                                                ic == 0 ? 1.0 : 0.0,
                                                ic == 0 ? 0.0 : 1.0);
            double early = 0.0, late = 0.0;
            for (const auto& p : traj) {
                const double a = std::abs(p.z);
                if (p.tau < 0.25 * tau_max)
                    early = std::max(early, a);
                else if (p.tau > 0.75 * tau_max)
                    late = std::max(late, a);
            }
            const double growth =
                std::log(std::max(late, 1e-300) / std::max(early, 1e-300)) /
                (0.5 * tau_max);
            worst = std::max(worst, growth);
        }
        out[i] = {q, worst < growth_threshold, worst};
    }
    return out;
}

DcResponse micromotion_with_dc(const TrapConfig& config, double e_dc,
                               double duration, double dt) {
    config.validate();
    const double z0 = trap_height(config.geometry, config.drive.epsilon);

    DcResponse res;
    res.trajectory =
        integrate_axial_impl(config, z0, 0.0, duration, dt, {e_dc, 0.0, 0.0});

    // Time-averaged displacement over the settled second half of the record.
    const std::size_t n = res.trajectory.size();
    double mean = 0.0;
    std::size_t count = 0;
    for (std::size_t i = n / 2; i < n; ++i, ++count) mean += res.trajectory[i].z;
    mean /= static_cast<double>(count);
    res.displacement = mean - z0;

    std::vector<double> zs(n);
    for (std::size_t i = 0; i < n; ++i) zs[i] = res.trajectory[i].z;
    const double omega = config.drive.omega_rf;
    try {
        const SpectrumPeak peak =
            dominant_peak(zs, dt, 0.8 * omega, 1.2 * omega);
        res.driven_amplitude = peak.amplitude;
    } catch (const NumericalError&) {
        res.driven_amplitude = 0.0;
    }
    return res;
}

} // namespace ptp
