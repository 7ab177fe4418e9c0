// Command-line front end: trap characterization, depth optimization, epsilon
// sweeps, field maps, trajectory simulation, and crystal equilibria.
//
// Exit codes: 0 success, 2 input/config error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pointtrap/characterize.hpp"
#include "pointtrap/config.hpp"
#include "pointtrap/crystal.hpp"
#include "pointtrap/dynamics.hpp"
#include "pointtrap/fieldcore.hpp"
#include "pointtrap/optimize.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

double cli_quantity(const std::string& text, ptp::Unit unit, const std::string& flag) {
    // Accept plain SI numbers and unit-suffixed strings on the command line.
    try {
        return ptp::parse_quantity(json(text), unit, flag);
    } catch (const ptp::ConfigError&) {
        return ptp::parse_quantity(json::parse(text), unit, flag);
    }
}

// Writes through a temp file; removes partial output on failure.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& comment,
              const std::string& header)
        : path_(path), tmp_(path + ".tmp"), out_(path.empty() ? nullptr : new std::ofstream(tmp_)) {
        std::ostream& os = stream();
        os << "# " << comment << "\n" << header << "\n";
    }
    std::ostream& stream() { return out_ ? *out_ : std::cout; }
    void commit() {
        if (!out_) return;
        out_->flush();
        if (!*out_) throw std::runtime_error("write failed: " + tmp_);
        out_.reset();
        std::filesystem::rename(tmp_, path_);
        committed_ = true;
    }
    ~CsvWriter() {
        if (out_) out_.reset();
        if (!committed_ && !path_.empty()) {
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

private:
    std::string path_, tmp_;
    std::unique_ptr<std::ofstream> out_;
    bool committed_ = false;
};

std::string file_comment(const ptp::TrapConfig& config) {
    return std::string("pointtrap ") + ptp::version_string +
           " config=" + ptp::config_hash(config);
}

json characteristics_json(const ptp::TrapConfig& config) {
    const ptp::TrapCharacteristics c = ptp::characterize_trap(config);
    const double two_pi = 2.0 * ptp::constants::pi;
    return json{
        {"tool", {{"name", "pointtrap"}, {"version", ptp::version_string}}},
        {"input", ptp::config_to_json(config)},
        {"characteristics",
         {{"z0_m", c.z0},
          {"z_max_m", c.z_max},
          {"f_per_m2", c.f_value},
          {"q", c.q},
          {"omega_z_rad_s", c.omega_z},
          {"omega_rho_rad_s", c.omega_rho},
          {"depth_J", c.depth},
          {"q_4rod", c.q_4rod},
          {"d_4rod_J", c.d_4rod},
          {"epsilon", c.epsilon_used},
          {"epsilon_critical", ptp::epsilon_critical(config.geometry)}}},
        {"convenience",
         {{"z0_um", c.z0 * 1e6},
          {"z_max_um", c.z_max * 1e6},
          {"omega_z_2pi_kHz", c.omega_z / two_pi / 1e3},
          {"omega_rho_2pi_kHz", c.omega_rho / two_pi / 1e3},
          {"omega_rho_over_omega_z", c.omega_rho / c.omega_z},
          {"depth_eV", c.depth / ptp::constants::ev},
          {"q_over_q4rod", c.q / c.q_4rod},
          {"d_over_d4rod", c.depth / c.d_4rod}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circular surface-electrode (point) Paul trap toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::function<void()> action;

    // characterize
    auto* cmd_char = app.add_subcommand("characterize", "Report trap metrics as JSON");
    cmd_char->add_option("--config", config_path, "Trap config JSON")->required();
    cmd_char->callback([&] {
        action = [&] {
            const auto config = ptp::load_config(config_path);
            std::cout << characteristics_json(config).dump(2) << "\n";
        };
    });

    // optimize
    std::string height_text = "1";
    auto* cmd_opt = app.add_subcommand("optimize", "Maximize depth at fixed trap height");
    cmd_opt->add_option("--height", height_text, "Target z0 (SI number or e.g. 1mm)")
        ->required();
    cmd_opt->callback([&] {
        action = [&] {
            const double z0 = cli_quantity(height_text, ptp::Unit::Length, "--height");
            const auto r = ptp::optimize_depth_at_height(z0);
            std::cout << json{{"tool", {{"name", "pointtrap"}, {"version", ptp::version_string}}},
                              {"z0_target_m", z0},
                              {"a_over_z0", r.a_over_z0},
                              {"b_over_z0", r.b_over_z0},
                              {"zmax_over_z0", r.zmax_over_z0},
                              {"q_over_q4rod", r.q_over_q4rod},
                              {"d_over_d4rod", r.d_over_d4rod},
                              {"a_m", r.a_over_z0 * z0},
                              {"b_m", r.b_over_z0 * z0},
                              {"converged", r.converged},
                              {"iterations", r.iterations}}
                             .dump(2)
                      << "\n";
        };
    });

    // sweep-epsilon
    double eps_from = 0.0, eps_to = 0.8;
    int steps = 81;
    auto* cmd_sweep = app.add_subcommand("sweep-epsilon", "Height/q/depth vs drive ratio");
    cmd_sweep->add_option("--config", config_path, "Trap config JSON")->required();
    cmd_sweep->add_option("--from", eps_from, "Start epsilon")->required();
    cmd_sweep->add_option("--to", eps_to, "End epsilon")->required();
    cmd_sweep->add_option("--steps", steps, "Number of rows")->required();
    cmd_sweep->add_option("--out", out_path, "CSV output path (default stdout)");
    cmd_sweep->callback([&] {
        action = [&] {
            const auto config = ptp::load_config(config_path);
            const auto sweep = ptp::epsilon_sweep(config, eps_from, eps_to, steps);
            CsvWriter csv(out_path, file_comment(config),
                          "epsilon,z0_prime_m,q_prime,depth_prime_J,valid,depth_limited_below");
            char line[256];
            for (const auto& e : sweep) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                              e.epsilon, e.z0_prime, e.q_prime, e.depth_prime,
                              e.valid ? 1 : 0, e.depth_limited_below ? 1 : 0);
                csv.stream() << line;
            }
            csv.commit();
        };
    });

    // fieldmap
    std::string rho_max_text, z_min_text, z_max_text;
    int n_grid = 64;
    auto* cmd_map = app.add_subcommand("fieldmap", "Sample kappa and Psi over a grid");
    cmd_map->add_option("--config", config_path, "Trap config JSON")->required();
    cmd_map->add_option("--rho-max", rho_max_text, "Radial extent")->required();
    cmd_map->add_option("--z-min", z_min_text, "Lower axial bound")->required();
    cmd_map->add_option("--z-max", z_max_text, "Upper axial bound")->required();
    cmd_map->add_option("--n", n_grid, "Grid points per axis")->required();
    cmd_map->add_option("--out", out_path, "CSV output path (default stdout)");
    cmd_map->callback([&] {
        action = [&] {
            const auto config = ptp::load_config(config_path);
            const double rho_max = cli_quantity(rho_max_text, ptp::Unit::Length, "--rho-max");
            const double z_min = cli_quantity(z_min_text, ptp::Unit::Length, "--z-min");
            const double z_max = cli_quantity(z_max_text, ptp::Unit::Length, "--z-max");
            const auto map =
                ptp::field_map(config, 0.0, rho_max, z_min, z_max, n_grid, n_grid);
            CsvWriter csv(out_path, file_comment(config),
                          "rho_m,z_m,kappa,psi_J,dkappa_dz_per_m,dkappa_drho_per_m");
            char line[256];
            for (std::size_t iz = 0; iz < map.z.size(); ++iz)
                for (std::size_t ir = 0; ir < map.rho.size(); ++ir) {
                    const std::size_t k = map.index(iz, ir);
                    std::snprintf(line, sizeof line,
                                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                                  map.rho[ir], map.z[iz], map.kappa[k], map.psi[k],
                                  map.dk_dz[k], map.dk_drho[k]);
                    csv.stream() << line;
                }
            csv.commit();
        };
    });

    // simulate
    std::string mode = "axial";
    std::string duration_text, dt_text, z_init_text, rho_init_text;
    double v_init = 0.0;
    auto* cmd_sim = app.add_subcommand("simulate", "Integrate a trajectory in the rf field");
    cmd_sim->add_option("--config", config_path, "Trap config JSON")->required();
    cmd_sim->add_option("--mode", mode, "axial or 3d")
        ->check(CLI::IsMember({"axial", "3d"}));
    cmd_sim->add_option("--duration", duration_text, "Duration (s; default 500 rf periods)");
    cmd_sim->add_option("--dt", dt_text, "Time step (s; default rf period / 100)");
    cmd_sim->add_option("--z-init", z_init_text, "Initial z (default z0 + 1% z0)");
    cmd_sim->add_option("--rho-init", rho_init_text, "Initial rho, 3d mode (default 1% z0)");
    cmd_sim->add_option("--v-init", v_init, "Initial axial velocity (m/s)");
    cmd_sim->add_option("--out", out_path, "CSV output path (default stdout)");
    cmd_sim->callback([&] {
        action = [&] {
            const auto config = ptp::load_config(config_path);
            const double period = 2.0 * ptp::constants::pi / config.drive.omega_rf;
            const double dt =
                dt_text.empty() ? period / 100.0
                                : cli_quantity(dt_text, ptp::Unit::Dimensionless, "--dt");
            const double duration =
                duration_text.empty()
                    ? 500.0 * period
                    : cli_quantity(duration_text, ptp::Unit::Dimensionless, "--duration");
            const double z0 =
                ptp::trap_height(config.geometry, config.drive.epsilon);
            const double z_init =
                z_init_text.empty() ? 1.01 * z0
                                    : cli_quantity(z_init_text, ptp::Unit::Length, "--z-init");

            ptp::Trajectory traj;
            if (mode == "axial") {
                traj = ptp::integrate_axial(config, z_init, v_init, duration, dt);
            } else {
                const double rho_init =
                    rho_init_text.empty()
                        ? 0.01 * z0
                        : cli_quantity(rho_init_text, ptp::Unit::Length, "--rho-init");
                traj = ptp::integrate_3d(config, {rho_init, z_init, 0.0, v_init},
                                         duration, dt);
            }
            CsvWriter csv(out_path, file_comment(config),
                          "t_s,rho_m,z_m,v_rho_mps,v_z_mps");
            char line[256];
            for (const auto& p : traj) {
                std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                              p.t, p.rho, p.z, p.v_rho, p.v_z);
                csv.stream() << line;
            }
            csv.commit();
        };
    });

    // crystal
    int n_ions = 1, restarts = 16;
    std::uint64_t seed = 1;
    auto* cmd_cry = app.add_subcommand("crystal", "N-ion equilibrium configuration");
    cmd_cry->add_option("--config", config_path, "Trap config JSON")->required();
    cmd_cry->add_option("--n", n_ions, "Number of ions")->required();
    cmd_cry->add_option("--seed", seed, "RNG seed");
    cmd_cry->add_option("--restarts", restarts, "Random restarts");
    cmd_cry->add_option("--out", out_path, "Positions CSV path (default stdout)");
    cmd_cry->callback([&] {
        action = [&] {
            const auto config = ptp::load_config(config_path);
            const auto crystal =
                ptp::crystal_equilibrium(config, n_ions, seed, restarts);
            const double z0 = ptp::trap_height(config.geometry, config.drive.epsilon);
            const auto plan = ptp::planarity(crystal, 1e-3 * z0);
            {
                CsvWriter csv(out_path, file_comment(config), "ion,x_m,y_m,z_m");
                char line[256];
                for (std::size_t i = 0; i < crystal.positions.size(); ++i) {
                    const auto& p = crystal.positions[i];
                    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", i,
                                  p[0], p[1], p[2]);
                    csv.stream() << line;
                }
                csv.commit();
            }
            if (!out_path.empty()) // summary JSON on stdout alongside the file
                std::cout << json{{"n_ions", n_ions},
                                  {"total_energy_J", crystal.total_energy},
                                  {"converged", crystal.converged},
                                  {"max_residual_force_N", crystal.max_residual_force},
                                  {"planar", plan.planar},
                                  {"z_spread_m", plan.z_spread}}
                                 .dump(2)
                          << "\n";
        };
    });

    CLI11_PARSE(app, argc, argv);

    try {
        action();
    } catch (const ptp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ptp::NoTrapError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ptp::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const ptp::EscapeError& e) {
        std::cerr << "numerical error: " << e.what() << " (t=" << e.time << " s)\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
