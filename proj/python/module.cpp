#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pointtrap/characterize.hpp"
#include "pointtrap/crystal.hpp"
#include "pointtrap/dynamics.hpp"
#include "pointtrap/fieldcore.hpp"
#include "pointtrap/optimize.hpp"

namespace py = pybind11;
using namespace ptp;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Circular surface-electrode (point) Paul trap toolkit";

    py::register_exception<NoTrapError>(m, "NoTrapError");
    py::register_exception<NumericalError>(m, "NumericalError");
    py::register_exception<EscapeError>(m, "EscapeError");

    py::class_<RingGeometry>(m, "RingGeometry")
        .def(py::init([](double a, double b) {
                 RingGeometry g{a, b};
                 g.validate();
                 return g;
             }),
             py::arg("a"), py::arg("b"))
        .def_readonly("a", &RingGeometry::a)
        .def_readonly("b", &RingGeometry::b);

    py::class_<RfDrive>(m, "RfDrive")
        .def(py::init([](double v_rf, double omega_rf, double epsilon) {
                 RfDrive d{v_rf, omega_rf, epsilon};
                 d.validate();
                 return d;
             }),
             py::arg("v_rf"), py::arg("omega_rf"), py::arg("epsilon") = 0.0)
        .def_readonly("v_rf", &RfDrive::v_rf)
        .def_readonly("omega_rf", &RfDrive::omega_rf)
        .def_readonly("epsilon", &RfDrive::epsilon);

    py::class_<IonSpecies>(m, "IonSpecies")
        .def(py::init([](double charge, double mass) {
                 IonSpecies s{charge, mass};
                 s.validate();
                 return s;
             }),
             py::arg("charge"), py::arg("mass"))
        .def_static("sr88", &IonSpecies::sr88)
        .def_readonly("charge", &IonSpecies::charge)
        .def_readonly("mass", &IonSpecies::mass);

    py::class_<TrapConfig>(m, "TrapConfig")
        .def(py::init([](RingGeometry g, RfDrive d, IonSpecies s) {
                 TrapConfig c{g, d, s};
                 c.validate();
                 return c;
             }),
             py::arg("geometry"), py::arg("drive"), py::arg("species"))
        .def_readonly("geometry", &TrapConfig::geometry)
        .def_readonly("drive", &TrapConfig::drive)
        .def_readonly("ion", &TrapConfig::ion);

    py::class_<TrapCharacteristics>(m, "TrapCharacteristics")
        .def_readonly("z0", &TrapCharacteristics::z0)
        .def_readonly("z_max", &TrapCharacteristics::z_max)
        .def_readonly("f_value", &TrapCharacteristics::f_value)
        .def_readonly("q", &TrapCharacteristics::q)
        .def_readonly("omega_z", &TrapCharacteristics::omega_z)
        .def_readonly("omega_rho", &TrapCharacteristics::omega_rho)
        .def_readonly("depth", &TrapCharacteristics::depth)
        .def_readonly("q_4rod", &TrapCharacteristics::q_4rod)
        .def_readonly("d_4rod", &TrapCharacteristics::d_4rod)
        .def_readonly("epsilon_used", &TrapCharacteristics::epsilon_used);

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("a_over_z0", &OptimizationResult::a_over_z0)
        .def_readonly("b_over_z0", &OptimizationResult::b_over_z0)
        .def_readonly("zmax_over_z0", &OptimizationResult::zmax_over_z0)
        .def_readonly("q_over_q4rod", &OptimizationResult::q_over_q4rod)
        .def_readonly("d_over_d4rod", &OptimizationResult::d_over_d4rod)
        .def_readonly("converged", &OptimizationResult::converged)
        .def_readonly("iterations", &OptimizationResult::iterations);

    py::class_<CrystalConfiguration>(m, "CrystalConfiguration")
        .def_readonly("positions", &CrystalConfiguration::positions)
        .def_readonly("total_energy", &CrystalConfiguration::total_energy)
        .def_readonly("converged", &CrystalConfiguration::converged)
        .def_readonly("max_residual_force", &CrystalConfiguration::max_residual_force);

    m.def("trap_height", &trap_height, py::arg("geometry"), py::arg("epsilon") = 0.0);
    m.def("turning_point", &turning_point, py::arg("geometry"), py::arg("epsilon") = 0.0);
    m.def("epsilon_critical", &epsilon_critical, py::arg("geometry"));
    m.def("geometric_factor",
          py::overload_cast<const RingGeometry&>(&geometric_factor),
          py::arg("geometry"));
    m.def("mathieu_q", &mathieu_q, py::arg("config"));
    m.def("trap_depth", &trap_depth, py::arg("config"));
    m.def(
        "secular_frequencies",
        [](const TrapConfig& c) {
            const SecularFrequencies sf = secular_frequencies(c);
            return py::make_tuple(sf.omega_z, sf.omega_rho);
        },
        py::arg("config"));
    m.def("characterize_trap",
          [](const TrapConfig& c) { return characterize_trap(c); },
          py::arg("config"));

    m.def("kappa_axial", &kappa_axial, py::arg("geometry"), py::arg("epsilon"),
          py::arg("z"));
    m.def(
        "kappa_numeric",
        [](const RingGeometry& g, double epsilon, double z, double rho) {
            const auto stack = three_electrode_stack(g, epsilon);
            return kappa_numeric(stack, z, rho);
        },
        py::arg("geometry"), py::arg("epsilon"), py::arg("z"), py::arg("rho"));
    m.def(
        "pseudopotential",
        [](const TrapConfig& c, double z, double rho) {
            return pseudopotential(c, z, rho);
        },
        py::arg("config"), py::arg("z"), py::arg("rho"));

    m.def("optimize_depth_at_height",
          py::overload_cast<double>(&optimize_depth_at_height),
          py::arg("z0_target"));

    m.def(
        "epsilon_sweep",
        [](const TrapConfig& c, double lo, double hi, int n) {
            py::list out;
            for (const auto& e : epsilon_sweep(c, lo, hi, n))
                out.append(py::dict(
                    py::arg("epsilon") = e.epsilon, py::arg("z0_prime") = e.z0_prime,
                    py::arg("q_prime") = e.q_prime,
                    py::arg("depth_prime") = e.depth_prime, py::arg("valid") = e.valid));
            return out;
        },
        py::arg("config"), py::arg("eps_min"), py::arg("eps_max"), py::arg("n"));

    m.def(
        "integrate_axial",
        [](const TrapConfig& c, double z_init, double v_init, double duration,
           double dt) {
            py::list out;
            for (const auto& p : integrate_axial(c, z_init, v_init, duration, dt))
                out.append(py::make_tuple(p.t, p.z, p.v_z));
            return out;
        },
        py::arg("config"), py::arg("z_init"), py::arg("v_init"),
        py::arg("duration"), py::arg("dt"));

    m.def("crystal_equilibrium",
          [](const TrapConfig& c, int n, std::uint64_t seed, int restarts) {
              return crystal_equilibrium(c, n, seed, restarts);
          },
          py::arg("config"), py::arg("n_ions"), py::arg("seed") = 1,
          py::arg("restarts") = 16);
    m.def(
        "planarity",
        [](const CrystalConfiguration& c, double tol) {
            const auto p = planarity(c, tol);
            return py::make_tuple(p.planar, p.z_spread);
        },
        py::arg("crystal"), py::arg("tol"));
}
