"""Smoke tests for the Python bindings."""

import math

import pytest

import pointtrap as pt


@pytest.fixture
def config():
    geom = pt.RingGeometry(650e-6, 3.24e-3)
    drive = pt.RfDrive(300.0, 2 * math.pi * 8.07e6, 0.0)
    return pt.TrapConfig(geom, drive, pt.IonSpecies.sr88())


def test_version():
    assert pt.__version__ == "0.1.0"


def test_trap_height(config):
    z0 = pt.trap_height(config.geometry)
    assert z0 == pytest.approx(958.226e-6, rel=1e-4)
    assert pt.trap_height(config.geometry, 0.52) == pytest.approx(599.3e-6, rel=1e-3)


def test_characterize(config):
    tc = pt.characterize_trap(config)
    assert tc.z0 == pytest.approx(958.226e-6, rel=1e-4)
    assert tc.omega_rho / tc.omega_z == pytest.approx(0.5, abs=0.01)
    assert tc.depth > 0
    omega_z, omega_rho = pt.secular_frequencies(config)
    assert omega_z == tc.omega_z
    assert omega_rho == tc.omega_rho


def test_validation_errors():
    with pytest.raises(ValueError):
        pt.RingGeometry(2e-3, 1e-3)
    with pytest.raises(pt.NoTrapError):
        pt.trap_height(pt.RingGeometry(650e-6, 3.24e-3), 0.95)


def test_optimize():
    r = pt.optimize_depth_at_height(1.0)
    assert r.converged
    assert r.a_over_z0 == pytest.approx(0.651679, rel=1e-4)
    assert r.b_over_z0 == pytest.approx(3.57668, rel=1e-4)
    assert r.d_over_d4rod == pytest.approx(0.0197034, rel=1e-4)


def test_field_functions(config):
    geom = config.geometry
    z0 = pt.trap_height(geom)
    assert pt.kappa_numeric(geom, 0.0, z0, 0.0) == pytest.approx(
        pt.kappa_axial(geom, 0.0, z0), abs=1e-8
    )
    assert pt.pseudopotential(config, z0, 0.0) < 1e-25
    assert pt.trap_depth(config) == pytest.approx(
        pt.pseudopotential(config, pt.turning_point(geom), 0.0), rel=1e-6
    )


def test_epsilon_sweep(config):
    sweep = pt.epsilon_sweep(config, 0.0, 0.5, 6)
    assert len(sweep) == 6
    heights = [e["z0_prime"] for e in sweep]
    assert heights == sorted(heights, reverse=True)
    assert all(e["valid"] for e in sweep)


def test_integrate_axial(config):
    z0 = pt.trap_height(config.geometry)
    traj = pt.integrate_axial(config, 1.01 * z0, 0.0, 1e-5, 1e-9)
    assert len(traj) == 10001
    ts, zs, vs = zip(*traj)
    assert ts[0] == 0.0
    assert max(zs) < 1.1 * z0
    assert min(zs) > 0.9 * z0


def test_crystal(config):
    crystal = pt.crystal_equilibrium(config, 2, seed=1, restarts=4)
    assert crystal.converged
    assert len(crystal.positions) == 2
    planar, spread = pt.planarity(crystal, 1e-3 * pt.trap_height(config.geometry))
    assert planar
