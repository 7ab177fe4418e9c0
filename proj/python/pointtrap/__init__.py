"""Circular surface-electrode (point) Paul trap toolkit."""

from ._core import (
    CrystalConfiguration,
    EscapeError,
    IonSpecies,
    NoTrapError,
    NumericalError,
    OptimizationResult,
    RfDrive,
    RingGeometry,
    TrapCharacteristics,
    TrapConfig,
    characterize_trap,
    crystal_equilibrium,
    epsilon_critical,
    epsilon_sweep,
    geometric_factor,
    integrate_axial,
    kappa_axial,
    kappa_numeric,
    mathieu_q,
    optimize_depth_at_height,
    planarity,
    pseudopotential,
    secular_frequencies,
    trap_depth,
    trap_height,
    turning_point,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
