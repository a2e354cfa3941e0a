"""Superatom model of Rydberg excitation in trapped Bose gases across the BEC transition."""

from .blockade import (
    BlockadeParams,
    LaserParams,
    LocalBlockade,
    blockade_radius_from_density,
    fcc_lattice_sum,
    saturation_density,
    scattering_probability,
    two_photon_rabi,
)
from .dynamics import (
    ExcitationCurve,
    SweepResult,
    excitation_curve,
    fraction_regime_exponents,
    fraction_sweep,
    initial_slope,
    rydberg_number,
    saturation_number,
    superatom_count,
)
from .estimators import PowerLawRegressor, RydbergFractionModel, SuperatomTransformer
from .gas import (
    AtomNumberSchedule,
    DensityProfile,
    GasState,
    TrapConfig,
    critical_temperature,
    density_profile,
    equilibrium_state,
)
from .oracle import OracleSystem, blockade_crossover, evolve

__version__ = "0.1.0"

__all__ = [
    "AtomNumberSchedule",
    "BlockadeParams",
    "DensityProfile",
    "ExcitationCurve",
    "GasState",
    "LaserParams",
    "LocalBlockade",
    "OracleSystem",
    "PowerLawRegressor",
    "RydbergFractionModel",
    "SuperatomTransformer",
    "SweepResult",
    "TrapConfig",
    "blockade_crossover",
    "blockade_radius_from_density",
    "critical_temperature",
    "density_profile",
    "equilibrium_state",
    "evolve",
    "excitation_curve",
    "fcc_lattice_sum",
    "fraction_regime_exponents",
    "fraction_sweep",
    "initial_slope",
    "rydberg_number",
    "saturation_density",
    "saturation_number",
    "scattering_probability",
    "superatom_count",
    "two_photon_rabi",
]
