"""Scenario configuration: strict JSON in, validated and fully resolved settings out.

Frequencies are given in Hz (keys ending in ``_hz``), durations in ns and
temperatures in K. Everything is converted to SI / rad/s when the physics
objects are built.
"""

import json
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..blockade import C6_43S_AU, BlockadeParams, LaserParams
from ..exceptions import ConfigError
from ..gas import TRAP_PRESETS, AtomNumberSchedule, TrapConfig
from ..numerics import CONSTANTS, c6_au_to_si

SCENARIOS = ("fig1", "fig2b", "fig3", "scalings", "oracle-sqrtN", "oracle-crossover", "curve")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TrapSettings(_Strict):
    """Harmonic trap. Naming a ``preset`` fills every frequency/atom-number key not given explicitly."""

    preset: str = "default"
    omega_x_hz: float = Field(default=TRAP_PRESETS["default"][0], gt=0)
    omega_y_hz: float = Field(default=TRAP_PRESETS["default"][1], gt=0)
    omega_z_hz: float = Field(default=TRAP_PRESETS["default"][2], gt=0)
    atom_number: float = Field(default=TRAP_PRESETS["default"][3], ge=1)
    scattering_length_a0: float = Field(default=98.0, gt=0)
    # "ramp" (default anchors), "constant" (atom_number at every T) or explicit [[T_K, N], ...]
    schedule: Literal["ramp", "constant"] | list[tuple[float, float]] = "ramp"

    @model_validator(mode="before")
    @classmethod
    def _fill_preset(cls, data):
        if isinstance(data, dict) and "preset" in data:
            name = data["preset"]
            if name not in TRAP_PRESETS:
                raise ValueError(f"unknown trap preset {name!r}; choose from {sorted(TRAP_PRESETS)}")
            fx, fy, fz, n = TRAP_PRESETS[name]
            data = {"omega_x_hz": fx, "omega_y_hz": fy, "omega_z_hz": fz, "atom_number": n, **data}
        return data

    @field_validator("schedule")
    @classmethod
    def _check_anchors(cls, value):
        if isinstance(value, list):
            if len(value) < 2:
                raise ValueError("an explicit schedule needs at least two [T_K, N] anchors")
            if any(t <= 0 or n < 1 for t, n in value):
                raise ValueError("schedule anchors need T_K > 0 and N >= 1")
        return value

    def build(self):
        return TrapConfig.from_hz(self.omega_x_hz, self.omega_y_hz, self.omega_z_hz, self.atom_number,
                                  scattering_length=self.scattering_length_a0 * CONSTANTS.bohr_radius)

    def build_schedule(self):
        if self.schedule == "ramp":
            return AtomNumberSchedule()
        if self.schedule == "constant":
            return AtomNumberSchedule.constant(self.atom_number)
        return AtomNumberSchedule(tuple(tuple(a) for a in self.schedule))


class BlockadeSettings(_Strict):
    c6_au: float = C6_43S_AU
    kappa: float = Field(default=0.3, gt=0)
    z_lattice: float = Field(default=14.5, gt=0)
    omega1_hz: float = Field(default=11e6, gt=0)
    omega2_hz: float = Field(default=9.7e6, gt=0)
    detuning_hz: float = Field(default=483e6, gt=0)
    linewidth_hz: float = Field(default=6.07e6, ge=0)
    rabi_reduction: float = Field(default=5.5, gt=0)
    clip: bool = False

    @field_validator("c6_au")
    @classmethod
    def _nonzero(cls, value):
        if value == 0:
            raise ValueError("c6_au must be non-zero")
        return value

    def lasers(self):
        return LaserParams.from_hz(self.omega1_hz, self.omega2_hz, self.detuning_hz, self.linewidth_hz)

    def build(self):
        return BlockadeParams.from_lasers(self.lasers(), rabi_reduction=self.rabi_reduction,
                                          c6=c6_au_to_si(self.c6_au), z_lattice=self.z_lattice,
                                          kappa=self.kappa)


class SweepSettings(_Strict):
    """Temperatures either as an explicit list or as a log-spaced range."""

    temperatures_k: list[float] | None = None
    t_min_k: float = Field(default=200e-9, gt=0)
    t_max_k: float = Field(default=5e-6, gt=0)
    points: int = Field(default=30, ge=1)
    durations_ns: list[float] = Field(default=[170.0, 320.0, 370.0, 1970.0], min_length=1)
    workers: int = Field(default=1, ge=1)

    @field_validator("temperatures_k")
    @classmethod
    def _temps(cls, value):
        if value is not None:
            if len(value) == 0:
                raise ValueError("temperature list must not be empty")
            if any(not t > 0 for t in value):
                raise ValueError("temperatures must be positive")
        return value

    @field_validator("durations_ns")
    @classmethod
    def _durations(cls, value):
        if any(not d > 0 for d in value):
            raise ValueError("pulse durations must be positive")
        return value

    @model_validator(mode="after")
    def _range(self):
        if self.temperatures_k is None and not self.t_max_k > self.t_min_k:
            raise ValueError("t_max_k must exceed t_min_k")
        return self

    def temperatures(self):
        if self.temperatures_k is not None:
            return np.array(sorted(self.temperatures_k))
        return np.geomspace(self.t_min_k, self.t_max_k, self.points)

    def durations(self):
        return tuple(d * 1e-9 for d in self.durations_ns)


class Fig3Settings(_Strict):
    points: int = Field(default=401, ge=2)
    # radial extent in units of the thermal radius where V = 6 k_B T
    extent: float = Field(default=1.0, gt=0)


class CurveSettings(_Strict):
    temperature_k: float = Field(default=200e-9, gt=0)
    t_max_ns: float = Field(default=2000.0, gt=0)
    points: int = Field(default=201, ge=2)
    component: Literal["total", "thermal"] = "total"


class ScalingSettings(_Strict):
    peak_density_min: float = Field(default=1e19, gt=0)
    peak_density_max: float = Field(default=1e20, gt=0)
    omega0_factor_min: float = Field(default=0.5, gt=0)
    omega0_factor_max: float = Field(default=2.0, gt=0)
    points: int = Field(default=5, ge=3)
    width_m: float = Field(default=5e-6, gt=0)
    tau_long_us: float = Field(default=200.0, gt=0)

    @model_validator(mode="after")
    def _decade(self):
        if not self.peak_density_max >= 10 * self.peak_density_min:
            raise ValueError("peak densities must span at least one decade")
        if not self.omega0_factor_max > self.omega0_factor_min:
            raise ValueError("omega0_factor_max must exceed omega0_factor_min")
        return self


class OracleSettings(_Strict):
    atoms: list[int] = Field(default=[1, 2, 3, 4, 5, 6, 7, 8], min_length=1)
    # minimum pair shift in units of hbar sqrt(N) Omega_0
    blockade_strength: float = Field(default=1e3, gt=0)
    periods: float = Field(default=30.0, gt=0)
    samples: int = Field(default=1024, ge=16)
    crossover_min: float = Field(default=0.1, gt=0)
    crossover_max: float = Field(default=10.0, gt=0)
    crossover_points: int = Field(default=25, ge=3)

    @field_validator("atoms")
    @classmethod
    def _atoms(cls, value):
        if any(n < 1 or n > 14 for n in value):
            raise ValueError("oracle atom numbers must lie in 1..14")
        return value

    @model_validator(mode="after")
    def _crossover(self):
        if not self.crossover_max > self.crossover_min:
            raise ValueError("crossover_max must exceed crossover_min")
        return self


class ScenarioConfig(_Strict):
    scenario: Literal["fig1", "fig2b", "fig3", "scalings", "oracle-sqrtN", "oracle-crossover", "curve"]
    output_dir: str = "superatom-out"
    seed: int = Field(default=0, ge=0)
    trap: TrapSettings = TrapSettings()
    blockade: BlockadeSettings = BlockadeSettings()
    sweep: SweepSettings = SweepSettings()
    fig3: Fig3Settings = Fig3Settings()
    curve: CurveSettings = CurveSettings()
    scalings: ScalingSettings = ScalingSettings()
    oracle: OracleSettings = OracleSettings()

    def resolved(self):
        """Every setting, defaults included, as plain JSON-compatible data."""
        return self.model_dump(mode="json")


def _reject_duplicates(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ConfigError([(key, "duplicate key")])
        seen[key] = value
    return seen


def _location(loc):
    return ".".join(str(part) for part in loc if not str(part).startswith("function-")) or "<root>"


def validate_config(text):
    """Parse and validate a JSON config document, reporting every problem at once.

    Raises
    ------
    ConfigError
        With ``problems`` listing ``(key path, message)`` pairs.
    """
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError([(f"line {exc.lineno} column {exc.colno}", f"JSON syntax error: {exc.msg}")]) from None
    if not isinstance(raw, dict):
        raise ConfigError([("<root>", "config must be a JSON object")])
    try:
        return ScenarioConfig.model_validate(raw)
    except ValidationError as exc:
        problems = []
        for err in exc.errors():
            msg = err["msg"].removeprefix("Value error, ")
            problems.append((_location(err["loc"]), msg))
        raise ConfigError(problems) from None


def default_config(scenario="fig2b"):
    return ScenarioConfig(scenario=scenario)
