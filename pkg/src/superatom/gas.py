"""Ideal-Bose two-fluid model of a harmonically trapped 87Rb cloud.

The thermal component follows the semiclassical Bose distribution of a
non-interacting gas; below T_c the condensate is added as a Thomas-Fermi
inverted parabola. The anisotropic trap is replaced by an isotropic one at
the geometric-mean frequency, so every profile is a function of a single
radius ``r`` with ``V(r) = m omega_bar^2 r^2 / 2``.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import InputError
from .numerics import CONSTANTS, ZETA_3, ZETA_3_2, hz_to_angular, integrate_radial, polylog, solve_monotone

__all__ = [
    "TrapConfig",
    "GasState",
    "RadialProfile",
    "DensityProfile",
    "UniformProfile",
    "GaussianProfile",
    "ScaledProfile",
    "AtomNumberSchedule",
    "critical_temperature",
    "equilibrium_state",
    "density_profile",
    "nearest_neighbour_distance",
    "debroglie_wavelength",
    "DEFAULT_SCATTERING_LENGTH",
    "THERMAL_CUTOFF_KT",
]

DEFAULT_SCATTERING_LENGTH = 98.0 * CONSTANTS.bohr_radius
# thermal profiles are truncated where V(r) reaches this many k_B T
THERMAL_CUTOFF_KT = 40.0


@dataclass(frozen=True)
class TrapConfig:
    """Harmonic trap plus the atomic sample held in it. Frequencies in rad/s."""

    omega_x: float
    omega_y: float
    omega_z: float
    atom_number: float
    scattering_length: float = DEFAULT_SCATTERING_LENGTH
    mass: float = CONSTANTS.mass_rb87

    def __post_init__(self):
        for name in ("omega_x", "omega_y", "omega_z", "scattering_length", "mass"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if not self.atom_number >= 1:
            raise InputError("atom_number must be at least 1")

    @classmethod
    def from_hz(cls, fx, fy, fz, atom_number, **kwargs):
        return cls(hz_to_angular(fx), hz_to_angular(fy), hz_to_angular(fz), atom_number, **kwargs)

    @classmethod
    def preset(cls, name="default", **overrides):
        """Built-in trap presets.

        ``default`` is a cigar-shaped Ioffe-type trap (360 Hz radial, 71 Hz
        axial, geometric mean ~210 Hz) with 4e5 atoms, which puts the ideal-gas
        T_c at ~700 nK. It is a calibrated stand-in, not a measured trap.
        """
        if name not in TRAP_PRESETS:
            raise InputError(f"unknown trap preset {name!r}; choose from {sorted(TRAP_PRESETS)}")
        fx, fy, fz, n = TRAP_PRESETS[name]
        return cls.from_hz(fx, fy, fz, n, **overrides)

    @property
    def omega_bar(self):
        return float(np.cbrt(self.omega_x * self.omega_y * self.omega_z))

    @property
    def oscillator_length(self):
        return float(np.sqrt(CONSTANTS.hbar / (self.mass * self.omega_bar)))

    @property
    def interaction_strength(self):
        """Contact coupling g = 4 pi hbar^2 a / m (J m^3)."""
        return 4.0 * np.pi * CONSTANTS.hbar**2 * self.scattering_length / self.mass

    def with_atom_number(self, atom_number):
        return replace(self, atom_number=float(atom_number))

    def potential(self, r):
        return 0.5 * self.mass * self.omega_bar**2 * np.asarray(r, dtype=float) ** 2


TRAP_PRESETS = {
    # name: (f_x Hz, f_y Hz, f_z Hz, atom number)
    "default": (360.0, 360.0, 71.0, 4e5),
    "isotropic-100hz": (100.0, 100.0, 100.0, 1e6),
}


@dataclass(frozen=True)
class GasState:
    temperature: float
    fugacity: float
    chemical_potential: float
    n_thermal: float
    n_condensate: float
    critical_temperature: float

    @property
    def atom_number(self):
        return self.n_thermal + self.n_condensate

    @property
    def condensate_fraction(self):
        return self.n_condensate / self.atom_number

    @property
    def condensed(self):
        return self.n_condensate > 0


def critical_temperature(trap):
    """Ideal-gas condensation temperature in a harmonic trap (K)."""
    return CONSTANTS.hbar * trap.omega_bar / CONSTANTS.k_B * np.cbrt(trap.atom_number / ZETA_3)


def debroglie_wavelength(temperature, mass=CONSTANTS.mass_rb87):
    """Thermal de Broglie wavelength h / sqrt(2 pi m k_B T) (m)."""
    if not np.all(np.asarray(temperature) > 0):
        raise InputError("temperature must be positive")
    return CONSTANTS.h / np.sqrt(2.0 * np.pi * mass * CONSTANTS.k_B * temperature)


def nearest_neighbour_distance(density):
    """Mean distance to the nearest neighbour in an ideal random gas, 0.55 n^(-1/3)."""
    if not np.all(np.asarray(density) > 0):
        raise InputError("density must be positive")
    return 0.55 * np.cbrt(1.0 / np.asarray(density, dtype=float))


def equilibrium_state(trap, temperature):
    """Thermal and condensed atom numbers at ``temperature``.

    Above T_c the fugacity solves ``Li_3(z) = N (hbar omega_bar / k_B T)^3``;
    below it ``z = 1`` and the excess atoms form a Thomas-Fermi condensate.
    """
    if not temperature > 0:
        raise InputError("temperature must be positive")
    t_c = critical_temperature(trap)
    n_total = float(trap.atom_number)
    thermal_capacity = ZETA_3 * (CONSTANTS.k_B * temperature / (CONSTANTS.hbar * trap.omega_bar)) ** 3

    if thermal_capacity >= n_total:
        target = n_total / thermal_capacity * ZETA_3
        z = solve_monotone(lambda x: polylog(3.0, x) - target, 0.0, 1.0)
        return GasState(temperature, z, 0.0, n_total, 0.0, t_c)

    n_cond = n_total - thermal_capacity
    mu = 0.5 * CONSTANTS.hbar * trap.omega_bar * (
        15.0 * n_cond * trap.scattering_length / trap.oscillator_length) ** 0.4
    return GasState(temperature, 1.0, mu, thermal_capacity, n_cond, t_c)


class RadialProfile:
    """Spherically symmetric density ``n(r)`` in m^-3.

    Subclasses provide ``__call__``, ``r_max`` (support or truncation radius)
    and ``breakpoints`` (radii where ``n`` has kinks).
    """

    breakpoints = ()

    def __call__(self, r):
        raise NotImplementedError

    @property
    def peak_density(self):
        return float(self(np.zeros(1))[0])

    def atom_number(self, rtol=1e-10):
        return integrate_radial(self, self.r_max, rtol=rtol, breakpoints=self.breakpoints)


@dataclass(frozen=True)
class UniformProfile(RadialProfile):
    """Constant density inside a sphere; zero outside."""

    density: float
    radius: float

    def __post_init__(self):
        if self.density < 0 or not self.radius > 0:
            raise InputError("uniform profile needs density >= 0 and radius > 0")

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.radius, self.density, 0.0)

    @property
    def r_max(self):
        return self.radius

    @property
    def volume(self):
        return 4.0 / 3.0 * np.pi * self.radius**3

    def atom_number(self, rtol=1e-10):
        return self.density * self.volume


@dataclass(frozen=True)
class GaussianProfile(RadialProfile):
    """Classical thermal cloud ``n0 exp(-r^2 / 2 sigma^2)``, truncated at ``cutoff`` sigma."""

    peak: float
    sigma: float
    cutoff: float = np.sqrt(2.0 * THERMAL_CUTOFF_KT)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        return self.peak * np.exp(-0.5 * (r / self.sigma) ** 2)

    @property
    def r_max(self):
        return self.cutoff * self.sigma


@dataclass(frozen=True)
class ScaledProfile(RadialProfile):
    """``factor * base(r)``: same shape, rescaled density."""

    base: RadialProfile
    factor: float

    def __call__(self, r):
        return self.factor * self.base(r)

    @property
    def r_max(self):
        return self.base.r_max

    @property
    def breakpoints(self):
        return self.base.breakpoints


@dataclass(frozen=True)
class DensityProfile(RadialProfile):
    """In-trap density of a :class:`GasState`: Bose thermal cloud plus Thomas-Fermi condensate."""

    trap: TrapConfig
    state: GasState
    include_condensate: bool = True
    _beta: float = field(init=False, repr=False)
    _lambda3: float = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_beta", 1.0 / (CONSTANTS.k_B * self.state.temperature))
        lam = debroglie_wavelength(self.state.temperature, self.trap.mass)
        object.__setattr__(self, "_lambda3", lam**3)

    def thermal(self, r):
        arg = self.state.fugacity * np.exp(-self._beta * self.trap.potential(r))
        return polylog(1.5, arg) / self._lambda3

    def condensate(self, r):
        if not (self.include_condensate and self.state.condensed):
            return np.zeros_like(np.asarray(r, dtype=float))
        return np.maximum(0.0, self.state.chemical_potential - self.trap.potential(r)) / self.trap.interaction_strength

    def __call__(self, r):
        return self.thermal(r) + self.condensate(r)

    def thermal_only(self):
        """Same state with the condensate component removed."""
        return replace(self, include_condensate=False)

    @property
    def tf_radius(self):
        mu = self.state.chemical_potential
        return float(np.sqrt(2.0 * mu / (self.trap.mass * self.trap.omega_bar**2))) if mu > 0 else 0.0

    @property
    def thermal_radius(self):
        """Radius where V(r) = THERMAL_CUTOFF_KT k_B T."""
        return float(np.sqrt(2.0 * THERMAL_CUTOFF_KT * CONSTANTS.k_B * self.state.temperature
                             / (self.trap.mass * self.trap.omega_bar**2)))

    @property
    def r_max(self):
        return max(self.thermal_radius, self.tf_radius)

    @property
    def breakpoints(self):
        if self.include_condensate and self.state.condensed:
            return (self.tf_radius,)
        return ()

    @property
    def peak_thermal(self):
        return float(self.thermal(np.zeros(1))[0])

    @property
    def peak_condensate(self):
        return float(self.condensate(np.zeros(1))[0])

    def thermal_number(self, rtol=1e-10):
        return integrate_radial(self.thermal, self.thermal_radius, rtol=rtol)

    def condensate_number(self, rtol=1e-10):
        if not self.state.condensed:
            return 0.0
        return integrate_radial(self.condensate, self.tf_radius, rtol=rtol)


def density_profile(trap, state):
    return DensityProfile(trap, state)


@dataclass(frozen=True)
class AtomNumberSchedule:
    """Total atom number as a function of temperature along an evaporation ramp.

    ``ln N`` is interpolated linearly in ``ln T`` between ``anchors``
    ``((T_1, N_1), (T_2, N_2), ...)`` and extrapolated from the end segments.
    The default ramp runs from 1e7 atoms at 5 uK to 1e5 at 200 nK and passes
    through the ``default`` trap preset's 4e5 atoms at 700 nK.
    """

    anchors: tuple = ((200e-9, 1e5), (700e-9, 4e5), (5e-6, 1e7))

    def __post_init__(self):
        pts = tuple(sorted((float(t), float(n)) for t, n in self.anchors))
        if len(pts) < 2:
            raise InputError("schedule needs at least two (T, N) anchors")
        if any(t <= 0 or n < 1 for t, n in pts):
            raise InputError("schedule anchors need T > 0 and N >= 1")
        if len({t for t, _ in pts}) != len(pts):
            raise InputError("schedule anchor temperatures must be distinct")
        object.__setattr__(self, "anchors", pts)

    @classmethod
    def constant(cls, atom_number):
        return cls(((1e-9, atom_number), (1.0, atom_number)))

    def __call__(self, temperature):
        lt = np.log([t for t, _ in self.anchors])
        ln = np.log([n for _, n in self.anchors])
        x = np.log(temperature)
        i = int(np.clip(np.searchsorted(lt, x) - 1, 0, len(lt) - 2))
        slope = (ln[i + 1] - ln[i]) / (lt[i + 1] - lt[i])
        return float(np.exp(ln[i] + slope * (x - lt[i])))

    def trap_at(self, trap, temperature):
        return trap.with_atom_number(self(temperature))

    def critical_temperature(self, trap, lo=1e-9, hi=1e-3):
        """Temperature where the ramp crosses T = T_c(N(T))."""
        def gap(log_t):
            t = np.exp(log_t)
            return log_t - np.log(critical_temperature(self.trap_at(trap, t)))
        return float(np.exp(solve_monotone(gap, np.log(lo), np.log(hi))))
