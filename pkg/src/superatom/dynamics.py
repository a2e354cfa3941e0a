"""Ensemble dynamics of independent superatoms over a density profile.

Every point of the cloud carries a superatom of density ``n_R(r)`` oscillating
at ``Omega_c(r)``; the Rydberg number after a square pulse of length ``tau`` is

    N_R(tau) = int n_R(r) sin^2(Omega_c(r) tau / 2) d^3r
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .blockade import saturation_density
from .exceptions import InputError, RegimeError, ResolutionError
from .gas import DensityProfile, critical_temperature, equilibrium_state
from .numerics import fit_power_law, integrate_radial, solve_monotone

__all__ = [
    "ExcitationCurve",
    "SweepRecord",
    "SweepResult",
    "RegimeExponents",
    "local_fields",
    "rydberg_number",
    "saturation_number",
    "superatom_count",
    "characteristic_time",
    "initial_slope",
    "excitation_curve",
    "linear_regime_time",
    "fraction_sweep",
    "fraction_regime_exponents",
    "KinkReport",
    "kink_analysis",
    "DEFAULT_DURATIONS",
    "default_temperatures",
]

DEFAULT_DURATIONS = (170e-9, 320e-9, 370e-9, 1970e-9)
QUAD_RTOL = 1e-8


def default_temperatures(n=30, t_min=200e-9, t_max=5e-6):
    return tuple(np.geomspace(t_min, t_max, n))


def local_fields(profile, params, clip=False):
    """Return ``r -> (n_R(r), Omega_c(r))`` for a profile.

    With ``clip`` the saturation density is capped at the ground-state
    density (one atom per superatom, single-atom Rabi frequency).
    """
    def fields(r):
        n_g = profile(r)
        loc = saturation_density(n_g, params)
        if not clip:
            return loc.n_r, loc.collective_rabi
        n_r = np.minimum(loc.n_r, n_g)
        with np.errstate(divide="ignore", invalid="ignore"):
            omega = np.where(n_r > 0, np.sqrt(n_g / np.where(n_r > 0, n_r, 1.0)) * params.omega0, 0.0)
        return n_r, omega
    return fields


def _radius(profile, r_max):
    if r_max is None:
        return profile.r_max
    return min(float(r_max), profile.r_max)


def rydberg_number(profile, params, tau, *, clip=False, r_max=None, rtol=QUAD_RTOL):
    """Rydberg atoms after a square pulse of ``tau`` seconds.

    ``r_max`` restricts the integral to a central ball (e.g. the condensate's
    Thomas-Fermi radius).
    """
    if tau < 0:
        raise InputError("pulse duration must be non-negative")
    if tau == 0:
        return 0.0
    fields = local_fields(profile, params, clip)

    def integrand(r):
        n_r, omega = fields(r)
        return n_r * np.sin(0.5 * omega * tau) ** 2

    def phase(r):
        return 0.5 * fields(r)[1] * tau

    radius = _radius(profile, r_max)
    bps = [b for b in profile.breakpoints if 0 < b < radius]
    return integrate_radial(integrand, radius, rtol=rtol, breakpoints=bps, phase=phase)


def saturation_number(profile, params, *, clip=False, r_max=None, rtol=QUAD_RTOL):
    """Long-time mean of the Rydberg number: half the integrated saturation density."""
    fields = local_fields(profile, params, clip)
    radius = _radius(profile, r_max)
    bps = [b for b in profile.breakpoints if 0 < b < radius]
    return 0.5 * integrate_radial(lambda r: fields(r)[0], radius, rtol=rtol, breakpoints=bps)


def superatom_count(profile, params, *, clip=False, r_max=None, rtol=QUAD_RTOL):
    """Number of superatoms packed into the cloud (or a sphere of ``r_max``): the integral of n_R.

    This is the fully excited count of the blockade picture, one excitation
    per blockade sphere, and twice :func:`saturation_number`.
    """
    fields = local_fields(profile, params, clip)
    radius = _radius(profile, r_max)
    bps = [b for b in profile.breakpoints if 0 < b < radius]
    return integrate_radial(lambda r: fields(r)[0], radius, rtol=rtol, breakpoints=bps)


def characteristic_time(profile, params, clip=False):
    """One collective Rabi period at the profile's peak density."""
    omega = local_fields(profile, params, clip)(np.zeros(1))[1][0]
    if not omega > 0:
        raise InputError("profile has zero peak density")
    return 2.0 * np.pi / omega


def initial_slope(sampler, n_sat, t_max, *, t_min=None, samples=40, scan=60):
    """Initial excitation rate R of a curve ``sampler(tau) -> N_R``.

    The window is ``[0, tau_half]`` with ``tau_half`` the first time the curve
    reaches ``n_sat / 2``, located on a geometric scan of ``[t_min, t_max]``
    and refined by root finding. R is the least-squares slope through the
    origin of ``samples`` equally spaced points in the window.

    Raises :class:`ResolutionError` if the curve is already above half
    saturation at the first scanned time.
    """
    if samples < 20:
        raise InputError("initial slope needs at least 20 samples in the window")
    half = 0.5 * n_sat
    t_min = t_max * 1e-4 if t_min is None else t_min
    grid = np.geomspace(t_min, t_max, scan)
    t_prev = 0.0
    t_half = t_max
    for i, t in enumerate(grid):
        if sampler(t) > half:
            if i == 0:
                raise ResolutionError(
                    f"curve exceeds half saturation already at tau={t:.3g} s; sample finer times")
            t_half = solve_monotone(lambda x: sampler(x) - half, t_prev, t)
            break
        t_prev = t
    times = np.linspace(t_half / samples, t_half, samples)
    values = np.array([sampler(t) for t in times])
    return float(times @ values / (times @ times))


@dataclass(frozen=True)
class ExcitationCurve:
    times: np.ndarray
    n_rydberg: np.ndarray
    n_sat: float
    slope: float
    atom_number: float

    @property
    def saturation_time(self):
        """tau_s = N_sat / R."""
        return self.n_sat / self.slope

    @property
    def fraction(self):
        return self.n_rydberg / self.atom_number


def excitation_curve(profile, params, times, *, clip=False, rtol=QUAD_RTOL):
    """Sample N_R(tau) at ``times`` and derive N_sat, R and tau_s."""
    times = np.asarray(times, dtype=float)
    n_rydberg = np.array([rydberg_number(profile, params, t, clip=clip, rtol=rtol) for t in times])
    n_sat = saturation_number(profile, params, clip=clip, rtol=rtol)
    t_char = characteristic_time(profile, params, clip)
    slope = initial_slope(lambda t: rydberg_number(profile, params, t, clip=clip, rtol=rtol),
                          n_sat, 200 * t_char, t_min=1e-3 * t_char)
    return ExcitationCurve(times, n_rydberg, n_sat, slope, profile.atom_number())


def linear_regime_time(profile, params, *, clip=False, rtol=1e-10):
    """Pulse duration at which N_R grows linearly, i.e. d ln N_R / d ln tau = 1.

    At short times N_R ~ tau^2 (single-atom Rabi flopping) and at long times it
    saturates; this picks the crossover where the ensemble mimics a constant
    excitation rate.
    """
    t_char = characteristic_time(profile, params, clip)
    h = 1e-3

    def log_slope_minus_one(log_t):
        up = rydberg_number(profile, params, np.exp(log_t + h), clip=clip, rtol=rtol)
        dn = rydberg_number(profile, params, np.exp(log_t - h), clip=clip, rtol=rtol)
        return (np.log(up) - np.log(dn)) / (2 * h) - 1.0

    grid = np.log(t_char) + np.linspace(np.log(1e-3), np.log(1e2), 40)
    prev = grid[0]
    if log_slope_minus_one(prev) <= 0:
        raise ResolutionError("curve is not quadratic at the shortest scanned time")
    for g in grid[1:]:
        if log_slope_minus_one(g) <= 0:
            return float(np.exp(solve_monotone(log_slope_minus_one, prev, g, rtol=1e-6)))
        prev = g
    raise ResolutionError("no linear regime found within 100 collective Rabi periods")


@dataclass(frozen=True)
class SweepRecord:
    temperature: float
    t_over_tc: float
    atom_number: float
    condensate_fraction: float
    peak_density_total: float
    peak_density_thermal: float
    f_total: tuple
    f_thermal_only: tuple


@dataclass(frozen=True)
class SweepResult:
    """Rydberg fractions over a temperature ramp, ordered by increasing T."""

    durations: tuple
    critical_temperature: float
    records: tuple

    @property
    def temperatures(self):
        return np.array([rec.temperature for rec in self.records])

    def f_total(self, duration_index):
        return np.array([rec.f_total[duration_index] for rec in self.records])

    def f_thermal_only(self, duration_index):
        return np.array([rec.f_thermal_only[duration_index] for rec in self.records])


def _sweep_cell(trap, schedule, params, durations, temperature, t_c, clip):
    local_trap = schedule.trap_at(trap, temperature) if schedule is not None else trap
    state = equilibrium_state(local_trap, temperature)
    profile = DensityProfile(local_trap, state)
    thermal = profile.thermal_only()
    n_g = local_trap.atom_number
    f_tot = tuple(rydberg_number(profile, params, tau, clip=clip) / n_g for tau in durations)
    if state.condensed:
        f_th = tuple(rydberg_number(thermal, params, tau, clip=clip) / state.n_thermal
                     for tau in durations)
    else:
        f_th = f_tot
    return SweepRecord(
        temperature=float(temperature),
        t_over_tc=float(temperature / t_c),
        atom_number=float(n_g),
        condensate_fraction=state.condensate_fraction,
        peak_density_total=profile.peak_density,
        peak_density_thermal=profile.peak_thermal,
        f_total=f_tot,
        f_thermal_only=f_th,
    )


def fraction_sweep(trap, params, durations=DEFAULT_DURATIONS, temperatures=None, *, schedule=None,
                   clip=False, max_workers=None):
    """Rydberg fraction versus temperature for each pulse duration.

    ``schedule`` (an :class:`~superatom.gas.AtomNumberSchedule`) sets the atom
    number at each temperature; without it ``trap.atom_number`` is used
    throughout. ``f_thermal_only`` repeats the calculation with the condensate
    removed and is normalised to the thermal atom number.
    """
    durations = tuple(float(d) for d in durations)
    temperatures = default_temperatures() if temperatures is None else temperatures
    temperatures = tuple(sorted(float(t) for t in temperatures))
    if not durations or not temperatures:
        raise InputError("durations and temperatures must be non-empty")
    if any(d < 0 for d in durations) or any(t <= 0 for t in temperatures):
        raise InputError("durations must be >= 0 and temperatures > 0")
    if schedule is not None:
        t_c = schedule.critical_temperature(trap)
    else:
        t_c = critical_temperature(trap)

    def cell(t):
        return _sweep_cell(trap, schedule, params, durations, t, t_c, clip)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            records = tuple(pool.map(cell, temperatures))
    else:
        records = tuple(cell(t) for t in temperatures)
    return SweepResult(durations, float(t_c), records)


@dataclass(frozen=True)
class RegimeExponents:
    short: object
    intermediate: object
    long: object


def fraction_regime_exponents(params, profiles, tau_short, tau_mid, tau_long, *, clip=False):
    """Density exponents of the Rydberg fraction in the three pulse-length regimes.

    ``profiles`` is a fixed-shape family (e.g. :class:`~superatom.gas.ScaledProfile`
    at several factors) spanning at least a decade of peak density. Returns
    power-law fits of ``f = N_R / N_g`` against peak density at each duration.
    """
    profiles = list(profiles)
    if len(profiles) < 3:
        raise InputError("need at least three profiles")
    peaks = np.array([p.peak_density for p in profiles])
    if peaks.max() / peaks.min() < 10 * (1 - 1e-9):
        raise InputError("profile family must span at least one decade of peak density")
    if not 0 < tau_short < tau_mid < tau_long:
        raise InputError("need 0 < tau_short < tau_mid < tau_long")
    omega_max = max(2 * np.pi / characteristic_time(p, params, clip) for p in profiles)
    if tau_short * omega_max > 0.1:
        raise RegimeError(
            f"tau_short={tau_short:.3g} s is not short: Omega_c,max * tau = {tau_short * omega_max:.3g} > 0.1")
    n_atoms = np.array([p.atom_number() for p in profiles])
    for p in profiles:
        n_sat = saturation_number(p, params, clip=clip)
        t_char = characteristic_time(p, params, clip)
        slope = initial_slope(lambda t, p=p: rydberg_number(p, params, t, clip=clip), n_sat,
                              200 * t_char, t_min=1e-3 * t_char)
        if tau_long < 10 * n_sat / slope:
            raise RegimeError(f"tau_long={tau_long:.3g} s is not >> tau_s={n_sat / slope:.3g} s")

    def fit(tau):
        f = [rydberg_number(p, params, tau, clip=clip) / n for p, n in zip(profiles, n_atoms)]
        return fit_power_law(peaks, f)

    return RegimeExponents(fit(tau_short), fit(tau_mid), fit(tau_long))


@dataclass(frozen=True)
class KinkReport:
    """Shape of f(T) around the condensation temperature for one pulse duration.

    ``maxima_total`` / ``maxima_thermal`` are the temperatures of interior
    local maxima (grid points above both neighbours) inside ``window``, in
    units of T_c. ``kink`` requires a maximum of ``f_total`` in the window and
    f_total below T_c lower than that maximum. ``max_relative_gap`` is
    ``max |f_total - f_thermal_only| / f_total`` over the whole sweep.
    """

    duration: float
    maxima_total: tuple
    maxima_thermal: tuple
    decreases_below_tc: bool
    max_relative_gap: float

    @property
    def kink(self):
        return bool(self.maxima_total) and self.decreases_below_tc

    @property
    def thermal_monotone(self):
        return not self.maxima_thermal


def _interior_maxima(x, y, lo, hi):
    idx = [i for i in range(1, len(y) - 1) if y[i] > y[i - 1] and y[i] > y[i + 1]]
    return tuple(float(x[i]) for i in idx if lo <= x[i] <= hi)


def kink_analysis(sweep, duration_index, window=(1.0, 1.3)):
    """Locate local maxima of the total and thermal-only fractions near T_c."""
    t_rel = sweep.temperatures / sweep.critical_temperature
    f_tot = sweep.f_total(duration_index)
    f_th = sweep.f_thermal_only(duration_index)
    lo, hi = window
    maxima_total = _interior_maxima(t_rel, f_tot, lo, hi)
    maxima_thermal = _interior_maxima(t_rel, f_th, lo, hi)
    below = t_rel < 1.0
    decreases = False
    if maxima_total and below.any():
        peak = max(f_tot[np.isin(t_rel, maxima_total)])
        decreases = bool(np.all(f_tot[below] < peak))
    with np.errstate(divide="ignore", invalid="ignore"):
        gap = np.where(f_tot > 0, np.abs(f_tot - f_th) / np.where(f_tot > 0, f_tot, 1.0), 0.0)
    return KinkReport(float(sweep.durations[duration_index]), maxima_total, maxima_thermal, decreases,
                      float(gap.max()))
