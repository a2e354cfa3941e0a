"""Local blockade physics of the superatom picture.

Each blockade sphere of radius ``r_b`` holds ``N = n_g / n_R`` ground-state
atoms sharing one excitation, which Rabi-oscillates at ``sqrt(N) Omega_0``.
Superatoms sit on an fcc lattice (``n_R = sqrt(2) / r_b^3``), and the local
saturation density follows from balancing the lattice van der Waals energy
against the collective Rabi energy:

    Z |C6| n_R^2 / 2 = kappa hbar sqrt(N) Omega_0
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import InputError
from .numerics import CONSTANTS, c6_au_to_si, hz_to_angular

__all__ = [
    "LaserParams",
    "BlockadeParams",
    "LocalBlockade",
    "two_photon_rabi",
    "scattering_probability",
    "saturation_density",
    "blockade_radius_from_density",
    "fcc_lattice_sum",
    "fcc_site_density",
    "C6_43S_AU",
]

# van der Waals coefficient of Rb 43S1/2 in atomic units (repulsive)
C6_43S_AU = -1.7e19
SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class LaserParams:
    """Two-photon excitation lasers. All values are angular frequencies (rad/s)."""

    omega1: float
    omega2: float
    detuning: float
    linewidth: float = CONSTANTS.linewidth_5p32

    def __post_init__(self):
        if self.omega1 < 0 or self.omega2 < 0 or self.linewidth < 0:
            raise InputError("Rabi frequencies and linewidth must be non-negative")
        if self.detuning == 0:
            raise ZeroDivisionError("intermediate-state detuning must be non-zero")
        if self.detuning < 0:
            raise InputError("detuning must be positive (blue detuned)")
        if self.detuning < 10 * self.omega1:
            warnings.warn("detuning is not large compared to Omega_1; the adiabatic "
                          "elimination behind Omega_1 Omega_2 / 2 Delta is questionable",
                          stacklevel=2)

    @classmethod
    def from_hz(cls, omega1_hz, omega2_hz, detuning_hz, linewidth_hz=None):
        lw = CONSTANTS.linewidth_5p32 if linewidth_hz is None else hz_to_angular(linewidth_hz)
        return cls(hz_to_angular(omega1_hz), hz_to_angular(omega2_hz), hz_to_angular(detuning_hz), lw)

    @classmethod
    def experiment(cls):
        """5S-5P at 11 MHz, 5P-43S at 9.7 MHz, 483 MHz blue of 5P3/2 F=3."""
        return cls.from_hz(11e6, 9.7e6, 483e6)


def two_photon_rabi(lasers):
    """Effective ground-Rydberg Rabi frequency Omega_1 Omega_2 / (2 Delta) (rad/s)."""
    if lasers.detuning == 0:
        raise ZeroDivisionError("detuning must be non-zero")
    return lasers.omega1 * lasers.omega2 / (2.0 * lasers.detuning)


def scattering_probability(lasers, duration):
    """Photons scattered per atom off the intermediate state during ``duration`` seconds.

    Far-detuned estimate ``Gamma * Omega_1^2 / (4 Delta^2) * tau``.
    """
    if np.any(np.asarray(duration) < 0):
        raise InputError("duration must be non-negative")
    return lasers.linewidth * lasers.omega1**2 / (4.0 * lasers.detuning**2) * duration


@dataclass(frozen=True)
class BlockadeParams:
    """Parameters entering the blockade condition.

    ``c6`` keeps the physical sign (J m^6); only its magnitude enters the
    blockade condition. ``omega0`` is the effective single-atom Rabi frequency
    used by the model, i.e. already divided by ``rabi_reduction`` when built
    via :meth:`from_lasers`.
    """

    omega0: float
    c6: float = c6_au_to_si(C6_43S_AU)
    z_lattice: float = 14.5
    kappa: float = 0.3
    rabi_reduction: float = 1.0

    def __post_init__(self):
        for name in ("omega0", "z_lattice", "kappa", "rabi_reduction"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")
        if self.c6 == 0:
            raise InputError("c6 must be non-zero")

    @classmethod
    def from_lasers(cls, lasers=None, rabi_reduction=5.5, **kwargs):
        lasers = LaserParams.experiment() if lasers is None else lasers
        return cls(omega0=two_photon_rabi(lasers) / rabi_reduction, rabi_reduction=rabi_reduction, **kwargs)

    @classmethod
    def default(cls):
        """kappa = 0.3, Z = 14.5, 43S C6 and the experiment's lasers with the 5.5 Rabi reduction."""
        return cls.from_lasers()

    @property
    def bare_omega0(self):
        return self.omega0 * self.rabi_reduction

    @property
    def density_prefactor(self):
        """``(2 kappa hbar Omega_0 / (Z |C6|))^(2/5)``: n_R = prefactor * n_g^(1/5)."""
        return (2.0 * self.kappa * CONSTANTS.hbar * self.omega0 / (self.z_lattice * abs(self.c6))) ** 0.4

    def with_omega0(self, omega0):
        return replace(self, omega0=float(omega0))


@dataclass(frozen=True)
class LocalBlockade:
    """Blockade quantities at one or more local ground-state densities (arrays)."""

    n_g: np.ndarray
    n_r: np.ndarray
    blockade_radius: np.ndarray
    atoms_per_superatom: np.ndarray
    collective_rabi: np.ndarray

    @property
    def fraction_raw(self):
        """Local saturation fraction n_R / n_g, unclipped (exceeds 1 far out in the wings)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.n_g > 0, self.n_r / np.where(self.n_g > 0, self.n_g, 1.0), 0.0)

    @property
    def fraction(self):
        return np.minimum(self.fraction_raw, 1.0)


def saturation_density(n_g, params):
    """Saturation Rydberg density and collective Rabi frequency at density ``n_g``.

    Parameters
    ----------
    n_g : float or array_like
        Local ground-state density (m^-3), non-negative.
    params : BlockadeParams

    Returns
    -------
    LocalBlockade
        Array-valued record. Where ``n_g == 0`` everything is zero except the
        blockade radius, which is infinite.
    """
    n_g = np.asarray(n_g, dtype=float)
    if np.any(n_g < 0) or np.any(np.isnan(n_g)):
        raise InputError("ground-state density must be non-negative")
    n_r = params.density_prefactor * n_g**0.2
    omega_c = ((params.z_lattice * abs(params.c6) / (2.0 * params.kappa * CONSTANTS.hbar)) ** 0.2
               * n_g**0.4 * params.omega0**0.8)
    with np.errstate(divide="ignore", invalid="ignore"):
        r_b = np.where(n_r > 0, np.cbrt(SQRT2 / np.where(n_r > 0, n_r, 1.0)), np.inf)
        n_atoms = np.where(n_r > 0, n_g / np.where(n_r > 0, n_r, 1.0), 0.0)
    return LocalBlockade(n_g, n_r, r_b, n_atoms, omega_c)


def blockade_radius_from_density(n_r):
    """fcc nearest-neighbour distance for superatom density ``n_r``: (sqrt(2) / n_R)^(1/3)."""
    n_r = np.asarray(n_r, dtype=float)
    if np.any(n_r <= 0):
        raise InputError("Rydberg density must be positive")
    out = np.cbrt(SQRT2 / n_r)
    return float(out) if out.ndim == 0 else out


def _fcc_sites(half_width):
    """fcc sites as integer triples with even coordinate sum (nearest-neighbour distance sqrt 2)."""
    rng = np.arange(-half_width, half_width + 1)
    i, j, k = np.meshgrid(rng, rng, rng, indexing="ij")
    mask = (i + j + k) % 2 == 0
    return np.stack([i[mask], j[mask], k[mask]], axis=1)


def fcc_lattice_sum(shells):
    """Sum of ``(d_nn / d)^6`` over fcc sites in the first ``shells`` coordination shells.

    This is the van der Waals energy at one site in units of the
    nearest-neighbour pair energy; it starts at 12 and converges to ~14.45.
    """
    shells = int(shells)
    if shells < 1:
        raise InputError("shells must be >= 1")
    # shell radii^2 are 2m in these units; a cube of half-width sqrt(2 shells) contains them all
    half = int(np.ceil(np.sqrt(2.0 * shells))) + 1
    sites = _fcc_sites(half)
    d2 = (sites**2).sum(axis=1)
    d2 = d2[d2 > 0]
    radii2 = np.unique(d2)[:shells]
    d2 = d2[d2 <= radii2[-1]]
    return float(np.sum((2.0 / d2) ** 3))


def fcc_site_density(nn_distance=1.0, cells=20):
    """Sites per volume of an fcc lattice, counted in a periodic box of ``cells^3`` cubic cells."""
    if cells < 1:
        raise InputError("cells must be >= 1")
    # integer sites in [0, 2*cells)^3 with even sum; cubic cell edge 2 units
    sites = _fcc_sites(2 * cells)
    inside = np.all((sites >= 0) & (sites < 2 * cells), axis=1)
    n_sites = int(inside.sum())
    unit = nn_distance / SQRT2  # integer step in metres
    return n_sites / (2 * cells * unit) ** 3
