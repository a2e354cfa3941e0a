"""Physical constants (CODATA, via :mod:`scipy.constants`) and unit helpers."""

from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc

from ..exceptions import InputError

__all__ = [
    "PhysicalConstants",
    "CONSTANTS",
    "c6_au_to_si",
    "c6_si_to_au",
    "hz_to_angular",
    "angular_to_hz",
]

# 87Rb atomic mass in unified atomic mass units
RB87_MASS_U = 86.909180527


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _sc.hbar
    k_B: float = _sc.k
    mass_rb87: float = RB87_MASS_U * _sc.atomic_mass
    bohr_radius: float = _sc.physical_constants["Bohr radius"][0]
    hartree: float = _sc.physical_constants["Hartree energy"][0]
    # natural linewidth of Rb 5P3/2 (D2 line)
    linewidth_5p32: float = 2.0 * np.pi * 6.07e6

    def __post_init__(self):
        for name in ("hbar", "k_B", "mass_rb87", "bohr_radius", "hartree", "linewidth_5p32"):
            if not getattr(self, name) > 0:
                raise InputError(f"{name} must be positive")

    @property
    def h(self):
        return 2.0 * np.pi * self.hbar

    @property
    def c6_au(self):
        """One atomic unit of C6 in J m^6."""
        return self.hartree * self.bohr_radius**6


CONSTANTS = PhysicalConstants()


def c6_au_to_si(c6_au, constants=CONSTANTS):
    """Convert a C6 coefficient from atomic units (E_h a0^6) to J m^6."""
    return c6_au * constants.c6_au


def c6_si_to_au(c6_si, constants=CONSTANTS):
    return c6_si / constants.c6_au


def hz_to_angular(freq_hz):
    return 2.0 * np.pi * freq_hz


def angular_to_hz(omega):
    return omega / (2.0 * np.pi)
