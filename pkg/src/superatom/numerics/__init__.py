"""Numerical kernels: polylogarithm, radial quadrature, root finding, power-law fits."""

from .constants import CONSTANTS, PhysicalConstants, angular_to_hz, c6_au_to_si, c6_si_to_au, hz_to_angular
from .fitting import PowerLawFit, fit_power_law
from .polylog import ZETA_3, ZETA_3_2, bose_function, polylog
from .quadrature import integrate, integrate_radial, phase_breakpoints
from .roots import solve_monotone

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "PowerLawFit",
    "ZETA_3",
    "ZETA_3_2",
    "angular_to_hz",
    "bose_function",
    "c6_au_to_si",
    "c6_si_to_au",
    "fit_power_law",
    "hz_to_angular",
    "integrate",
    "integrate_radial",
    "phase_breakpoints",
    "polylog",
    "solve_monotone",
]
