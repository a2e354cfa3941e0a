"""Least-squares power laws in log-log space."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import InputError

__all__ = ["PowerLawFit", "fit_power_law"]


@dataclass(frozen=True)
class PowerLawFit:
    """``y = prefactor * x**exponent``; ``residual`` is the RMS misfit of ``ln y``."""

    exponent: float
    prefactor: float
    residual: float

    def __call__(self, x):
        return self.prefactor * np.asarray(x, dtype=float) ** self.exponent


def fit_power_law(x, y=None):
    """Fit ``y = A x^p`` by ordinary least squares on ``(ln x, ln y)``.

    Accepts either two sequences or a single sequence of ``(x, y)`` pairs.
    """
    if y is None:
        pairs = np.asarray(x, dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise InputError("expected a sequence of (x, y) pairs")
        x, y = pairs[:, 0], pairs[:, 1]
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise InputError("x and y must have the same length")
    if len(x) < 3:
        raise InputError("power-law fit needs at least 3 samples")
    if not (np.all(x > 0) and np.all(y > 0)):
        raise InputError("power-law fit needs strictly positive samples")
    lx, ly = np.log(x), np.log(y)
    if np.ptp(lx) == 0:
        raise InputError("x values must not all be equal")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return PowerLawFit(float(slope), float(np.exp(intercept)), float(np.sqrt(np.mean(resid**2))))
