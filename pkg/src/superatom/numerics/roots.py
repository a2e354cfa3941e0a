"""Bracketed scalar root finding."""

import numpy as np
from scipy.optimize import brentq

from ..exceptions import BracketError

__all__ = ["solve_monotone"]


def solve_monotone(g, lo, hi, *, rtol=1e-12, maxiter=500):
    """Root of a monotone scalar function ``g`` bracketed by ``[lo, hi]``.

    Raises :class:`~superatom.exceptions.BracketError` if ``g(lo)`` and
    ``g(hi)`` do not differ in sign.
    """
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0:
        return float(lo)
    if g_hi == 0:
        return float(hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: g(lo)={g_lo}, g(hi)={g_hi}")
    # brentq's relative tolerance floor is 4 eps
    rtol = max(rtol, 4 * np.finfo(float).eps)
    return float(brentq(g, lo, hi, xtol=1e-300, rtol=rtol, maxiter=maxiter))
