"""Real polylogarithm Li_s(z) on 0 <= z <= 1, vectorized over z.

Small arguments use the defining series with an explicit tail bound. Close
to z = 1 the series converges too slowly, so there the expansion in
mu = ln z (valid for |mu| < 2 pi) is used instead:

    Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!

with the usual harmonic-number/log replacement when s is an integer.
"""

import numpy as np
from scipy.special import gamma, zeta

from ..exceptions import DivergenceError, InputError

__all__ = ["polylog", "bose_function"]

_SERIES_MAX_Z = 0.5
_LOG_TERMS = 48
_REL_TOL = 1e-16


def _series(s, z):
    zmax = float(z.max())
    if zmax == 0.0:
        return np.zeros_like(z)
    # smallest K whose tail bound z^(K+1) / ((K+1)^s (1-z)) is below tolerance
    k = 1
    while zmax ** (k + 1) / ((k + 1) ** s * (1.0 - zmax)) > _REL_TOL * zmax:
        k += 1
    kk = np.arange(1, k + 1, dtype=float)
    # Horner-like accumulation keeps memory at O(len(z))
    out = np.zeros_like(z)
    zp = np.ones_like(z)
    for kv in kk:
        zp = zp * z
        out += zp / kv**s
    return out


def _log_expansion(s, z):
    mu = np.log(z)
    out = np.zeros_like(z)
    fact = 1.0
    mu_k = np.ones_like(z)
    n_int = round(s)
    is_int = s == n_int
    for k in range(_LOG_TERMS):
        if k > 0:
            fact *= k
            mu_k = mu_k * mu
        if is_int and k == n_int - 1:
            harmonic = sum(1.0 / j for j in range(1, n_int))
            with np.errstate(divide="ignore", invalid="ignore"):
                term = mu_k / fact * (harmonic - np.log(-mu))
            # mu^(n-1) log(-mu) -> 0 as mu -> 0 for n >= 2
            term = np.where(mu == 0.0, 0.0 if n_int >= 2 else np.inf, term)
            out += term
        else:
            out += zeta(s - k) * mu_k / fact
    if not is_int:
        with np.errstate(divide="ignore", invalid="ignore"):
            sing = gamma(1.0 - s) * (-mu) ** (s - 1.0)
        out += np.where(mu == 0.0, 0.0 if s > 1 else np.inf, sing)
    return out


def polylog(s, z):
    """Polylogarithm ``Li_s(z) = sum_{k>=1} z^k / k^s`` for real ``0 <= z <= 1``.

    Parameters
    ----------
    s : float
        Order. Any real value is accepted for ``z < 1``; ``z = 1`` requires
        ``s > 1`` (where the result is the Riemann zeta value).
    z : float or array_like
        Argument(s) in ``[0, 1]``.

    Returns
    -------
    float or ndarray
        Same shape as ``z``; relative accuracy better than 1e-10.
    """
    s = float(s)
    arr = np.asarray(z, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise InputError("polylog requires 0 <= z <= 1")
    if s <= 1.0 and np.any(arr == 1.0):
        raise DivergenceError(f"Li_{s}(1) diverges for s <= 1")

    out = np.empty_like(arr)
    small = arr <= _SERIES_MAX_Z
    if small.any():
        out[small] = _series(s, arr[small])
    if (~small).any():
        out[~small] = _log_expansion(s, arr[~small])
    at_one = arr == 1.0
    if at_one.any():
        out[at_one] = zeta(s)
    return float(out[0]) if scalar else out


def bose_function(s, z):
    """Alias of :func:`polylog`, the name common in statistical mechanics (g_s)."""
    return polylog(s, z)


def _zeta(s):
    if s <= 1:
        raise DivergenceError(f"zeta({s}) diverges")
    return float(zeta(s))


ZETA_3 = _zeta(3.0)
ZETA_3_2 = _zeta(1.5)
