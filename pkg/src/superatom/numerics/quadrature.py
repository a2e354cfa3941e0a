"""Globally adaptive 21-point Gauss-Kronrod quadrature with vectorized integrands.

Integrands receive a 1-D array of abscissae and must return an array of the
same shape; a whole batch of subintervals is evaluated in one call, which
matters because the density profiles evaluate a polylogarithm per point.
"""

import numpy as np

from ..exceptions import InputError, QuadratureError

__all__ = ["integrate", "integrate_radial", "phase_breakpoints"]

# QUADPACK qk21 abscissae (descending, last is the centre) and weights
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077715953117680,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
# 10-point Gauss weights, attached to the odd-indexed Kronrod nodes
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_W_K = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_G = np.zeros(21)
_W_G[1:10:2] = _WG
_W_G[11:20:2] = _WG[::-1]


def _gk_batch(f, a, b):
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = centre[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise InputError("integrand returned a non-finite value")
    kronrod = half * (fx @ _W_K)
    gauss = half * (fx @ _W_G)
    return kronrod, np.abs(kronrod - gauss)


def integrate(f, a, b, *, rtol=1e-8, atol=0.0, breakpoints=(), max_intervals=50_000):
    """Adaptive integral of a vectorized ``f`` over ``[a, b]``.

    ``breakpoints`` are interior points where ``f`` has kinks or other
    features; they seed the initial partition. Raises
    :class:`~superatom.exceptions.QuadratureError` (carrying the best estimate)
    when ``max_intervals`` is exhausted.
    """
    if not b > a:
        raise InputError("integration interval must satisfy b > a")
    pts = np.unique(np.clip(np.concatenate([[a, b], np.asarray(breakpoints, float)]), a, b))
    lo, hi = pts[:-1], pts[1:]
    vals, errs = _gk_batch(f, lo, hi)

    while True:
        total = vals.sum()
        err = errs.sum()
        if err <= max(atol, rtol * abs(total)):
            return float(total)
        if len(lo) >= max_intervals:
            raise QuadratureError("adaptive quadrature did not converge", float(total), float(err))
        # bisect the worst intervals carrying half of the total error estimate
        order = np.argsort(errs)[::-1]
        cum = np.cumsum(errs[order])
        n_split = int(np.searchsorted(cum, 0.5 * err)) + 1
        n_split = min(n_split, max_intervals - len(lo))
        split = order[:n_split]
        keep = np.ones(len(lo), dtype=bool)
        keep[split] = False
        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        if np.any(new_hi - new_lo <= 4 * np.finfo(float).eps * np.maximum(abs(new_lo), abs(new_hi))):
            raise QuadratureError("subinterval width reached machine precision",
                                  float(total), float(err))
        new_vals, new_errs = _gk_batch(f, new_lo, new_hi)
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])


def phase_breakpoints(phase, a, b, *, grid=4001, max_points=20_000):
    """Points in ``(a, b)`` where a vectorized ``phase(r)`` crosses a multiple of pi.

    Used to pre-split oscillatory integrands like ``sin^2(phase(r))`` so that
    every initial subinterval holds at most about one half-period.
    """
    r = np.linspace(a, b, grid)
    branch = np.floor(np.asarray(phase(r), dtype=float) / np.pi)
    idx = np.nonzero(np.diff(branch))[0]
    if len(idx) == 0:
        return np.empty(0)
    crossings = np.abs(np.diff(branch))[idx]
    # many crossings inside one coarse cell: spread them uniformly
    pts = [np.linspace(r[i], r[i + 1], int(c) + 2)[1:-1] for i, c in zip(idx, crossings)]
    pts = np.concatenate(pts)
    if len(pts) > max_points:
        pts = pts[:: int(np.ceil(len(pts) / max_points))]
    return pts


def integrate_radial(f, r_max, *, rtol=1e-8, atol=0.0, breakpoints=(), phase=None, r_min=0.0,
                     max_intervals=50_000):
    """Integrate a spherically symmetric ``f(r)`` over a ball: ``int 4 pi r^2 f(r) dr``.

    Parameters
    ----------
    f : callable
        Vectorized function of the radius (m).
    r_max : float
        Outer radius of the ball.
    rtol, atol : float
        Relative and absolute tolerance of the adaptive scheme.
    breakpoints : sequence of float
        Known kinks of ``f`` (e.g. a Thomas-Fermi radius).
    phase : callable, optional
        For integrands oscillating like ``sin^2(phase(r))``; subintervals are
        pre-split at each half-period of the phase.
    r_min : float
        Inner radius, for shells.
    """
    if not r_max > 0:
        raise InputError("r_max must be positive")
    if not 0 <= r_min < r_max:
        raise InputError("need 0 <= r_min < r_max")
    bps = list(breakpoints)
    if phase is not None:
        bps.extend(phase_breakpoints(phase, r_min, r_max))
    return integrate(lambda r: 4.0 * np.pi * r * r * f(r), r_min, r_max, rtol=rtol, atol=atol,
                     breakpoints=bps, max_intervals=max_intervals)
