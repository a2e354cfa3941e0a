"""Exact state-vector dynamics of a few resonantly driven two-level atoms.

Each atom couples |g> <-> |r> with Rabi frequency Omega_0; pairs of Rydberg
atoms interact through V_ij = |C6| / r_ij^6. Basis states are integers whose
bit ``i`` is the excitation of atom ``i``.

Small systems are propagated through the spectral decomposition of the dense
Hamiltonian. Above ``DENSE_LIMIT`` atoms the decomposition is restricted to
the Lanczos (Krylov) space generated by the initial state, grown until the
a-posteriori error estimate over the whole time window drops below
``KRYLOV_TOL``.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy import sparse

from .exceptions import GeometryError, IntegrationError, InputError, OracleSizeError
from .numerics import CONSTANTS, solve_monotone

__all__ = [
    "OracleSystem",
    "EvolutionResult",
    "CrossoverRow",
    "MAX_ATOMS",
    "build_hamiltonian",
    "evolve",
    "dominant_frequency",
    "pair_blockade_radius",
    "blockade_crossover",
    "crossover_half_point",
    "cluster_positions",
    "strong_blockade_cluster",
    "symmetric_residual",
]

MAX_ATOMS = 14
DENSE_LIMIT = 12
NORM_TOL = 1e-6
KRYLOV_TOL = 1e-10
KRYLOV_MAX = 3000


@dataclass(frozen=True)
class OracleSystem:
    positions: np.ndarray
    omega0: float
    c6: float

    def __post_init__(self):
        pos = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if pos.shape[1] != 3:
            raise InputError("positions must have shape (N, 3)")
        if len(pos) > MAX_ATOMS:
            raise OracleSizeError(f"{len(pos)} atoms exceed the dense-simulation limit of {MAX_ATOMS}")
        if len(pos) < 1:
            raise InputError("need at least one atom")
        if not self.omega0 > 0:
            raise InputError("omega0 must be positive")
        if self.c6 == 0:
            raise InputError("c6 must be non-zero")
        object.__setattr__(self, "positions", pos)
        d = self.distances[np.triu_indices(self.n_atoms, 1)]
        if np.any(d <= 0):
            raise GeometryError("two atoms share the same position")

    @property
    def n_atoms(self):
        return len(self.positions)

    @property
    def dimension(self):
        return 2**self.n_atoms

    @property
    def distances(self):
        diff = self.positions[:, None, :] - self.positions[None, :, :]
        return np.sqrt((diff**2).sum(-1))

    @property
    def interactions(self):
        """Pair energies |C6| / r_ij^6 in J (zero on the diagonal)."""
        d = self.distances
        with np.errstate(divide="ignore"):
            v = abs(self.c6) / d**6
        np.fill_diagonal(v, 0.0)
        return v


def _occupations(n_atoms):
    states = np.arange(2**n_atoms)
    return ((states[:, None] >> np.arange(n_atoms)[None, :]) & 1).astype(float)


def build_hamiltonian(system):
    """Hamiltonian in J as a sparse symmetric matrix (2^N x 2^N), zero detuning."""
    n = system.n_atoms
    dim = system.dimension
    occ = _occupations(n)
    v = system.interactions
    diag = 0.5 * np.einsum("bi,ij,bj->b", occ, v, occ)
    states = np.arange(dim)
    rows = np.concatenate([states] * n)
    cols = np.concatenate([states ^ (1 << i) for i in range(n)])
    vals = np.full(len(rows), 0.5 * CONSTANTS.hbar * system.omega0)
    drive = sparse.csr_array((vals, (rows, cols)), shape=(dim, dim))
    return (drive + sparse.diags_array(diag)).tocsr()


@dataclass(frozen=True)
class EvolutionResult:
    times: np.ndarray
    norms: np.ndarray
    total_excitation: np.ndarray
    excitation_distribution: np.ndarray  # (samples, N+1): P(k atoms excited)
    energy: np.ndarray
    frequency: float
    states: np.ndarray = None

    @property
    def single_excitation(self):
        return self.excitation_distribution[:, 1]

    @property
    def all_excited(self):
        return self.excitation_distribution[:, -1]


def dominant_frequency(times, signal, pad=16):
    """Angular frequency of the strongest non-DC spectral line of a uniformly sampled signal.

    Hann window, zero padding by ``pad`` and a three-point parabolic fit to
    the log magnitude around the peak bin.
    """
    times = np.asarray(times, dtype=float)
    y = np.asarray(signal, dtype=float)
    y = y - y.mean()
    if np.allclose(y, 0.0):
        return 0.0
    dt = times[1] - times[0]
    n = len(y)
    nfft = pad * n
    mag = np.abs(np.fft.rfft(y * np.hanning(n), nfft))
    # skip the main lobe of the window around DC
    start = 2 * pad
    k = start + int(np.argmax(mag[start:]))
    if 0 < k < len(mag) - 1:
        a, b, c = np.log(mag[k - 1: k + 2] + 1e-300)
        denom = a - 2 * b + c
        shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
    else:
        shift = 0.0
    return float(2 * np.pi * (k + shift) / (nfft * dt))


def _krylov_error(theta, s, times):
    weights = s[-1] * s[0]
    small = np.abs(theta) < 1e-300
    safe = np.where(small, 1.0, theta)
    # int_0^t exp(-i theta u) du
    kernel = np.where(small[:, None], times[None, :],
                      (1.0 - np.exp(-1j * np.outer(safe, times))) / (1j * safe[:, None]))
    return float(np.abs(weights @ kernel).max())


def _krylov_propagate(h, psi0, times, tol=KRYLOV_TOL, m_max=KRYLOV_MAX, check_every=16):
    """psi(t) for all ``times`` from a Lanczos basis with full reorthogonalisation.

    Convergence uses the leading term of the Krylov error expansion,
    ``beta_m * |int_0^t e_m^T exp(-i T_m s) e_1 ds|``, evaluated in closed form
    from the Ritz pairs at every sample time; the basis grows until its
    maximum drops below ``tol``.
    """
    dim = h.shape[0]
    m_max = min(m_max, dim)
    q = np.zeros((m_max + 1, dim))
    alpha = np.zeros(m_max)
    beta = np.zeros(m_max)
    q[0] = psi0.real
    m = 0
    bound = np.inf
    while m < m_max:
        w = h @ q[m]
        alpha[m] = q[m] @ w
        w -= alpha[m] * q[m] + (beta[m - 1] * q[m - 1] if m > 0 else 0.0)
        # two passes of classical Gram-Schmidt against the whole basis
        for _ in range(2):
            w -= q[: m + 1].T @ (q[: m + 1] @ w)
        beta[m] = np.linalg.norm(w)
        m += 1
        invariant = beta[m - 1] <= 1e-14 * max(1.0, np.abs(alpha[:m]).max())
        if invariant or m % check_every == 0 or m == m_max:
            tri = np.diag(alpha[:m]) + np.diag(beta[: m - 1], 1) + np.diag(beta[: m - 1], -1)
            theta, s = np.linalg.eigh(tri)
            bound = 0.0 if invariant else beta[m - 1] * _krylov_error(theta, s, times)
            if bound <= tol:
                break
        q[m] = w / beta[m - 1]
    if bound > tol:
        raise IntegrationError(f"Krylov propagation did not converge (error bound {bound:.3g})")
    coeff = s[0][:, None] * np.exp(-1j * np.outer(theta, times))  # (m, samples)
    return (q[:m].T @ (s @ coeff)).T


def evolve(system, t_max, samples, *, keep_states=False):
    """Propagate the all-ground state and record observables at ``samples`` uniform times."""
    if samples < 2:
        raise InputError("need at least two samples")
    if not t_max > 0:
        raise InputError("t_max must be positive")
    n = system.n_atoms
    dim = system.dimension
    times = np.linspace(0.0, t_max, samples)
    h = build_hamiltonian(system) / CONSTANTS.hbar  # rad/s
    psi0 = np.zeros(dim, dtype=complex)
    psi0[0] = 1.0

    if n <= DENSE_LIMIT:
        energies, vecs = np.linalg.eigh(h.toarray())
        coeff = vecs[0, :]  # <E_k | 0>
        chunks = []
        for t_chunk in np.array_split(times, max(1, samples * dim // 4_000_000)):
            phases = np.exp(-1j * np.outer(energies, t_chunk)) * coeff[:, None]
            chunks.append((vecs @ phases).T)
        psi = np.concatenate(chunks)
    else:
        psi = _krylov_propagate(h, psi0, times)

    prob = np.abs(psi) ** 2
    norms = np.sqrt(prob.sum(axis=1))
    drift = np.max(np.abs(norms - 1.0))
    if drift > NORM_TOL:
        raise IntegrationError(f"norm drifted by {drift:.3g}")
    counts = _occupations(n).sum(axis=1).astype(int)
    dist = np.zeros((samples, n + 1))
    for k in range(n + 1):
        dist[:, k] = prob[:, counts == k].sum(axis=1)
    total = prob @ counts
    energy = np.real(np.einsum("ti,ti->t", psi.conj(), (h @ psi.T).T)) * CONSTANTS.hbar
    return EvolutionResult(
        times=times,
        norms=norms,
        total_excitation=total,
        excitation_distribution=dist,
        energy=energy,
        frequency=dominant_frequency(times, total),
        states=psi if keep_states else None,
    )


def symmetric_residual(state, n_atoms):
    """Norm of the part of ``state`` outside the permutation-symmetric subspace."""
    state = np.asarray(state)
    occ = _occupations(n_atoms).astype(int)
    weights = 1 << np.arange(n_atoms)
    sym = np.zeros_like(state)
    perms = list(permutations(range(n_atoms)))
    for perm in perms:
        idx = occ[:, list(perm)] @ weights
        sym = sym + state[idx]
    sym /= len(perms)
    return float(np.linalg.norm(state - sym))


def pair_blockade_radius(omega0, c6):
    """Distance where the pair shift equals the two-atom collective Rabi energy: |C6|/r^6 = hbar sqrt(2) Omega_0."""
    return float((abs(c6) / (CONSTANTS.hbar * np.sqrt(2.0) * omega0)) ** (1.0 / 6.0))


def cluster_positions(n_atoms, radius, *, seed=0, min_ratio=0.5, max_tries=10_000):
    """Random positions inside a ball of ``radius``, no pair closer than ``min_ratio * radius``."""
    rng = np.random.default_rng(seed)
    pts = []
    tries = 0
    while len(pts) < n_atoms:
        tries += 1
        if tries > max_tries:
            raise GeometryError("could not place atoms with the requested spacing")
        p = rng.uniform(-radius, radius, 3)
        if p @ p > radius**2:
            continue
        if all(np.linalg.norm(p - q) >= min_ratio * radius for q in pts):
            pts.append(p)
    return np.array(pts)


def strong_blockade_cluster(n_atoms, omega0, c6, strength=1e3, seed=0):
    """Random cluster whose weakest pair shift is at least ``strength * hbar sqrt(N) Omega_0``.

    Atoms lie in a ball of radius R with pair spacing >= R/2, so every
    distance is below 2R; R is chosen so that |C6| / (2R)^6 meets the bound.
    """
    if n_atoms == 1:
        return np.zeros((1, 3))
    radius = 0.5 * (abs(c6) / (strength * CONSTANTS.hbar * np.sqrt(n_atoms) * omega0)) ** (1 / 6)
    return cluster_positions(n_atoms, radius, seed=seed)


@dataclass(frozen=True)
class CrossoverRow:
    distance: float
    frequency: float
    max_double_excitation: float


def blockade_crossover(distances, omega0, c6, *, periods=10, samples=2000):
    """Two atoms at each separation: collective frequency and peak double-excitation probability."""
    t_max = periods * 2 * np.pi / omega0
    rows = []
    for d in distances:
        system = OracleSystem(np.array([[0.0, 0.0, 0.0], [0.0, 0.0, float(d)]]), omega0, c6)
        res = evolve(system, t_max, samples)
        rows.append(CrossoverRow(float(d), res.frequency, float(res.all_excited.max())))
    return rows


def crossover_half_point(rows, level=0.5):
    """Separation where the peak double-excitation probability crosses ``level`` (log-interpolated)."""
    d = np.array([r.distance for r in rows])
    p = np.array([r.max_double_excitation for r in rows])
    order = np.argsort(d)
    d, p = d[order], p[order]
    above = np.nonzero(p >= level)[0]
    if len(above) == 0 or above[0] == 0:
        raise InputError("crossover level not bracketed by the distance grid")
    i = above[0]
    x0, x1 = np.log(d[i - 1]), np.log(d[i])
    return float(np.exp(solve_monotone(
        lambda x: np.interp(x, [x0, x1], [p[i - 1], p[i]]) - level, x0, x1)))
