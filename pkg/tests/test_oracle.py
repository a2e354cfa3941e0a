import numpy as np
import pytest
from scipy.linalg import expm

from superatom import oracle
from superatom.blockade import C6_43S_AU
from superatom.exceptions import GeometryError, InputError, IntegrationError, OracleSizeError
from superatom.numerics import CONSTANTS, c6_au_to_si
from superatom.oracle import (
    OracleSystem,
    blockade_crossover,
    build_hamiltonian,
    crossover_half_point,
    dominant_frequency,
    evolve,
    pair_blockade_radius,
    strong_blockade_cluster,
    symmetric_residual,
)

OMEGA0 = 2 * np.pi * 20e3
C6 = c6_au_to_si(C6_43S_AU)
HBAR = CONSTANTS.hbar


def line(n, spacing):
    return np.column_stack([np.zeros(n), np.zeros(n), spacing * np.arange(n)])


def period(omega):
    return 2 * np.pi / omega


# ---- Hamiltonian -----------------------------------------------------------

def test_single_atom_hamiltonian():
    h = build_hamiltonian(OracleSystem(np.zeros((1, 3)), OMEGA0, C6)).toarray()
    np.testing.assert_allclose(h, 0.5 * HBAR * OMEGA0 * np.array([[0, 1], [1, 0]]), rtol=1e-15)


def test_pair_hamiltonian_interaction_entry():
    d = 3e-6
    h = build_hamiltonian(OracleSystem(line(2, d), OMEGA0, C6)).toarray()
    assert h[3, 3] == pytest.approx(abs(C6) / d**6, rel=1e-14)
    assert h[0, 0] == h[1, 1] == h[2, 2] == 0
    assert h[0, 1] == h[0, 2] == pytest.approx(0.5 * HBAR * OMEGA0)
    assert h[0, 3] == 0


@pytest.mark.parametrize("n", [3, 5, 7])
def test_hamiltonian_hermitian_and_trace(n):
    system = OracleSystem(oracle.cluster_positions(n, 4e-6, seed=n), OMEGA0, C6)
    h = build_hamiltonian(system).toarray()
    np.testing.assert_array_equal(h, h.T)
    pairs = system.interactions[np.triu_indices(n, 1)].sum()
    assert np.trace(h) == pytest.approx(pairs * 2 ** (n - 2), rel=1e-12)
    # each basis state couples to exactly N neighbours
    assert np.all(np.count_nonzero(h - np.diag(np.diag(h)), axis=1) == n)


def test_size_and_geometry_errors():
    with pytest.raises(OracleSizeError):
        OracleSystem(line(15, 1e-6), OMEGA0, C6)
    with pytest.raises(GeometryError):
        OracleSystem(np.array([[0, 0, 0], [1e-6, 0, 0], [0, 0, 0.0]]), OMEGA0, C6)
    with pytest.raises(InputError):
        OracleSystem(np.zeros((2, 2)), OMEGA0, C6)
    with pytest.raises(InputError):
        OracleSystem(np.zeros((1, 3)), -1.0, C6)
    with pytest.raises(InputError):
        evolve(OracleSystem(np.zeros((1, 3)), OMEGA0, C6), 1e-6, 1)


# ---- dynamics --------------------------------------------------------------

def test_single_atom_rabi():
    res = evolve(OracleSystem(np.zeros((1, 3)), OMEGA0, C6), 20 * period(OMEGA0), 2000)
    np.testing.assert_allclose(res.total_excitation, np.sin(0.5 * OMEGA0 * res.times) ** 2, atol=1e-12)
    assert res.frequency == pytest.approx(OMEGA0, rel=1e-3)
    assert res.total_excitation.max() == pytest.approx(1.0, abs=1e-5)


def test_dense_matches_matrix_exponential():
    system = OracleSystem(oracle.cluster_positions(4, 3e-6, seed=1), OMEGA0, C6)
    t_max = 3 * period(OMEGA0)
    res = evolve(system, t_max, 7, keep_states=True)
    h = build_hamiltonian(system).toarray() / HBAR
    psi0 = np.zeros(16, dtype=complex)
    psi0[0] = 1
    for t, psi in zip(res.times, res.states):
        np.testing.assert_allclose(psi, expm(-1j * h * t) @ psi0, atol=1e-9)


def test_strong_blockade_five_atoms():
    pos = strong_blockade_cluster(5, OMEGA0, C6, strength=1e3, seed=3)
    res = evolve(OracleSystem(pos, OMEGA0, C6), 30 * period(OMEGA0), 2048)
    assert res.frequency == pytest.approx(np.sqrt(5) * OMEGA0, rel=5e-3)
    assert res.total_excitation.max() <= 1.01
    assert res.excitation_distribution[:, 2:].max() < 1e-3


def test_independent_pair():
    d = 10 * pair_blockade_radius(OMEGA0, C6)
    res = evolve(OracleSystem(line(2, d), OMEGA0, C6), 10 * period(OMEGA0), 2000)
    ref = 2 * np.sin(0.5 * OMEGA0 * res.times) ** 2
    np.testing.assert_allclose(res.total_excitation, ref, atol=0.02)


@pytest.mark.parametrize("n,strength", [(3, 1e3), (6, 10.0), (8, 0.3)])
def test_conservation_laws(n, strength):
    pos = strong_blockade_cluster(n, OMEGA0, C6, strength=strength, seed=n)
    res = evolve(OracleSystem(pos, OMEGA0, C6), 10 * period(OMEGA0), 500)
    np.testing.assert_allclose(res.norms, 1.0, atol=1e-9)
    # the initial state has zero energy; drift is measured on the drive scale
    assert np.max(np.abs(res.energy - res.energy[0])) <= 1e-9 * HBAR * OMEGA0 * np.sqrt(n)
    assert np.all(res.total_excitation >= -1e-12) and np.all(res.total_excitation <= n + 1e-12)
    np.testing.assert_allclose(res.excitation_distribution.sum(axis=1), 1.0, atol=1e-9)


@pytest.mark.parametrize("n", [3, 4])
def test_permutation_symmetry_of_regular_clusters(n):
    if n == 3:
        pos = np.array([[0, 0, 0], [1, 0, 0], [0.5, np.sqrt(3) / 2, 0]]) * 2e-6
    else:
        pos = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) * 1e-6
    res = evolve(OracleSystem(pos, OMEGA0, C6), 5 * period(OMEGA0), 40, keep_states=True)
    for psi in res.states:
        assert symmetric_residual(psi, n) < 1e-9


def test_asymmetric_cluster_breaks_symmetry():
    pos = np.array([[0, 0, 0], [1, 0, 0], [0, 3, 0]]) * 3e-6
    res = evolve(OracleSystem(pos, OMEGA0, C6), 5 * period(OMEGA0), 40, keep_states=True)
    assert max(symmetric_residual(psi, 3) for psi in res.states) > 1e-3


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_sqrt_n_enhancement(n):
    pos = strong_blockade_cluster(n, OMEGA0, C6, seed=11)
    res = evolve(OracleSystem(pos, OMEGA0, C6), 30 * period(OMEGA0), 1024)
    assert res.frequency == pytest.approx(np.sqrt(n) * OMEGA0, rel=1e-3)


# ---- two-atom crossover ----------------------------------------------------

@pytest.fixture(scope="module")
def crossover_rows():
    r_b = pair_blockade_radius(OMEGA0, C6)
    return r_b, blockade_crossover(r_b * np.geomspace(0.1, 10, 25), OMEGA0, C6)


def test_crossover_limits(crossover_rows):
    r_b, rows = crossover_rows
    assert rows[0].max_double_excitation < 0.02
    assert rows[-1].max_double_excitation > 0.95
    assert rows[0].frequency == pytest.approx(np.sqrt(2) * OMEGA0, rel=0.01)
    assert rows[-1].frequency == pytest.approx(OMEGA0, rel=0.01)


def test_crossover_half_point(crossover_rows):
    r_b, rows = crossover_rows
    half = crossover_half_point(rows)
    assert 0.5 * r_b <= half <= 2 * r_b
    p = np.array([r.max_double_excitation for r in rows])
    assert p[-1] > p[0]
    with pytest.raises(InputError):
        crossover_half_point(rows[:3])


# ---- spectral estimate -----------------------------------------------------

@pytest.mark.parametrize("omega", [3.3, 7.0, 21.5])
def test_dominant_frequency_of_pure_tone(omega):
    t = np.linspace(0, 40, 4096)
    assert dominant_frequency(t, 0.3 + np.sin(omega * t + 0.4)) == pytest.approx(omega, rel=1e-3)
    assert dominant_frequency(t, np.ones_like(t)) == 0.0


# ---- Krylov path -----------------------------------------------------------

def test_krylov_matches_dense(monkeypatch):
    pos = strong_blockade_cluster(9, OMEGA0, C6, strength=3.0, seed=5)
    system = OracleSystem(pos, OMEGA0, C6)
    dense = evolve(system, 8 * period(OMEGA0), 256, keep_states=True)
    monkeypatch.setattr(oracle, "DENSE_LIMIT", 4)
    krylov = evolve(system, 8 * period(OMEGA0), 256, keep_states=True)
    assert np.max(np.abs(krylov.states - dense.states)) < 1e-8
    assert krylov.frequency == pytest.approx(dense.frequency, rel=1e-9)


def test_krylov_reports_non_convergence():
    system = OracleSystem(oracle.cluster_positions(6, 3e-6, seed=2), OMEGA0, C6)
    h = build_hamiltonian(system) / HBAR
    psi0 = np.zeros(64, dtype=complex)
    psi0[0] = 1
    with pytest.raises(IntegrationError):
        oracle._krylov_propagate(h, psi0, np.linspace(0, 50 * period(OMEGA0), 50), m_max=4)


@pytest.mark.slow
def test_fourteen_atoms_strong_blockade():
    pos = strong_blockade_cluster(14, OMEGA0, C6, seed=14)
    res = evolve(OracleSystem(pos, OMEGA0, C6), 30 * period(OMEGA0), 1024)
    assert res.frequency == pytest.approx(np.sqrt(14) * OMEGA0, rel=1e-3)
    np.testing.assert_allclose(res.norms, 1.0, atol=1e-9)
