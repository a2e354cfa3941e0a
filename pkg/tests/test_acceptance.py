"""Acceptance criteria, each run at its stated tolerance with one PASS/FAIL line."""

import numpy as np
import pytest

from superatom.blockade import (
    BlockadeParams,
    LaserParams,
    blockade_radius_from_density,
    fcc_lattice_sum,
    saturation_density,
    scattering_probability,
    two_photon_rabi,
)
from superatom.cli.config import default_config
from superatom.cli.main import table_text
from superatom.cli.scenarios import run_scenario
from superatom.dynamics import fraction_sweep, kink_analysis, local_fields, rydberg_number
from superatom.gas import AtomNumberSchedule, DensityProfile, TrapConfig, UniformProfile, equilibrium_state
from superatom.numerics import solve_monotone
from superatom.oracle import (
    OracleSystem,
    blockade_crossover,
    cluster_positions,
    crossover_half_point,
    dominant_frequency,
    evolve,
    pair_blockade_radius,
    strong_blockade_cluster,
)

TWO_PI = 2 * np.pi


def table(bundle, name):
    return next(t for t in bundle.tables if t.name == name)


@pytest.fixture(scope="module")
def params():
    return BlockadeParams.default()


def test_criterion_01_packing_identity(criterion):
    r_b = blockade_radius_from_density(9e15)
    criterion(1, "packing identity", abs(r_b - 5.4e-6) <= 0.05e-6, f"r_b(9e15 m^-3) = {r_b * 1e6:.4f} um")


def test_criterion_02_fcc_lattice_sum(criterion):
    first = fcc_lattice_sum(1)
    converged = fcc_lattice_sum(200)
    criterion(2, "fcc lattice sum", first == 12.0 and abs(converged - 14.45) <= 0.05,
              f"first shell {first:g}, 200 shells {converged:.5f}")


def test_criterion_03_two_photon_rabi(criterion):
    hz = two_photon_rabi(LaserParams.from_hz(11e6, 9.7e6, 483e6)) / TWO_PI
    criterion(3, "two-photon Rabi", abs(hz - 110.4e3) <= 0.1e3, f"{hz / 1e3:.3f} kHz")


def test_criterion_04_scattering_estimate(criterion):
    p = scattering_probability(LaserParams.experiment(), 1.97e-6)
    criterion(4, "scattering estimate", 0.005 <= p <= 0.02, f"p = {p:.4f} per atom")


def test_criterion_05_headline_densities(criterion, params):
    n_r = float(saturation_density(4.9e19, params).n_r)
    fig3 = run_scenario(default_config("fig3"))
    count = fig3.summary["superatoms_in_tf_volume"]
    ok = 0.5 <= n_r / 9e15 <= 2 and 5 / 3 <= count <= 15
    criterion(5, "headline densities", ok,
              f"n_R(4.9e19) = {n_r:.3g} m^-3, superatoms in TF volume = {count:.3g}")


def test_criterion_06_closed_form_scalings(criterion):
    bundle = run_scenario(default_config("scalings"))
    fits = {(row[0], row[1]): (row[2], row[3]) for row in table(bundle, "scalings.csv").rows
            if row[0] in ("N_sat", "R")}
    ok = len(fits) == 4 and all(abs(got - want) <= 0.03 for got, want in fits.values())
    detail = ", ".join(f"{q}/{v} {got:.4f}" for (q, v), (got, _) in fits.items())
    criterion(6, "closed-form scalings", ok, detail)


def test_criterion_07_fraction_regimes(criterion):
    bundle = run_scenario(default_config("scalings"))
    fits = {row[0]: (row[2], row[3]) for row in table(bundle, "scalings.csv").rows if row[0].startswith("f_")}
    ok = len(fits) == 3 and all(abs(got - want) <= 0.05 for got, want in fits.values())
    criterion(7, "fraction regimes", ok, ", ".join(f"{k} {got:.4f}" for k, (got, _) in fits.items()))


def test_criterion_08_kink_property(criterion, params):
    trap = TrapConfig.preset()
    sweep = fraction_sweep(trap, params, (170e-9, 320e-9, 370e-9, 1970e-9), schedule=AtomNumberSchedule())
    reports = [kink_analysis(sweep, j) for j in range(4)]
    ok = all(r.kink and r.thermal_monotone for r in reports[1:3])
    ok = ok and not reports[0].maxima_total and not reports[3].maxima_total
    detail = "; ".join(
        f"{r.duration * 1e9:g} ns max(T/Tc) total {[round(m, 3) for m in r.maxima_total]} "
        f"thermal {[round(m, 3) for m in r.maxima_thermal]} drop below Tc {r.decreases_below_tc}"
        for r in reports)
    criterion(8, "kink property", ok, detail)


def test_criterion_09_density_jump(criterion):
    jump = run_scenario(default_config("fig1")).summary["density_jump"]
    criterion(9, "density jump", 2 <= jump <= 6, f"n(T_c-) / n_th(T_c+) = {jump:.3f}")


def test_criterion_10_oracle_sqrt_n(criterion, params):
    omega0, c6 = params.omega0, params.c6
    errors, drifts = [], []
    for n in range(2, 9):
        system = OracleSystem(strong_blockade_cluster(n, omega0, c6, seed=n), omega0, c6)
        res = evolve(system, 30 * TWO_PI / (np.sqrt(n) * omega0), 1024)
        errors.append(res.frequency / omega0 / np.sqrt(n) - 1)
        drifts.append(np.abs(res.norms - 1).max())
    r_b = pair_blockade_radius(omega0, c6)
    half = crossover_half_point(blockade_crossover(r_b * np.geomspace(0.1, 10, 25), omega0, c6)) / r_b
    ok = max(map(abs, errors)) <= 5e-3 and max(drifts) <= 1e-9 and 0.5 <= half <= 2
    criterion(10, "oracle sqrt(N) law", ok,
              f"worst |f/sqrt(N) - 1| = {max(map(abs, errors)):.2e}, norm drift {max(drifts):.1e}, "
              f"50% point {half:.3f} r_b")


def _slab_density(params, n_atoms):
    """Ground-state density at which one superatom holds ``n_atoms`` atoms."""
    def g(log_n):
        n_g = np.exp(log_n)
        return np.log(n_g / float(saturation_density(n_g, params).n_r)) - np.log(n_atoms)
    return float(np.exp(solve_monotone(g, np.log(1e14), np.log(1e24))))


def test_criterion_11_oracle_model_consistency(criterion, params):
    worst, parts = 0.0, []
    for n_atoms in (2, 5, 9, 12):
        n_g = _slab_density(params, n_atoms)
        loc = saturation_density(n_g, params)
        r_b = float(loc.blockade_radius)
        slab = UniformProfile(n_g, r_b)
        omega_c = float(loc.collective_rabi)
        times = np.linspace(0, 30 * TWO_PI / omega_c, 1024)
        model = dominant_frequency(times, [rydberg_number(slab, params, t) for t in times])
        # the blockade sphere is a weak-interaction scale (V(r_b) = kappa / Z hbar Omega_c), so the
        # atoms sit in a ball of r_b / 10 to be fully blockaded while remaining within r_b
        pos = cluster_positions(n_atoms, 0.1 * r_b, seed=n_atoms)
        res = evolve(OracleSystem(pos, params.omega0, params.c6), times[-1], len(times))
        rel = abs(model / res.frequency - 1)
        worst = max(worst, rel)
        parts.append(f"N={n_atoms}: {rel:.1e}")
    criterion(11, "oracle vs model", worst <= 0.01, ", ".join(parts))


def _riemann(profile, params, tau, shells=100_000):
    edges = np.linspace(0, profile.r_max, shells + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    n_r, w = local_fields(profile, params)(mid)
    return float(np.sum(n_r * np.sin(w * tau / 2) ** 2 * 4 / 3 * np.pi * np.diff(edges**3)))


def test_criterion_12_determinism(criterion, params):
    identical = []
    for scenario in ("fig1", "fig2b", "fig3", "curve", "oracle-crossover"):
        cfg = default_config(scenario)
        first = [table_text(t) for t in run_scenario(cfg).tables]
        second = [table_text(t) for t in run_scenario(cfg).tables]
        identical.append(first == second)
    rng = np.random.default_rng(12)
    trap = TrapConfig.preset()
    worst = 0.0
    for _ in range(10):
        t = rng.uniform(0.2, 2.0) * 700e-9
        local = trap.with_atom_number(10 ** rng.uniform(4.5, 6.5))
        prof = DensityProfile(local, equilibrium_state(local, t))
        tau = rng.uniform(100e-9, 2e-6)
        worst = max(worst, abs(rydberg_number(prof, params, tau) / _riemann(prof, params, tau) - 1))
    criterion(12, "determinism", all(identical) and worst <= 1e-3,
              f"identical CSVs {sum(identical)}/{len(identical)} scenarios, worst quadrature vs Riemann {worst:.1e}")
