"""Named scenarios: each turns a resolved config into CSV tables, SVG plots and a summary."""

from dataclasses import dataclass, field

import numpy as np

from ..blockade import saturation_density
from ..dynamics import (
    characteristic_time,
    excitation_curve,
    fraction_regime_exponents,
    fraction_sweep,
    initial_slope,
    kink_analysis,
    linear_regime_time,
    rydberg_number,
    saturation_number,
    superatom_count,
)
from ..gas import DensityProfile, GaussianProfile, ScaledProfile, equilibrium_state
from ..numerics import CONSTANTS, fit_power_law
from ..oracle import (
    OracleSystem,
    blockade_crossover,
    cluster_positions,
    crossover_half_point,
    evolve,
    pair_blockade_radius,
    strong_blockade_cluster,
)
from .svg import Plot

__all__ = ["Table", "Bundle", "run_scenario", "SCENARIO_RUNNERS"]


@dataclass
class Table:
    name: str
    columns: tuple
    rows: list


@dataclass
class Bundle:
    tables: list = field(default_factory=list)
    plots: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)


def _sweep_setup(config):
    trap = config.trap.build()
    schedule = config.trap.build_schedule()
    params = config.blockade.build()
    return trap, schedule, params


def _profile_at(trap, schedule, temperature):
    local = schedule.trap_at(trap, temperature)
    state = equilibrium_state(local, temperature)
    return local, state, DensityProfile(local, state)


def run_fig1(config):
    trap, schedule, _ = _sweep_setup(config)
    temps = config.sweep.temperatures()
    t_c = schedule.critical_temperature(trap)
    rows = []
    for t in temps:
        _, state, prof = _profile_at(trap, schedule, t)
        rows.append((t, prof.peak_density, prof.peak_thermal, state.condensate_fraction))
    arr = np.array(rows)
    bundle = Bundle()
    bundle.tables.append(Table("fig1.csv", ("T_K", "peak_density_total", "peak_density_thermal",
                                            "condensate_fraction"), rows))
    dens = Plot("Peak ground-state density", "T (nK)", "n_g(0) (m^-3)", logx=True, logy=True)
    dens.add("total", arr[:, 0] * 1e9, arr[:, 1]).add("thermal", arr[:, 0] * 1e9, arr[:, 2], dashed=True)
    frac = Plot("Condensate fraction", "T (nK)", "N_0 / N", logx=True)
    frac.add("condensate fraction", arr[:, 0] * 1e9, arr[:, 3])
    bundle.plots["fig1_density.svg"] = dens
    bundle.plots["fig1_condensate.svg"] = frac
    below = np.nonzero(temps < t_c)[0]
    above = np.nonzero(temps >= t_c)[0]
    bundle.summary["critical_temperature_K"] = t_c
    if len(below) and len(above):
        bundle.summary["density_jump"] = float(arr[below[-1], 1] / arr[above[0], 2])
    return bundle


def run_fig2b(config):
    trap, schedule, params = _sweep_setup(config)
    durations = config.sweep.durations()
    sweep = fraction_sweep(trap, params, durations, config.sweep.temperatures(), schedule=schedule,
                           clip=config.blockade.clip, max_workers=config.sweep.workers)
    rows = []
    for rec in sweep.records:
        for j, tau in enumerate(sweep.durations):
            rows.append((rec.temperature, tau * 1e9, rec.f_total[j], rec.f_thermal_only[j]))
    bundle = Bundle()
    bundle.tables.append(Table("fig2b.csv", ("T_K", "duration_ns", "f_total", "f_thermal_only"), rows))
    # curves offset by a decade each, for legibility only (the CSV is unshifted)
    plot = Plot("Rydberg fraction (curve j shifted by 10^j)", "T (nK)", "f x 10^j", logx=True, logy=True)
    t_nk = sweep.temperatures * 1e9
    kinks = {}
    for j, tau in enumerate(sweep.durations):
        shift = 10.0**j
        plot.add(f"{tau * 1e9:g} ns", t_nk, sweep.f_total(j) * shift)
        plot.add(f"{tau * 1e9:g} ns thermal", t_nk, sweep.f_thermal_only(j) * shift, dashed=True)
        rep = kink_analysis(sweep, j)
        kinks[f"{tau * 1e9:g}"] = {
            "kink": rep.kink,
            "maxima_total_T_over_Tc": list(rep.maxima_total),
            "maxima_thermal_T_over_Tc": list(rep.maxima_thermal),
            "max_relative_gap": rep.max_relative_gap,
        }
    bundle.plots["fig2b.svg"] = plot
    bundle.summary["critical_temperature_K"] = sweep.critical_temperature
    bundle.summary["kink_analysis"] = kinks
    return bundle


def _fig3_rows(profile, params, radii):
    n_g = profile(radii)
    loc = saturation_density(n_g, params)
    return [(r, g, nr, fc, fr) for r, g, nr, fc, fr in
            zip(radii, n_g, loc.n_r, loc.fraction, loc.fraction_raw)]


def run_fig3(config):
    trap, schedule, params = _sweep_setup(config)
    t_low = float(config.sweep.temperatures()[0])
    local, state, prof = _profile_at(trap, schedule, t_low)
    r6 = np.sqrt(2 * 6 * CONSTANTS.k_B * t_low / (local.mass * local.omega_bar**2))
    radii = np.linspace(0.0, config.fig3.extent * max(r6, prof.tf_radius), config.fig3.points)
    cols = ("r_m", "n_g", "n_R", "f_local_clipped", "f_local_raw")
    total = _fig3_rows(prof, params, radii)
    thermal = _fig3_rows(prof.thermal_only(), params, radii)
    bundle = Bundle()
    bundle.tables.append(Table("fig3.csv", cols, total))
    bundle.tables.append(Table("fig3_thermal.csv", cols, thermal))
    a, b = np.array(total), np.array(thermal)
    r_um = radii * 1e6
    dens = Plot(f"Radial densities at {t_low * 1e9:g} nK", "r (um)", "density (m^-3)", logy=True)
    dens.add("n_g", r_um, a[:, 1]).add("n_R", r_um, a[:, 2])
    dens.add("n_g thermal only", r_um, b[:, 1], dashed=True).add("n_R thermal only", r_um, b[:, 2], dashed=True)
    frac = Plot(f"Local fraction n_R / n_g at {t_low * 1e9:g} nK", "r (um)", "f (clipped at 1)", logy=True)
    frac.add("f", r_um, a[:, 3]).add("f thermal only", r_um, b[:, 3], dashed=True)
    bundle.plots["fig3_density.svg"] = dens
    bundle.plots["fig3_fraction.svg"] = frac
    summary = {"temperature_K": t_low, "condensate_fraction": state.condensate_fraction,
               "peak_n_R": float(a[0, 2]), "blockade_radius_at_peak_m": float(np.cbrt(np.sqrt(2) / a[0, 2]))}
    if state.condensed:
        summary["tf_radius_m"] = prof.tf_radius
        summary["superatoms_in_tf_volume"] = superatom_count(prof, params, clip=config.blockade.clip,
                                                             r_max=prof.tf_radius)
    bundle.summary.update(summary)
    return bundle


def _slope(profile, params, clip):
    n_sat = saturation_number(profile, params, clip=clip)
    t_char = characteristic_time(profile, params, clip)
    return n_sat, initial_slope(lambda t: rydberg_number(profile, params, t, clip=clip), n_sat,
                                200 * t_char, t_min=1e-3 * t_char)


def run_scalings(config):
    sc = config.scalings
    clip = config.blockade.clip
    params = config.blockade.build()
    base = GaussianProfile(sc.peak_density_min, sc.width_m)
    factors = np.geomspace(1.0, sc.peak_density_max / sc.peak_density_min, sc.points)
    family = [ScaledProfile(base, f) for f in factors]
    peaks = sc.peak_density_min * factors
    omega_factors = np.geomspace(sc.omega0_factor_min, sc.omega0_factor_max, sc.points)
    omegas = params.omega0 * omega_factors
    mid = family[len(family) // 2]

    density_runs = [_slope(p, params, clip) for p in family]
    omega_runs = [_slope(mid, params.with_omega0(w), clip) for w in omegas]
    samples, fits = [], []

    def record(quantity, variable, xs, ys, expected):
        for x, y in zip(xs, ys):
            samples.append((quantity, variable, x, y))
        fit = fit_power_law(xs, ys)
        fits.append((quantity, variable, fit.exponent, expected, fit.prefactor, fit.residual))

    record("N_sat", "peak_density", peaks, [r[0] for r in density_runs], 0.2)
    record("R", "peak_density", peaks, [r[1] for r in density_runs], 0.6)
    record("N_sat", "omega0", omegas, [r[0] for r in omega_runs], 0.4)
    record("R", "omega0", omegas, [r[1] for r in omega_runs], 1.2)

    omega_max = max(2 * np.pi / characteristic_time(p, params, clip) for p in family)
    taus = (0.05 / omega_max, linear_regime_time(mid, params, clip=clip), sc.tau_long_us * 1e-6)
    regimes = fraction_regime_exponents(params, family, *taus, clip=clip)
    for name, tau, fit, expected in zip(("f_short", "f_intermediate", "f_long"), taus,
                                        (regimes.short, regimes.intermediate, regimes.long),
                                        (0.0, -0.4, -0.8)):
        fits.append((name, "peak_density", fit.exponent, expected, fit.prefactor, fit.residual))
        f = [rydberg_number(p, params, tau, clip=clip) / p.atom_number() for p in family]
        samples.extend((name, "peak_density", x, y) for x, y in zip(peaks, f))

    bundle = Bundle()
    bundle.tables.append(Table("scalings.csv", ("quantity", "variable", "exponent", "expected", "prefactor",
                                                "residual"), fits))
    bundle.tables.append(Table("scalings_samples.csv", ("quantity", "variable", "x", "y"), samples))
    plot = Plot("Scaling laws (normalised to first sample)", "x / x_0", "y / y_0", logx=True, logy=True)
    keys = list(dict.fromkeys((q, v) for q, v, _, _ in samples))
    for q, v in keys:
        pts = np.array([(x, y) for qq, vv, x, y in samples if (qq, vv) == (q, v)])
        plot.add(f"{q} vs {v}", pts[:, 0] / pts[0, 0], pts[:, 1] / pts[0, 1])
    bundle.plots["scalings.svg"] = plot
    bundle.summary["durations_s"] = {"short": taus[0], "intermediate": taus[1], "long": taus[2]}
    return bundle


def run_oracle_sqrtn(config):
    oc = config.oracle
    params = config.blockade.build()
    omega0, c6 = params.omega0, params.c6
    series, summary = [], []
    plot_t = Plot("Total excitation, strong blockade", "Omega_0 t", "<sum n_i>")
    for n in oc.atoms:
        system = OracleSystem(strong_blockade_cluster(n, omega0, c6, oc.blockade_strength, config.seed + n),
                              omega0, c6)
        collective = np.sqrt(n) * omega0
        res = evolve(system, oc.periods * 2 * np.pi / collective, oc.samples)
        v = system.interactions[np.triu_indices(n, 1)]
        min_shift = float(v.min() / (CONSTANTS.hbar * collective)) if n > 1 else float("inf")
        summary.append((n, res.frequency, res.frequency / omega0, np.sqrt(n), res.frequency / collective - 1,
                        float(np.abs(res.norms - 1).max()), float(res.total_excitation.max()), min_shift))
        series.extend((n, t, a, b) for t, a, b in zip(res.times, res.total_excitation, res.single_excitation))
        plot_t.add(f"N = {n}", res.times * omega0, res.total_excitation)
    bundle = Bundle()
    bundle.tables.append(Table("oracle_sqrtN.csv", ("n_atoms", "frequency_rad_s", "frequency_over_omega0",
                                                    "sqrt_n", "relative_error", "norm_drift",
                                                    "max_total_excitation", "min_shift_over_collective"),
                               summary))
    bundle.tables.append(Table("oracle_sqrtN_timeseries.csv", ("n_atoms", "t_s", "total_excitation",
                                                               "single_excitation"), series))
    arr = np.array([(s[0], s[2]) for s in summary], dtype=float)
    plot_f = Plot("Collective Rabi frequency", "N", "Omega / Omega_0")
    plot_f.add("oracle", arr[:, 0], arr[:, 1])
    n_grid = np.linspace(arr[:, 0].min(), arr[:, 0].max(), 200)
    plot_f.add("sqrt(N)", n_grid, np.sqrt(n_grid), dashed=True)
    bundle.plots["oracle_sqrtN.svg"] = plot_f
    bundle.plots["oracle_sqrtN_timeseries.svg"] = plot_t
    bundle.summary["omega0_rad_s"] = omega0
    bundle.summary["worst_relative_error"] = float(max(abs(s[4]) for s in summary))
    return bundle


def run_oracle_crossover(config):
    oc = config.oracle
    params = config.blockade.build()
    r_b = pair_blockade_radius(params.omega0, params.c6)
    ratios = np.geomspace(oc.crossover_min, oc.crossover_max, oc.crossover_points)
    table = blockade_crossover(ratios * r_b, params.omega0, params.c6)
    rows = [(r.distance, r.distance / r_b, r.frequency, r.frequency / params.omega0, r.max_double_excitation)
            for r in table]
    bundle = Bundle()
    bundle.tables.append(Table("oracle_crossover.csv", ("d_m", "d_over_rb", "frequency_rad_s",
                                                        "frequency_over_omega0", "max_double_excitation"), rows))
    plot = Plot("Two-atom blockade crossover", "d / r_b", "max P(both excited)", logx=True)
    plot.add("max P(rr)", ratios, [r.max_double_excitation for r in table])
    bundle.plots["oracle_crossover.svg"] = plot
    bundle.summary["blockade_radius_m"] = r_b
    half = crossover_half_point(table)
    bundle.summary["half_point_m"] = half
    bundle.summary["half_point_over_rb"] = half / r_b
    return bundle


def run_curve(config):
    cc = config.curve
    trap, schedule, params = _sweep_setup(config)
    _, state, prof = _profile_at(trap, schedule, cc.temperature_k)
    if cc.component == "thermal":
        prof = prof.thermal_only()
    times = np.linspace(0.0, cc.t_max_ns * 1e-9, cc.points)
    curve = excitation_curve(prof, params, times, clip=config.blockade.clip)
    rows = [(t * 1e9, n, f) for t, n, f in zip(times, curve.n_rydberg, curve.fraction)]
    bundle = Bundle()
    bundle.tables.append(Table("curve.csv", ("tau_ns", "n_rydberg", "fraction"), rows))
    plot = Plot(f"Rydberg number at {cc.temperature_k * 1e9:g} nK ({cc.component})", "tau (ns)", "N_R")
    plot.add("N_R", times * 1e9, curve.n_rydberg)
    plot.add("N_sat", [0.0, times[-1] * 1e9], [curve.n_sat, curve.n_sat], dashed=True)
    bundle.plots["curve.svg"] = plot
    bundle.summary.update({
        "temperature_K": cc.temperature_k,
        "atom_number": curve.atom_number,
        "n_sat": curve.n_sat,
        "slope_per_s": curve.slope,
        "saturation_time_s": curve.saturation_time,
        "superatom_count": superatom_count(prof, params, clip=config.blockade.clip),
    })
    return bundle


SCENARIO_RUNNERS = {
    "fig1": run_fig1,
    "fig2b": run_fig2b,
    "fig3": run_fig3,
    "scalings": run_scalings,
    "oracle-sqrtN": run_oracle_sqrtn,
    "oracle-crossover": run_oracle_crossover,
    "curve": run_curve,
}


def run_scenario(config):
    """Compute the tables, plots and summary of ``config.scenario`` (no file I/O)."""
    return SCENARIO_RUNNERS[config.scenario](config)
