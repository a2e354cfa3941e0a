import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from superatom.blockade import (
    C6_43S_AU,
    BlockadeParams,
    LaserParams,
    blockade_radius_from_density,
    fcc_lattice_sum,
    fcc_site_density,
    saturation_density,
    scattering_probability,
    two_photon_rabi,
)
from superatom.exceptions import InputError
from superatom.numerics import CONSTANTS, c6_au_to_si, fit_power_law

TWO_PI = 2 * np.pi


def eq1_residual(n_g, n_r, params):
    """Relative residual of 1/2 Z |C6| n_R^2 = kappa hbar sqrt(n_g / n_R) Omega_0."""
    lhs = 0.5 * params.z_lattice * abs(params.c6) * n_r**2
    rhs = params.kappa * CONSTANTS.hbar * np.sqrt(n_g / n_r) * params.omega0
    return abs(lhs - rhs) / rhs


def brute_force_n_r(n_g, params):
    g = lambda x: 0.5 * params.z_lattice * abs(params.c6) * x**2 - (  # noqa: E731
        params.kappa * CONSTANTS.hbar * np.sqrt(n_g / x) * params.omega0)
    return brentq(g, 1e3, 1e30, xtol=1e-30, rtol=1e-15)


# ---- lasers ----------------------------------------------------------------

def test_two_photon_rabi_experiment():
    omega = two_photon_rabi(LaserParams.experiment())
    assert omega / TWO_PI == pytest.approx(110.4e3, abs=0.1e3)


def test_two_photon_rabi_scalings():
    base = LaserParams.from_hz(11e6, 9.7e6, 483e6)
    assert two_photon_rabi(LaserParams.from_hz(11e6, 0.0, 483e6)) == 0.0
    assert two_photon_rabi(LaserParams.from_hz(11e6, 9.7e6, 966e6)) == pytest.approx(
        0.5 * two_photon_rabi(base), rel=1e-14)


def test_zero_detuning_is_division_error():
    with pytest.raises(ZeroDivisionError):
        LaserParams.from_hz(11e6, 9.7e6, 0.0)


def test_small_detuning_warns():
    with pytest.warns(UserWarning):
        LaserParams.from_hz(11e6, 9.7e6, 50e6)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        LaserParams.experiment()


def test_scattering_probability():
    lasers = LaserParams.experiment()
    p = scattering_probability(lasers, 1.97e-6)
    assert 0.005 <= p <= 0.02
    assert p == pytest.approx(0.01, rel=0.5)
    assert scattering_probability(lasers, 0.0) == 0.0
    far = LaserParams.from_hz(11e6, 9.7e6, 966e6)
    assert scattering_probability(far, 1e-6) == pytest.approx(0.25 * scattering_probability(lasers, 1e-6))
    with pytest.raises(InputError):
        scattering_probability(lasers, -1.0)


# ---- blockade parameters ---------------------------------------------------

def test_params_from_lasers_applies_reduction():
    p = BlockadeParams.from_lasers(LaserParams.experiment(), rabi_reduction=5.5)
    assert p.omega0 == pytest.approx(two_photon_rabi(LaserParams.experiment()) / 5.5, rel=1e-14)
    assert p.bare_omega0 == pytest.approx(two_photon_rabi(LaserParams.experiment()), rel=1e-14)
    d = BlockadeParams.default()
    assert (d.kappa, d.z_lattice, d.rabi_reduction) == (0.3, 14.5, 5.5)
    assert d.c6 == pytest.approx(c6_au_to_si(C6_43S_AU))


@pytest.mark.parametrize("field", ["omega0", "kappa", "z_lattice"])
def test_params_validation(field):
    kwargs = dict(omega0=1.0)
    kwargs[field] = -1.0
    with pytest.raises(InputError):
        BlockadeParams(**kwargs)
    with pytest.raises(InputError):
        BlockadeParams(omega0=1.0, c6=0.0)


# ---- saturation density ----------------------------------------------------

def test_saturation_density_headline_example():
    params = BlockadeParams(omega0=TWO_PI * 110e3, c6=-1.63e-60, z_lattice=14.5, kappa=0.3)
    loc = saturation_density(4.9e19, params)
    assert float(loc.n_r) == pytest.approx(brute_force_n_r(4.9e19, params), rel=1e-10)
    assert float(loc.n_r) == pytest.approx(1.1e16, rel=0.05)
    assert float(loc.collective_rabi) / TWO_PI == pytest.approx(7e6, rel=0.07)


def test_saturation_density_zero_and_scaling():
    params = BlockadeParams.default()
    zero = saturation_density(0.0, params)
    assert zero.n_r == 0 and zero.collective_rabi == 0 and zero.atoms_per_superatom == 0
    assert np.isinf(zero.blockade_radius)
    a = saturation_density(1e19, params)
    b = saturation_density(32e19, params)
    assert float(b.n_r / a.n_r) == pytest.approx(2.0, rel=1e-13)
    assert float(b.collective_rabi / a.collective_rabi) == pytest.approx(32**0.4, rel=1e-13)
    with pytest.raises(InputError):
        saturation_density(-1.0, params)


def test_local_blockade_identities():
    params = BlockadeParams.default()
    n_g = np.geomspace(1e13, 1e22, 30)
    loc = saturation_density(n_g, params)
    np.testing.assert_allclose(loc.n_r, np.sqrt(2) / loc.blockade_radius**3, rtol=1e-12)
    np.testing.assert_allclose(loc.collective_rabi, np.sqrt(n_g / loc.n_r) * params.omega0, rtol=1e-12)
    np.testing.assert_allclose(loc.atoms_per_superatom, n_g / loc.n_r, rtol=1e-12)
    assert np.all(loc.fraction <= 1) and np.all(loc.fraction_raw >= loc.fraction)
    # unphysical n_R > n_g appears at low density and is clipped
    assert loc.fraction_raw[0] > 1 and loc.fraction[0] == 1


@settings(max_examples=100, deadline=None)
@given(st.floats(14, 23), st.floats(3, 7), st.floats(-2, 1))
def test_eq1_round_trip(log_n, log_omega, log_kappa):
    params = BlockadeParams(omega0=10**log_omega, kappa=10**log_kappa)
    n_g = 10**log_n
    loc = saturation_density(n_g, params)
    assert eq1_residual(n_g, float(loc.n_r), params) < 1e-10


def test_exponents():
    params = BlockadeParams.default()
    n_g = np.geomspace(1e17, 1e21, 9)
    omegas = np.geomspace(1e4, 1e6, 9)
    by_n = saturation_density(n_g, params)
    by_w = [saturation_density(1e19, params.with_omega0(w)) for w in omegas]
    assert fit_power_law(n_g, by_n.n_r).exponent == pytest.approx(0.2, abs=1e-6)
    assert fit_power_law(omegas, [float(b.n_r) for b in by_w]).exponent == pytest.approx(0.4, abs=1e-6)
    assert fit_power_law(n_g, by_n.collective_rabi).exponent == pytest.approx(0.4, abs=1e-6)
    assert fit_power_law(omegas, [float(b.collective_rabi) for b in by_w]).exponent == pytest.approx(0.8, abs=1e-6)


def test_blockade_radius_monotone():
    params = BlockadeParams.default()
    r = saturation_density(np.geomspace(1e17, 1e21, 20), params).blockade_radius
    assert np.all(np.diff(r) < 0)
    omegas = np.geomspace(1e4, 1e6, 20)
    r_w = [float(saturation_density(1e19, params.with_omega0(w)).blockade_radius) for w in omegas]
    assert np.all(np.diff(r_w) < 0)


# ---- packing ---------------------------------------------------------------

def test_blockade_radius_from_density():
    assert blockade_radius_from_density(9e15) == pytest.approx(5.4e-6, abs=0.05e-6)
    assert blockade_radius_from_density(np.sqrt(2)) == pytest.approx(1.0, rel=1e-14)
    assert blockade_radius_from_density(8 * 9e15) == pytest.approx(0.5 * blockade_radius_from_density(9e15))
    with pytest.raises(InputError):
        blockade_radius_from_density(0.0)


def test_fcc_lattice_sum():
    assert fcc_lattice_sum(1) == 12.0
    sums = [fcc_lattice_sum(s) for s in (1, 2, 3, 5, 10, 20, 40)]
    assert np.all(np.diff(sums) >= 0)
    assert fcc_lattice_sum(200) == pytest.approx(14.45, abs=0.05)
    with pytest.raises(InputError):
        fcc_lattice_sum(0)


def test_fcc_site_density():
    for d in (1.0, 5.4e-6):
        assert fcc_site_density(d) * d**3 == pytest.approx(np.sqrt(2), rel=1e-3)
