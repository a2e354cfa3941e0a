"""scikit-learn compatible wrappers around the superatom model.

* :class:`SuperatomTransformer` maps ground-state densities to local blockade
  quantities, so it can sit in a :class:`~sklearn.pipeline.Pipeline`.
* :class:`PowerLawRegressor` fits ``y = A * prod_j x_j^p_j`` in log space.
* :class:`RydbergFractionModel` predicts the Rydberg fraction versus
  temperature and calibrates ``kappa`` against measured fractions.
"""

import numpy as np
from scipy.optimize import minimize_scalar
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .blockade import C6_43S_AU, BlockadeParams, LaserParams, saturation_density
from .dynamics import rydberg_number
from .gas import AtomNumberSchedule, DensityProfile, TrapConfig, equilibrium_state
from .numerics import c6_au_to_si, fit_power_law

__all__ = ["SuperatomTransformer", "PowerLawRegressor", "RydbergFractionModel", "blockade_params"]


def blockade_params(kappa=0.3, z_lattice=14.5, c6_au=C6_43S_AU, omega0=None, rabi_reduction=5.5,
                    lasers=None):
    """Build :class:`BlockadeParams`; ``omega0=None`` derives it from the lasers and the reduction."""
    c6 = c6_au_to_si(c6_au)
    if omega0 is None:
        return BlockadeParams.from_lasers(lasers, rabi_reduction=rabi_reduction, c6=c6,
                                          z_lattice=z_lattice, kappa=kappa)
    return BlockadeParams(omega0=omega0, c6=c6, z_lattice=z_lattice, kappa=kappa)


def _check_column(X, estimator, reset):
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.shape[1] != 1:
        raise ValueError(f"{type(estimator).__name__} expects a single feature column, got {X.shape[1]}")
    if reset:
        estimator.n_features_in_ = 1
    return X


class SuperatomTransformer(TransformerMixin, BaseEstimator):
    """Ground-state density (m^-3, one column) -> local blockade quantities.

    Output columns: saturation density n_R, blockade radius r_b, atoms per
    superatom N, collective Rabi frequency Omega_c and the clipped local
    fraction n_R / n_g.
    """

    feature_names = ("n_rydberg", "blockade_radius", "atoms_per_superatom", "collective_rabi",
                     "local_fraction")

    def __init__(self, kappa=0.3, z_lattice=14.5, c6_au=C6_43S_AU, omega0=None, rabi_reduction=5.5):
        self.kappa = kappa
        self.z_lattice = z_lattice
        self.c6_au = c6_au
        self.omega0 = omega0
        self.rabi_reduction = rabi_reduction

    def fit(self, X, y=None):
        X = _check_column(X, self, reset=True)
        if np.any(X < 0):
            raise ValueError("densities must be non-negative")
        self.params_ = blockade_params(self.kappa, self.z_lattice, self.c6_au, self.omega0,
                                       self.rabi_reduction)
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = _check_column(X, self, reset=False)
        loc = saturation_density(X[:, 0], self.params_)
        return np.column_stack([loc.n_r, loc.blockade_radius, loc.atoms_per_superatom,
                                loc.collective_rabi, loc.fraction])

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self.feature_names, dtype=object)


class PowerLawRegressor(RegressorMixin, BaseEstimator):
    """Least-squares power law ``y = prefactor * prod_j X[:, j] ** coef_[j]``.

    Fitted in log space; ``residual_`` is the RMS misfit of ``ln y``.
    """

    def fit(self, X, y):
        X, y = check_X_y(X, y, dtype=float, y_numeric=True)
        if np.any(X <= 0) or np.any(y <= 0):
            raise ValueError("power-law regression needs strictly positive X and y")
        self.n_features_in_ = X.shape[1]
        if X.shape[1] == 1:
            fit = fit_power_law(X[:, 0], y)
            self.coef_ = np.array([fit.exponent])
            self.prefactor_ = fit.prefactor
            self.residual_ = fit.residual
            return self
        if len(y) < X.shape[1] + 2:
            raise ValueError("not enough samples for a multi-variable power law")
        design = np.column_stack([np.ones(len(y)), np.log(X)])
        sol, *_ = np.linalg.lstsq(design, np.log(y), rcond=None)
        self.coef_ = sol[1:]
        self.prefactor_ = float(np.exp(sol[0]))
        self.residual_ = float(np.sqrt(np.mean((design @ sol - np.log(y)) ** 2)))
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=float)
        return self.prefactor_ * np.prod(X**self.coef_, axis=1)


class RydbergFractionModel(RegressorMixin, BaseEstimator):
    """Rydberg fraction after a pulse of ``duration`` seconds as a function of temperature.

    ``X`` holds temperatures in K (one column). ``fit`` adjusts ``kappa`` to
    minimise the squared log misfit to measured fractions ``y`` unless
    ``fit_kappa`` is False, in which case it only validates the inputs.

    Parameters
    ----------
    duration : float
        Excitation pulse length (s).
    kappa, z_lattice, c6_au, rabi_reduction : float
        Blockade-condition parameters.
    trap : TrapConfig or None
        Defaults to ``TrapConfig.preset("default")``.
    schedule : AtomNumberSchedule, "constant" or None
        Atom number versus temperature; None uses the default ramp,
        "constant" keeps ``trap.atom_number``.
    component : {"total", "thermal"}
        Whether to include the condensate or only the thermal cloud.
    """

    def __init__(self, duration=370e-9, kappa=0.3, z_lattice=14.5, c6_au=C6_43S_AU, rabi_reduction=5.5,
                 trap=None, schedule=None, component="total", fit_kappa=True, lasers=None):
        self.duration = duration
        self.kappa = kappa
        self.z_lattice = z_lattice
        self.c6_au = c6_au
        self.rabi_reduction = rabi_reduction
        self.trap = trap
        self.schedule = schedule
        self.component = component
        self.fit_kappa = fit_kappa
        self.lasers = lasers

    def _resolved(self):
        trap = TrapConfig.preset() if self.trap is None else self.trap
        if self.schedule is None:
            schedule = AtomNumberSchedule()
        elif self.schedule == "constant":
            schedule = AtomNumberSchedule.constant(trap.atom_number)
        else:
            schedule = self.schedule
        if self.component not in ("total", "thermal"):
            raise ValueError("component must be 'total' or 'thermal'")
        return trap, schedule

    def _fractions(self, temperatures, kappa):
        trap, schedule = self._resolved()
        lasers = LaserParams.experiment() if self.lasers is None else self.lasers
        params = blockade_params(kappa, self.z_lattice, self.c6_au, None, self.rabi_reduction, lasers)
        out = []
        for t in temperatures:
            local = schedule.trap_at(trap, t)
            state = equilibrium_state(local, t)
            profile = DensityProfile(local, state)
            norm = local.atom_number
            if self.component == "thermal":
                profile = profile.thermal_only()
                norm = state.n_thermal
            out.append(rydberg_number(profile, params, self.duration) / norm)
        return np.array(out)

    def fit(self, X, y=None):
        X = _check_column(X, self, reset=True)
        if np.any(X <= 0):
            raise ValueError("temperatures must be positive")
        if not self.fit_kappa or y is None:
            self.kappa_ = float(self.kappa)
            return self
        X, y = check_X_y(X, y, dtype=float, y_numeric=True)
        if np.any(y <= 0):
            raise ValueError("measured fractions must be positive")
        temps, log_y = X[:, 0], np.log(y)

        def loss(log_kappa):
            return float(np.sum((np.log(self._fractions(temps, np.exp(log_kappa))) - log_y) ** 2))

        opt = minimize_scalar(loss, bounds=(np.log(1e-3), np.log(1e3)), method="bounded",
                              options={"xatol": 1e-6})
        self.kappa_ = float(np.exp(opt.x))
        self.loss_ = float(opt.fun)
        return self

    def predict(self, X):
        check_is_fitted(self, "kappa_")
        X = _check_column(X, self, reset=False)
        return self._fractions(X[:, 0], self.kappa_)
