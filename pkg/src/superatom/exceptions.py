"""Exception hierarchy shared by the numerical and physics modules."""


class SuperatomError(Exception):
    """Base class for all errors raised by this package."""


class InputError(SuperatomError, ValueError):
    """An argument is outside the domain of the operation."""


class DivergenceError(InputError):
    """A series or integral diverges for the requested arguments."""


class BracketError(SuperatomError, ValueError):
    """The root-finding interval does not bracket a sign change."""


class QuadratureError(SuperatomError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are kept so callers
    can decide whether to accept them.
    """

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error bound={error!r})")
        self.estimate = estimate
        self.error = error


class ResolutionError(SuperatomError, ValueError):
    """The sampling grid is too coarse to resolve the requested feature."""


class RegimeError(SuperatomError, ValueError):
    """Requested time scales violate the regime separation a method assumes."""


class OracleSizeError(InputError):
    """Too many atoms for dense state-vector simulation."""


class GeometryError(InputError):
    """Atom positions are degenerate (e.g. two atoms coincide)."""


class IntegrationError(SuperatomError, ArithmeticError):
    """Time evolution drifted away from unit norm."""


class ConfigError(SuperatomError, ValueError):
    """A scenario configuration could not be parsed or validated.

    ``problems`` lists every violation found, each as ``(location, message)``.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = [f"{loc}: {msg}" if loc else msg for loc, msg in self.problems]
        super().__init__("invalid configuration:\n  " + "\n  ".join(lines))
