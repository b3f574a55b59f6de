"""Exception hierarchy shared by all abcoulomb modules."""


class AbcoulombError(Exception):
    """Base class for every error raised by this package."""


class PoleError(AbcoulombError):
    """Gamma function evaluated at (or within tolerance of) a nonpositive integer."""


class NoConvergence(AbcoulombError):
    """A series, asymptotic expansion or extrapolation failed to reach tolerance."""


class DomainError(AbcoulombError):
    """Argument outside the mathematical domain of the operation."""


class SupercriticalError(AbcoulombError):
    """Channel with kappa^2 <= a^2: the pure Coulomb treatment does not apply."""


class InadmissibleQuantumNumber(AbcoulombError):
    """Quantum number (l, n) outside the admissible set of the channel."""


class ZeroCouplingError(AbcoulombError):
    """Bound-state operation requested at a = 0 (no bound states exist)."""


class QuadratureFailure(AbcoulombError):
    """Normalization quadrature could not reach the requested accuracy."""


class ForwardSingularity(AbcoulombError):
    """Scattering amplitude requested inside the forward cone |sin(phi/2)| ~ 0."""


class PoleProximity(AbcoulombError):
    """Below-threshold S matrix evaluated too close to a bound-state pole."""


class ConfigError(AbcoulombError):
    """Malformed run configuration (CLI or service request)."""
