"""Planar Dirac electron in a flux line plus 2D Coulomb field.

Closed-form bound spectra, radial wavefunctions, partial-wave phase
shifts, scattering amplitudes and interference cross sections, with the
spectrum cross-validated through three independent routes (direct
formula, S-matrix poles, semiclassical quantization).
"""

from .config import ToleranceProfile, active_profile
from .errors import (
    AbcoulombError,
    ConfigError,
    DomainError,
    ForwardSingularity,
    InadmissibleQuantumNumber,
    NoConvergence,
    PoleError,
    PoleProximity,
    QuadratureFailure,
    SupercriticalError,
    ZeroCouplingError,
)
from .spectrum import (
    BoundState,
    Channel,
    Coupling,
    Regime,
    admissible_n,
    dirac_energy,
    kg_energy,
    make_channel,
    spectrum_table,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ToleranceProfile",
    "active_profile",
    "AbcoulombError",
    "ConfigError",
    "DomainError",
    "ForwardSingularity",
    "InadmissibleQuantumNumber",
    "NoConvergence",
    "PoleError",
    "PoleProximity",
    "QuadratureFailure",
    "SupercriticalError",
    "ZeroCouplingError",
    "BoundState",
    "Channel",
    "Coupling",
    "Regime",
    "admissible_n",
    "dirac_energy",
    "kg_energy",
    "make_channel",
    "spectrum_table",
]
