"""Classical trajectory, action-variable energy and flux decomposition.

A classical electron (energy E > m, angular momentum L0 about the flux
axis) moves on the straight line

    r(phi) = r_min / cos(phi - phi0),   r_min = (L0 + eB) / sqrt(E^2 - m^2),

so the net deflection vanishes.  Expressed through the action variables
the energy of the bound problem is

    E(J_r, J_phi) = m [1 + a^2 / (J_r + sqrt((J_phi + eB)^2 - a^2))^2]^(-1/2)

and the substitution J_r = n, J_phi = l + 1/2 (hbar = 1) reproduces the
exact Dirac spectrum, an algebraic identity this module exposes for
cross-validation.

The flux also defines the conserved charge q = eB = Phi/Phi_0 whose
integer part is the topological number and whose fractional part (the
"defect") is what interference actually observes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SupercriticalError
from .spectrum import Coupling

__all__ = [
    "ClassicalOrbit",
    "ActionVariables",
    "TopologicalCharge",
    "classical_trajectory",
    "semiclassical_energy",
    "topological_charge",
]


@dataclass(frozen=True)
class ClassicalOrbit:
    """Scattering orbit parameters: E > m, L0, perihelion and orientation."""

    energy: float
    angular_momentum: float
    r_min: float
    phi0: float = 0.0

    @classmethod
    def from_coupling(cls, c: Coupling, energy: float, angular_momentum: float,
                      phi0: float = 0.0) -> "ClassicalOrbit":
        if energy <= c.m:
            raise DomainError(f"classical orbit requires E > m, got {energy}")
        p = math.sqrt(energy ** 2 - c.m ** 2)
        r_min = (angular_momentum + c.eB) / p
        if r_min <= 0.0:
            raise DomainError(
                f"perihelion (L0 + eB)/p = {r_min} must be positive")
        return cls(energy=energy, angular_momentum=angular_momentum,
                   r_min=r_min, phi0=phi0)


@dataclass(frozen=True)
class ActionVariables:
    """Radial and angular action variables (hbar = 1 units)."""

    j_r: float
    j_phi: float

    @classmethod
    def quantized(cls, l: int, n: int) -> "ActionVariables":
        return cls(j_r=float(n), j_phi=l + 0.5)


@dataclass(frozen=True)
class TopologicalCharge:
    """q = flux in quantum units; integer part plus defect in [0, 1)."""

    q: float
    integer_part: int
    defect: float


def classical_trajectory(orbit: ClassicalOrbit,
                         phi_grid: np.ndarray) -> list[tuple[float, float]]:
    """Sample r(phi) = r_min / cos(phi - phi0) along phi_grid.

    The polar samples lie on a straight line at distance r_min from the
    origin; requires cos(phi - phi0) > 0 on the whole grid.
    """
    phi_grid = np.asarray(phi_grid, dtype=float)
    cosines = np.cos(phi_grid - orbit.phi0)
    if np.any(cosines <= 0.0):
        raise DomainError(
            "trajectory parametrization needs |phi - phi0| < pi/2 on the grid")
    radii = orbit.r_min / cosines
    return list(zip(phi_grid.tolist(), radii.tolist()))


def semiclassical_energy(c: Coupling, av: ActionVariables) -> float:
    """Action-variable energy; equals the Dirac level at quantized actions."""
    w = av.j_phi + c.eB
    disc = w * w - c.a * c.a
    if disc <= 0.0:
        raise SupercriticalError(
            f"(J_phi + eB)^2 = {w * w:.6g} <= a^2: no semiclassical orbit")
    denom = av.j_r + math.sqrt(disc)
    return c.m / math.sqrt(1.0 + (c.a / denom) ** 2)


def topological_charge(eB: float) -> TopologicalCharge:
    """Flux in quantum units split as q = floor(q) + defect, defect in [0, 1).

    For |eB| below roundoff of 1 the subtraction eB - floor(eB) can round
    up to exactly 1.0; the split then snaps to the nearest integer so the
    defect interval invariant always holds.
    """
    integer_part = math.floor(eB)
    defect = eB - integer_part
    if defect >= 1.0:
        integer_part += 1
        defect = 0.0
    return TopologicalCharge(q=eB, integer_part=integer_part, defect=defect)
