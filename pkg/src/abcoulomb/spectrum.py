"""Channel bookkeeping and closed-form bound-state spectra.

A planar Dirac electron in a flux line (dimensionless flux eB) plus an
attractive 2D Coulomb field of strength a has, per angular channel l,

    kappa = l + eB + 1/2,          nu = |l + eB|,
    gamma = 1/2 + sqrt(kappa^2 - a^2)        (subcritical: kappa^2 > a^2),

and discrete levels

    E_n = m [1 + a^2 / (n + sqrt(kappa^2 - a^2))^2]^(-1/2),

with n = 0, 1, 2, ... for kappa > 0 and n = 1, 2, 3, ... for kappa < 0.
The spinless (Klein--Gordon) analogue replaces the exponent by
gamma_s = sqrt((l+eB)^2 - a^2) and shifts n by -1/2; it requires
(l+eB)^2 > a^2, which in particular forbids the l = 0 level at eB = 0.

Channels with kappa^2 <= a^2 ("supercritical") fall to the center and are
tagged, never solved.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import (
    InadmissibleQuantumNumber,
    SupercriticalError,
    ZeroCouplingError,
)

__all__ = [
    "Regime",
    "Coupling",
    "Channel",
    "BoundState",
    "SpectrumTable",
    "make_channel",
    "admissible_n",
    "dirac_energy",
    "kg_energy",
    "spectrum_table",
]


class Regime(enum.Enum):
    SUBCRITICAL = "subcritical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class Coupling:
    """External-field configuration.

    a    -- Coulomb strength (>= 0, attractive; hbar = c = 1)
    eB   -- flux parameter, flux / (2 pi) in units of the flux quantum
    m    -- electron mass (> 0)
    eta  -- Dirac-matrix representation sign (+1 or -1).  All quantities
            computed here are eta-independent; the field is carried for
            bookkeeping in the eta = +1 convention used throughout.
    """

    a: float
    eB: float = 0.0
    m: float = 1.0
    eta: int = 1

    def __post_init__(self):
        if self.a < 0.0:
            raise ValueError(f"Coulomb strength must be >= 0, got a = {self.a}")
        if self.m <= 0.0:
            raise ValueError(f"mass must be > 0, got m = {self.m}")
        if self.eta not in (1, -1):
            raise ValueError(f"eta must be +1 or -1, got {self.eta}")


@dataclass(frozen=True)
class Channel:
    """One angular sector: l plus the derived kappa, nu and exponent gamma.

    gamma_exp is None in the supercritical regime (both indicial roots are
    complex there and no self-adjoint choice is made).
    """

    l: int
    kappa: float
    nu: float
    gamma_exp: float | None
    regime: Regime

    @property
    def subcritical(self) -> bool:
        return self.regime is Regime.SUBCRITICAL


@dataclass(frozen=True)
class BoundState:
    """Discrete level: quantum numbers, energy and decay scale.

    energy is in the same units as Coupling.m; lambda_ = sqrt(m^2 - E^2).
    """

    l: int
    n: int
    energy: float
    lambda_: float
    gamma_exp: float


@dataclass(frozen=True)
class SpectrumTable:
    """Sorted bound levels plus per-channel bookkeeping flags."""

    levels: list[BoundState]
    supercritical_channels: list[int]
    zero_coupling: bool


def make_channel(c: Coupling, l: int) -> Channel:
    """Classify channel l of coupling c and compute its exponent."""
    kappa = l + c.eB + 0.5
    nu = abs(l + c.eB)
    disc = kappa * kappa - c.a * c.a
    if disc > 0.0:
        return Channel(l=l, kappa=kappa, nu=nu,
                       gamma_exp=0.5 + math.sqrt(disc),
                       regime=Regime.SUBCRITICAL)
    return Channel(l=l, kappa=kappa, nu=nu, gamma_exp=None,
                   regime=Regime.SUPERCRITICAL)


def admissible_n(ch: Channel) -> range:
    """Admissible radial quantum numbers of a subcritical channel.

    Returns an unbounded conceptual set truncated at a large sentinel via
    ``range``: n >= 0 for kappa > 0 and n >= 1 for kappa < 0.  kappa = 0
    sits on neither branch and is rejected.
    """
    if ch.kappa == 0.0:
        raise InadmissibleQuantumNumber(
            "kappa = 0 (l + eB = -1/2): no admissible quantum numbers")
    if not ch.subcritical:
        raise SupercriticalError(
            f"channel l={ch.l} (kappa={ch.kappa}) is supercritical")
    start = 0 if ch.kappa > 0.0 else 1
    return range(start, 1 << 30)


def _principal_quantum(c: Coupling, l: int, n: int) -> tuple[Channel, float]:
    ch = make_channel(c, l)
    if not ch.subcritical:
        raise SupercriticalError(
            f"channel l={l} (kappa={ch.kappa}) is supercritical for a={c.a}")
    if n not in admissible_n(ch):
        raise InadmissibleQuantumNumber(
            f"n={n} not admissible for kappa={ch.kappa} "
            f"(minimum is {admissible_n(ch).start})")
    return ch, n + math.sqrt(ch.kappa ** 2 - c.a ** 2)


def dirac_energy(c: Coupling, l: int, n: int) -> BoundState:
    """Closed-form Dirac level E_n of channel l.

    Strictly increasing in n with supremum m.  Raises ZeroCouplingError at
    a = 0 (the flux line alone binds nothing).
    """
    if c.a == 0.0:
        raise ZeroCouplingError("no bound states at a = 0")
    ch, big_n = _principal_quantum(c, l, n)
    energy = c.m / math.sqrt(1.0 + (c.a / big_n) ** 2)
    lam = math.sqrt(c.m ** 2 - energy ** 2)
    return BoundState(l=l, n=n, energy=energy, lambda_=lam,
                      gamma_exp=ch.gamma_exp)


def kg_energy(c: Coupling, l: int, n: int) -> float:
    """Spinless (Klein--Gordon) level of channel l.

    Requires (l+eB)^2 > a^2 and n >= 1.  At eB = 0 this rejects l = 0 for
    every a > 0.
    """
    if c.a == 0.0:
        raise ZeroCouplingError("no bound states at a = 0")
    if n < 1:
        raise InadmissibleQuantumNumber(f"spinless levels need n >= 1, got n={n}")
    w = l + c.eB
    disc = w * w - c.a * c.a
    if disc <= 0.0:
        raise SupercriticalError(
            f"(l+eB)^2 = {w * w:.6g} <= a^2 = {c.a ** 2:.6g}: no spinless level")
    big_n = n - 0.5 + math.sqrt(disc)
    return c.m / math.sqrt(1.0 + (c.a / big_n) ** 2)


def spectrum_table(c: Coupling, l_values, n_max: int) -> SpectrumTable:
    """All admissible Dirac levels for l in l_values, n <= n_max.

    Levels are sorted by (l, n); supercritical channels are skipped and
    reported in ``supercritical_channels``.  At a = 0 the table is empty
    and flagged.
    """
    l_values = list(l_values)
    if not l_values or n_max < 0:
        raise ValueError("spectrum_table needs a nonempty l range and n_max >= 0")
    if c.a == 0.0:
        return SpectrumTable(levels=[], supercritical_channels=[],
                             zero_coupling=True)
    levels: list[BoundState] = []
    skipped: list[int] = []
    for l in sorted(l_values):
        ch = make_channel(c, l)
        if not ch.subcritical or ch.kappa == 0.0:
            skipped.append(l)
            continue
        for n in range(admissible_n(ch).start, n_max + 1):
            levels.append(dirac_energy(c, l, n))
    levels.sort(key=lambda st: (st.l, st.n))
    return SpectrumTable(levels=levels, supercritical_channels=skipped,
                         zero_coupling=False)
