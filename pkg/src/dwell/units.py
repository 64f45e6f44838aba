"""Physical constants, the double-square-well geometry, and the
dimensionless scaling used by every solver module.

The well is the even piecewise-constant potential with infinite walls at
x = +-(a+b), two flat valleys of width a, and a central barrier of height
k on [-b, b].  All spectral math runs on the dimensionless pair

    kappa = k / B,    lambda = b / a,    B = pi^2 hbar^2 / (2 m a^2),

so that root-finding happens on O(1) numbers instead of 1e-26 J.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import NonFiniteScaling

__all__ = [
    "PhysicalConstants",
    "PAPER_CONSTANTS",
    "CODATA_CONSTANTS",
    "constants_from_env",
    "WellSpec",
    "ScaledWell",
    "barrier_bound",
    "to_dimensionless",
    "from_dimensionless",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants entering the solver.

    hbar: reduced Planck constant (J s)
    m_e: electron rest mass (kg); the "paper" set keeps the 2-digit
         9.1e-31 kg, the "codata" set the full CODATA 2018 value
    c: speed of light (m/s)
    b_w: Wien displacement constant (m K)
    """

    hbar: float = 1.054571817e-34
    m_e: float = 9.1e-31
    c: float = 2.99792458e8
    b_w: float = 2.897771955e-3

    def __post_init__(self) -> None:
        for name in ("hbar", "m_e", "c", "b_w"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"constant {name} must be finite and > 0, got {v!r}")


PAPER_CONSTANTS = PhysicalConstants()
CODATA_CONSTANTS = PhysicalConstants(m_e=9.1093837015e-31)

_CONSTANT_SETS = {"paper": PAPER_CONSTANTS, "codata": CODATA_CONSTANTS}


def constants_from_env(env_var: str = "DWELL_CONSTANTS") -> PhysicalConstants:
    """Pick the electron-mass convention from the environment (default paper)."""
    mode = os.environ.get(env_var, "paper").strip().lower()
    try:
        return _CONSTANT_SETS[mode]
    except KeyError:
        raise ValueError(f"{env_var} must be 'paper' or 'codata', got {mode!r}") from None


@dataclass(frozen=True)
class WellSpec:
    """One double square well: valley width a, barrier half-width b,
    barrier height k, particle mass m (all SI)."""

    a: float
    b: float
    k: float
    m: float
    constants: PhysicalConstants = PAPER_CONSTANTS

    def __post_init__(self) -> None:
        for name in ("a", "b", "k", "m"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"well parameter {name} must be finite and > 0, got {v!r}")

    @property
    def barrier_bound(self) -> float:
        """Confinement scale B = pi^2 hbar^2 / (2 m a^2) in J; the first
        level pair always lies in (B/4, B)."""
        return barrier_bound(self)

    @property
    def has_bound_pair(self) -> bool:
        """True when k > B/4, the condition for any level below the barrier."""
        return self.k > self.barrier_bound / 4

    @property
    def big_enough(self) -> bool:
        """Deep-barrier regime flag k >= 10 B (narrow tunneling gap)."""
        return self.k >= 10 * self.barrier_bound

    @property
    def half_width(self) -> float:
        """Distance from the center to either infinite wall, a + b."""
        return self.a + self.b

    def with_b(self, b: float) -> "WellSpec":
        return WellSpec(self.a, b, self.k, self.m, self.constants)


def barrier_bound(spec: WellSpec) -> float:
    """B = pi^2 hbar^2 / (2 m a^2), the energy bounding the lowest pair."""
    hbar = spec.constants.hbar
    return math.pi**2 * hbar**2 / (2.0 * spec.m * spec.a * spec.a)


@dataclass(frozen=True)
class ScaledWell:
    """Dimensionless well (kappa = k/B, lam = b/a) plus the SI context
    (b_scale = B in J, valley width a, mass m) needed to map back."""

    kappa: float
    lam: float
    b_scale: float = field(repr=False, default=math.nan)
    a: float = field(repr=False, default=math.nan)
    m: float = field(repr=False, default=math.nan)
    constants: PhysicalConstants = field(repr=False, default=PAPER_CONSTANTS)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise NonFiniteScaling(f"kappa must be finite and > 0, got {self.kappa!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise NonFiniteScaling(f"lambda must be finite and > 0, got {self.lam!r}")


def to_dimensionless(spec: WellSpec) -> ScaledWell:
    """Rescale a WellSpec to (kappa, lambda); inverse of from_dimensionless."""
    b_scale = barrier_bound(spec)
    kappa = spec.k / b_scale if b_scale > 0.0 else math.inf
    if not math.isfinite(kappa):
        raise NonFiniteScaling(f"k/B = {spec.k}/{b_scale} is not finite")
    return ScaledWell(kappa=kappa, lam=spec.b / spec.a, b_scale=b_scale,
                      a=spec.a, m=spec.m, constants=spec.constants)


def from_dimensionless(well: ScaledWell) -> WellSpec:
    """Reconstruct the SI WellSpec carried by a ScaledWell."""
    if not (math.isfinite(well.a) and math.isfinite(well.m)):
        raise NonFiniteScaling("this ScaledWell carries no SI context")
    return WellSpec(a=well.a, b=well.lam * well.a, k=well.kappa * well.b_scale,
                    m=well.m, constants=well.constants)
