"""Piecewise-analytic eigenfunctions, localized superpositions, and the
dipole matrix element.

Below the barrier an eigenfunction is a sinusoid in each valley (vanishing
at the infinite wall) and a cosh (even) or sinh (odd) across the barrier:

    even:  A sin(alpha (a+b+x)) | C cosh(beta x) | A sin(alpha (a+b-x))
    odd:  -A sin(alpha (a+b+x)) | D sinh(beta x) | A sin(alpha (a+b-x))

with alpha = sqrt(2 m E)/hbar and beta = sqrt(2 m (k-E))/hbar.  Value
matching at x = +-b is built in; derivative matching holds exactly when E
solves the discretization condition, and its residual is checked here.

Sign convention: the even member is positive at x = 0 and the odd member
has positive slope there, which makes the dipole element of the lowest
pair positive and golden outputs reproducible.

Norms and dipole integrals use exact antiderivatives of the piecewise
products; adaptive quadrature is only a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.integrate import quad

from .errors import MatchFailure, QuadratureError
from .spectrum import EnergyLevel
from .units import WellSpec

__all__ = [
    "PiecewiseEigenfunction",
    "LocalizedState",
    "build_eigenfunction",
    "position_matrix_element",
    "dipole_matrix_element",
    "localized_state_value",
    "count_nodes",
]

_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class PiecewiseEigenfunction:
    """One normalized below-barrier eigenfunction on [-(a+b), a+b]."""

    level: EnergyLevel
    a: float
    b: float
    alpha: float
    beta: float
    amplitudes: tuple[float, float, float]  # (left valley, barrier, right valley)
    norm_constant: float
    hbar: float
    mass: float

    @property
    def parity(self) -> str:
        return self.level.parity

    def __call__(self, x) -> np.ndarray:
        """Evaluate pointwise; zero outside the walls."""
        x = np.asarray(x, dtype=float)
        amp_l, amp_b, amp_r = self.amplitudes
        edge = self.a + self.b
        out = np.zeros_like(x)
        left = (x > -edge) & (x < -self.b)
        barrier = np.abs(x) <= self.b
        right = (x > self.b) & (x < edge)
        out[left] = amp_l * np.sin(self.alpha * (x[left] + edge))
        if self.parity == "even":
            out[barrier] = amp_b * np.cosh(self.beta * x[barrier])
        else:
            out[barrier] = amp_b * np.sinh(self.beta * x[barrier])
        out[right] = amp_r * np.sin(self.alpha * (edge - x[right]))
        return out

    def derivative(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        amp_l, amp_b, amp_r = self.amplitudes
        edge = self.a + self.b
        out = np.zeros_like(x)
        left = (x > -edge) & (x < -self.b)
        barrier = np.abs(x) <= self.b
        right = (x > self.b) & (x < edge)
        out[left] = amp_l * self.alpha * np.cos(self.alpha * (x[left] + edge))
        if self.parity == "even":
            out[barrier] = amp_b * self.beta * np.sinh(self.beta * x[barrier])
        else:
            out[barrier] = amp_b * self.beta * np.cosh(self.beta * x[barrier])
        out[right] = -amp_r * self.alpha * np.cos(self.alpha * (edge - x[right]))
        return out


def build_eigenfunction(well: WellSpec, level: EnergyLevel) -> PiecewiseEigenfunction:
    """Construct and normalize the eigenfunction of a solved level."""
    e = level.energy
    if not (math.isfinite(e) and 0.0 < e < well.k):
        raise MatchFailure(f"level energy {e!r} is not below the barrier {well.k!r}")
    hbar = well.constants.hbar
    alpha = math.sqrt(2.0 * well.m * e) / hbar
    beta = math.sqrt(2.0 * well.m * (well.k - e)) / hbar
    a, b = well.a, well.b
    if beta * b > 350.0:
        raise MatchFailure(f"barrier opacity beta*b = {beta * b:.1f} overflows cosh")

    sin_aa = math.sin(alpha * a)
    if abs(sin_aa) < 1e-14:
        raise MatchFailure("sin(alpha a) vanishes; level sits on a node at the wall side")

    if level.parity == "even":
        amp_bar_raw = 1.0
        amp_raw = math.cosh(beta * b) / sin_aa
        deriv_lhs = -alpha * amp_raw * math.cos(alpha * a)
        deriv_rhs = beta * math.sinh(beta * b)
        norm_sq = (2.0 * amp_raw**2 * _int_sin_sq(alpha, a)
                   + (b + math.sinh(2.0 * beta * b) / (2.0 * beta)))
    else:
        amp_bar_raw = 1.0
        amp_raw = math.sinh(beta * b) / sin_aa
        deriv_lhs = -alpha * amp_raw * math.cos(alpha * a)
        deriv_rhs = beta * math.cosh(beta * b)
        norm_sq = (2.0 * amp_raw**2 * _int_sin_sq(alpha, a)
                   + (math.sinh(2.0 * beta * b) / (2.0 * beta) - b))

    residual = abs(deriv_lhs - deriv_rhs) / max(abs(deriv_lhs), abs(deriv_rhs))
    if residual > _MATCH_TOL:
        raise MatchFailure(
            f"derivative matching residual {residual:.2e} exceeds {_MATCH_TOL}; "
            "the eigenvalue does not solve the discretization condition")

    norm = 1.0 / math.sqrt(norm_sq)
    amp = amp_raw * norm
    amp_bar = amp_bar_raw * norm
    amp_left = amp if level.parity == "even" else -amp
    return PiecewiseEigenfunction(level, a, b, alpha, beta,
                                  (amp_left, amp_bar, amp), norm, hbar, well.m)


def _int_sin_sq(p: float, a: float) -> float:
    # int_0^a sin^2(p u) du
    return a / 2.0 - math.sin(2.0 * p * a) / (4.0 * p)


def _int_sin_sin(p: float, q: float, a: float) -> float:
    # int_0^a sin(p u) sin(q u) du; the p != q form is cancellation-free
    if p == q:
        return _int_sin_sq(p, a)
    dm, dp = p - q, p + q
    return math.sin(dm * a) / (2.0 * dm) - math.sin(dp * a) / (2.0 * dp)


def _int_u_cos(c: float, a: float) -> float:
    # int_0^a u cos(c u) du, stable for small c via cos(x)-1 = -2 sin^2(x/2)
    if c == 0.0:
        return a * a / 2.0
    half = math.sin(0.5 * c * a)
    return (-2.0 * half * half) / (c * c) + a * math.sin(c * a) / c


def _int_u_sin_sin(p: float, q: float, a: float) -> float:
    # int_0^a u sin(p u) sin(q u) du
    if p == q:
        return a * a / 4.0 - _int_u_cos(2.0 * p, a) / 2.0
    return 0.5 * (_int_u_cos(p - q, a) - _int_u_cos(p + q, a))


def _int_u_sinh(c: float, b: float) -> float:
    # int_0^b u sinh(c u) du
    return b * math.cosh(c * b) / c - math.sinh(c * b) / (c * c)


def position_matrix_element(f: PiecewiseEigenfunction, g: PiecewiseEigenfunction) -> float:
    """<f| x |g> from exact piecewise antiderivatives."""
    if not (f.a == g.a and f.b == g.b):
        raise ValueError("eigenfunctions live on different wells")
    a, b = f.a, f.b
    fl, fb, fr = f.amplitudes
    gl, gb, gr = g.amplitudes

    iw1 = _int_sin_sin(f.alpha, g.alpha, a)
    iw2 = _int_u_sin_sin(f.alpha, g.alpha, a)
    wells = (fr * gr - fl * gl) * ((a + b) * iw1 - iw2)

    if f.parity == g.parity:
        barrier = 0.0  # x * (even*even or odd*odd) is odd over [-b, b]
    else:
        # x cosh(p x) sinh(q x) is even; cosh sinh = [sinh((q+p)x) + sinh((q-p)x)]/2
        p = f.beta if f.parity == "even" else g.beta
        q = g.beta if f.parity == "even" else f.beta
        coeff = fb * gb
        barrier = coeff * (_int_u_sinh(q + p, b) + _int_u_sinh_stable(q - p, b))
    return wells + barrier


def _int_u_sinh_stable(c: float, b: float) -> float:
    # int_0^b u sinh(c u) du, series for small |c| b where the closed form cancels
    if abs(c) * b < 1e-4:
        cb = c * b
        return c * b**3 / 3.0 * (1.0 + cb * cb / 10.0)
    return _int_u_sinh(c, b)


def dipole_matrix_element(psi0: PiecewiseEigenfunction, psi1: PiecewiseEigenfunction,
                          *, cross_check: bool = True) -> float:
    """|<psi0| x |psi1>| for an opposite-parity pair; positive by the sign
    convention (equivalent to flipping psi1's global sign when needed).

    When cross_check is set the analytic value is validated against
    adaptive quadrature to 1e-10 relative."""
    if psi0.parity == psi1.parity:
        raise ValueError("dipole element needs opposite parities")
    d = position_matrix_element(psi0, psi1)
    edge = psi0.a + psi0.b
    if not 0.0 < abs(d) < edge:
        raise ValueError(f"dipole element {d!r} outside (0, a+b)")
    if cross_check:
        d_num = _quad_position(psi0, psi1)
        tol = 1e-10 * max(abs(d), 1e-3 * edge)
        if abs(d_num - d) > tol:
            raise QuadratureError(
                f"analytic dipole {d:.15e} vs quadrature {d_num:.15e} beyond {tol:.1e}")
    return abs(d)


def _quad_position(f: PiecewiseEigenfunction, g: PiecewiseEigenfunction) -> float:
    edge = f.a + f.b

    def integrand(x: float) -> float:
        xv = np.array([x])
        return float(x * f(xv)[0] * g(xv)[0])

    total = 0.0
    for lo, hi in ((-edge, -f.b), (-f.b, f.b), (f.b, edge)):
        val, _ = quad(integrand, lo, hi, epsabs=1e-14 * edge, epsrel=1e-12, limit=200)
        total += val
    return total


@dataclass(frozen=True)
class LocalizedState:
    """Equal-weight superposition of the lowest pair, oscillating between
    the wells at omega = (E1 - E0)/hbar; 'L' takes the + combination."""

    psi0: PiecewiseEigenfunction
    psi1: PiecewiseEigenfunction
    side: Literal["L", "R"]

    def __post_init__(self) -> None:
        if self.psi0.parity == self.psi1.parity:
            raise ValueError("localized states need an opposite-parity pair")

    def __call__(self, x, t: float) -> np.ndarray:
        return localized_state_value(self, x, t)

    @property
    def mirror(self) -> "LocalizedState":
        return LocalizedState(self.psi0, self.psi1, "R" if self.side == "L" else "L")


def localized_state_value(state: LocalizedState, x, t: float) -> np.ndarray:
    """(1/sqrt2) [exp(-i E0 t/hbar) psi0 +- exp(-i E1 t/hbar) psi1]."""
    hbar = state.psi0.hbar
    sign = 1.0 if state.side == "L" else -1.0
    phase0 = np.exp(-1j * state.psi0.level.energy * t / hbar)
    phase1 = np.exp(-1j * state.psi1.level.energy * t / hbar)
    return (phase0 * state.psi0(x) + sign * phase1 * state.psi1(x)) / math.sqrt(2.0)


def count_nodes(psi: PiecewiseEigenfunction, samples: int = 10_000) -> int:
    """Interior sign changes on a uniform grid (walls excluded)."""
    edge = psi.a + psi.b
    x = np.linspace(-edge, edge, samples + 2)[1:-1]
    values = psi(x)
    values = values[np.abs(values) > 1e-30]
    return int(np.sum(np.sign(values[1:]) != np.sign(values[:-1])))
