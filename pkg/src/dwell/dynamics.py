"""Two-level dynamics: the zero-point well-to-well oscillation, the
degenerate flip-flop picture, driven Rabi formulas, and the first-order
harmonic transition amplitude, plus the RK4 integrator used to cross-check
every closed form.

Conventions (fixing two sign typos that would make the formulas mutually
inconsistent): omega = (E1 - E0)/hbar and Omega = (E0 + E1)/(2 hbar).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ResonantDenominator
from .spectrum import SpectrumResult, solve_below_barrier
from .units import WellSpec, to_dimensionless

__all__ = [
    "Basis",
    "TwoByTwoOperator",
    "BASIS_CHANGE",
    "TwoLevelSystem",
    "HarmonicDrive",
    "x_expectation",
    "perturbation_matrices",
    "flip_flop",
    "rabi_off_resonance",
    "rabi_localized",
    "transition_amplitude",
    "rk4_two_level",
    "simple_drive_interaction",
    "localized_drive_interaction",
    "flip_flop_generator",
    "rk4_step_for",
]


class Basis(enum.Enum):
    ENERGY = "energy"  # {psi0, psi1}, equivalently {psi+, psi-}
    LOCALIZED = "localized"  # {psi_L, psi_R}


# O maps (1,0) -> (1,1)/sqrt2 and (0,1) -> (1,-1)/sqrt2; its own inverse.
BASIS_CHANGE = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


@dataclass(frozen=True)
class TwoByTwoOperator:
    matrix: np.ndarray
    basis: Basis

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"need a 2x2 matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def rotated(self) -> "TwoByTwoOperator":
        """Conjugate by the basis-change unitary, flipping the tag."""
        other = Basis.LOCALIZED if self.basis is Basis.ENERGY else Basis.ENERGY
        return TwoByTwoOperator(BASIS_CHANGE @ self.matrix @ BASIS_CHANGE, other)


@dataclass(frozen=True)
class TwoLevelSystem:
    """The two lowest levels and their dipole element d = <psi0|x|psi1>."""

    e0: float
    e1: float
    d: float
    hbar: float
    confinement_scale: float | None = None  # B, enables the hbar*omega < 5/4 B check

    def __post_init__(self) -> None:
        if not self.e1 > self.e0:
            raise ValueError(f"need E1 > E0, got {self.e0!r}, {self.e1!r}")
        if self.d <= 0:
            raise ValueError("dipole element must be positive (sign convention)")
        if self.confinement_scale is not None:
            if self.hbar * self.omega >= 1.25 * self.confinement_scale:
                raise ValueError(
                    "hbar*omega >= (5/4)B: the pair splitting exceeds the "
                    "guaranteed distance to the next level")

    @property
    def omega(self) -> float:
        """Oscillation angular frequency (E1 - E0)/hbar."""
        return (self.e1 - self.e0) / self.hbar

    @property
    def big_omega(self) -> float:
        """Mean angular frequency (E0 + E1)/(2 hbar)."""
        return (self.e0 + self.e1) / (2.0 * self.hbar)

    @classmethod
    def from_well(cls, spec: WellSpec) -> "TwoLevelSystem":
        """Solve the well and assemble the system from its lowest pair."""
        from .errors import DegenerateGap
        from .wavefunction import build_eigenfunction, dipole_matrix_element

        result = solve_below_barrier(to_dimensionless(spec))
        levels = {lv.index: lv for lv in result.levels}
        if 0 not in levels or 1 not in levels:
            raise DegenerateGap("well does not hold a full pair below the barrier")
        if levels[1].energy - levels[0].energy < 1e-15 * levels[1].energy:
            raise DegenerateGap(
                "pair splitting is below float64 resolution; no two-level "
                "dynamics can be built from it")
        psi0 = build_eigenfunction(spec, levels[0])
        psi1 = build_eigenfunction(spec, levels[1])
        d = dipole_matrix_element(psi0, psi1)
        return cls(levels[0].energy, levels[1].energy, d,
                   spec.constants.hbar, spec.barrier_bound)

    @classmethod
    def from_spectrum(cls, result: SpectrumResult, d: float) -> "TwoLevelSystem":
        levels = {lv.index: lv for lv in result.levels}
        return cls(levels[0].energy, levels[1].energy, d,
                   result.well.constants.hbar, result.well.b_scale)


@dataclass(frozen=True)
class HarmonicDrive:
    """Harmonic perturbation amplitude A (J) and drive frequency (rad/s)."""

    amplitude: float
    omega_prime: float

    def __post_init__(self) -> None:
        if self.amplitude < 0 or self.omega_prime < 0:
            raise ValueError("drive amplitude and frequency must be >= 0")


def x_expectation(sys: TwoLevelSystem, side: str, t) -> np.ndarray:
    """<x>(t) = +-d cos(omega t); + for the L-labeled state."""
    if side not in ("L", "R"):
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    sign = 1.0 if side == "L" else -1.0
    return sign * sys.d * np.cos(sys.omega * np.asarray(t, dtype=float))


def perturbation_matrices(
    sys: TwoLevelSystem,
) -> tuple[TwoByTwoOperator, TwoByTwoOperator, TwoByTwoOperator,
           TwoByTwoOperator, TwoByTwoOperator]:
    """(H, H', W, H~, W~): the well Hamiltonian, its degenerate counterpart
    E' I, the perturbation W = H' - H, and the two rotated into the
    localized basis, where W~ is purely off-diagonal with entries
    hbar omega / 2."""
    e_mean = 0.5 * (sys.e0 + sys.e1)
    h = TwoByTwoOperator(np.diag([sys.e0, sys.e1]), Basis.ENERGY)
    h_prime = TwoByTwoOperator(e_mean * np.eye(2), Basis.ENERGY)
    w = TwoByTwoOperator(h_prime.matrix - h.matrix, Basis.ENERGY)
    return h, h_prime, w, h.rotated(), w.rotated()


def flip_flop(sys: TwoLevelSystem, phi: float, t) -> tuple[np.ndarray, np.ndarray]:
    """Degenerate-picture occupation of the localized states,
    P_L = sin^2(omega t / 2 + phi), P_R = 1 - P_L."""
    p_l = np.sin(sys.omega * np.asarray(t, dtype=float) / 2.0 + phi) ** 2
    return p_l, 1.0 - p_l


def rabi_off_resonance(sys: TwoLevelSystem, drive: HarmonicDrive, t
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Driven populations of the energy eigenstates for c0(0) = 1:
    P1 = (R1/R0)^2 sin^2(R0 t) with R0 = sqrt((A/hbar)^2 + (detuning/2)^2)."""
    r1 = drive.amplitude / sys.hbar
    detuning = drive.omega_prime - sys.omega
    r0 = math.hypot(r1, detuning / 2.0)
    t = np.asarray(t, dtype=float)
    if r0 == 0.0:
        p1 = np.zeros_like(t)
    else:
        p1 = (r1 / r0) ** 2 * np.sin(r0 * t) ** 2
    return 1.0 - p1, p1


def rabi_localized(sys: TwoLevelSystem, drive: HarmonicDrive, t
                   ) -> tuple[np.ndarray, np.ndarray]:
    """Driven populations of the localized states (degenerate core,
    starting in R): P_L = (R1/R0')^2 sin^2(R0' t) with
    R0' = sqrt((A/hbar)^2 + (omega'/2)^2)."""
    r1 = drive.amplitude / sys.hbar
    r0p = math.hypot(r1, drive.omega_prime / 2.0)
    t = np.asarray(t, dtype=float)
    if r0p == 0.0:
        p_l = np.zeros_like(t)
    else:
        p_l = (r1 / r0p) ** 2 * np.sin(r0p * t) ** 2
    return p_l, 1.0 - p_l


def transition_amplitude(e_n: float, e_m: float, matrix_elems: tuple[complex, complex],
                         omega_prime: float, t: float, hbar: float) -> complex:
    """First-order amplitude n -> m under A e^{i w' t} + A^dagger e^{-i w' t}:

        <m|A|n>   (1 - e^{i((E_m-E_n)/hbar - w') t}) / (E_m - E_n - hbar w')
      + <m|A*|n>  (1 - e^{i((E_m-E_n)/hbar + w') t}) / (E_m - E_n + hbar w')

    Raises ResonantDenominator near either resonance, where this expression
    turns secular and stops being meaningful."""
    elem_a, elem_a_conj = matrix_elems
    gap = e_m - e_n
    tol = 1e-12 * (abs(e_m) + abs(e_n))
    for denom in (gap - hbar * omega_prime, gap + hbar * omega_prime):
        if abs(denom) < tol:
            raise ResonantDenominator(
                f"|E_m - E_n -+ hbar omega'| = {abs(denom):.3e} J is resonant")
    term1 = elem_a * (1.0 - cmath.exp(1j * (gap / hbar - omega_prime) * t)) / (gap - hbar * omega_prime)
    term2 = elem_a_conj * (1.0 - cmath.exp(1j * (gap / hbar + omega_prime) * t)) / (gap + hbar * omega_prime)
    return term1 + term2


# ---------------------------------------------------------------------------
# RK4 oracle for the driven two-level ODEs i hbar dc/dt = M(t) c

MatrixFn = Callable[[float], np.ndarray]


def rk4_step_for(sys: TwoLevelSystem, drive: HarmonicDrive) -> float:
    """Fixed RK4 step resolving the fastest of omega, omega', R0 with a
    factor-200 margin."""
    r1 = drive.amplitude / sys.hbar
    r0 = math.hypot(r1, (drive.omega_prime - sys.omega) / 2.0)
    r0p = math.hypot(r1, drive.omega_prime / 2.0)
    rates = [sys.omega, drive.omega_prime, r0, r0p]
    fastest = max(r for r in rates if r > 0)
    return 2.0 * math.pi / fastest / 200.0


def rk4_two_level(matrix_fn: MatrixFn, c0: np.ndarray, times: np.ndarray,
                  hbar: float, max_step: float) -> np.ndarray:
    """Integrate i hbar dc/dt = M(t) c through the sample times; returns an
    array of shape (len(times), 2)."""
    times = np.asarray(times, dtype=float)
    c = np.asarray(c0, dtype=complex).copy()
    out = np.empty((len(times), 2), dtype=complex)
    prefactor = -1j / hbar

    def rhs(ti: float, ci: np.ndarray) -> np.ndarray:
        return prefactor * (matrix_fn(ti) @ ci)

    t_now = times[0]
    out[0] = c
    for idx in range(1, len(times)):
        t_next = times[idx]
        span = t_next - t_now
        n_sub = max(1, math.ceil(abs(span) / max_step))
        h = span / n_sub
        for s in range(n_sub):
            ts = t_now + s * h
            k1 = rhs(ts, c)
            k2 = rhs(ts + h / 2.0, c + h / 2.0 * k1)
            k3 = rhs(ts + h / 2.0, c + h / 2.0 * k2)
            k4 = rhs(ts + h, c + h * k3)
            c = c + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t_now = t_next
        out[idx] = c
    return out


def simple_drive_interaction(sys: TwoLevelSystem, drive: HarmonicDrive) -> MatrixFn:
    """Interaction-picture matrix of the upper-triangular drive choice
    A [[0,1],[0,0]] in the energy basis: A [[0, e^{i(w'-w)t}], [cc, 0]]."""
    a = drive.amplitude
    det = drive.omega_prime - sys.omega

    def matrix(t: float) -> np.ndarray:
        phase = cmath.exp(1j * det * t)
        return np.array([[0.0, a * phase], [a * phase.conjugate(), 0.0]])

    return matrix


def localized_drive_interaction(drive: HarmonicDrive) -> MatrixFn:
    """Drive coupling the degenerate localized pair:
    A [[0, e^{i w' t}], [cc, 0]] acting on (c_L, c_R)."""
    a = drive.amplitude

    def matrix(t: float) -> np.ndarray:
        phase = cmath.exp(1j * drive.omega_prime * t)
        return np.array([[0.0, a * phase], [a * phase.conjugate(), 0.0]])

    return matrix


def flip_flop_generator(sys: TwoLevelSystem) -> MatrixFn:
    """Static coupling -(hbar omega/2) sigma_x that drives the flip-flop."""
    m = -(sys.hbar * sys.omega / 2.0) * np.array([[0.0, 1.0], [1.0, 0.0]])

    def matrix(_: float) -> np.ndarray:
        return m

    return matrix
