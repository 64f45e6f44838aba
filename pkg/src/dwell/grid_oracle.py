"""Independent finite-difference cross-check for spectra and eigenfunctions.

Second-order scheme on a cell-centered uniform grid: nodes sit at cell
midpoints, the infinite walls coincide with the outer cell edges (Dirichlet
imposed through an antisymmetric ghost cell), and the potential is sampled
at the cell midpoints.  The two cells straddling the barrier edges x = +-b
get the exact cell average of the step instead of the midpoint sample:
midpoint sampling there leaves an O(dx) eigenvalue error that wanders with
the grid alignment, while cell averaging keeps the scheme second order for
any geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_banded

from .errors import ConvergenceFailure, SingularShift
from .units import WellSpec

__all__ = [
    "GridHamiltonian",
    "build_grid_hamiltonian",
    "aligned_size",
    "lowest_eigenvalues",
    "eigenvector",
]


@dataclass(frozen=True)
class GridHamiltonian:
    """Symmetric tridiagonal discretization of one well.

    diagonal holds kinetic + potential samples (J); off_diagonal is the
    constant coupling -hbar^2/(2 m dx^2) (J).  The potential samples are
    kept separately so H can be applied in second-difference form, which
    avoids the kinetic-diagonal cancellation that would otherwise drown
    residuals in roundoff.
    """

    n: int
    dx: float
    diagonal: np.ndarray
    off_diagonal: float
    potential: np.ndarray
    half_width: float
    energy_scale: float  # conditioning scale (B) used for the eigensolves

    def __post_init__(self) -> None:
        self.diagonal.setflags(write=False)
        self.potential.setflags(write=False)

    @property
    def positions(self) -> np.ndarray:
        """Cell-center coordinates, symmetric about x = 0."""
        return -self.half_width + (np.arange(self.n) + 0.5) * self.dx

    def apply(self, v: np.ndarray) -> np.ndarray:
        """H @ v evaluated as -t (second difference) + V v (cancellation-safe)."""
        t = -self.off_diagonal
        d2 = np.empty_like(v)
        d2[1:-1] = (v[2:] - v[1:-1]) + (v[:-2] - v[1:-1])
        # walls half a cell outside the end nodes: ghost = -v
        d2[0] = (v[1] - v[0]) - 2.0 * v[0]
        d2[-1] = (v[-2] - v[-1]) - 2.0 * v[-1]
        return -t * d2 + self.potential * v


def build_grid_hamiltonian(spec: WellSpec, n: int = 20_000) -> GridHamiltonian:
    """Discretize the well on n cells over [-(a+b), a+b]."""
    if n < 100:
        raise ValueError(f"grid needs at least 100 cells, got {n}")
    half = spec.half_width
    dx = 2.0 * half / n
    if 2.0 * spec.b < 4.0 * dx:
        raise ValueError("barrier narrower than 4 cells; raise n")
    hbar = spec.constants.hbar
    t = hbar**2 / (2.0 * spec.m * dx * dx)

    centers = -half + (np.arange(n) + 0.5) * dx
    v = np.where(np.abs(centers) <= spec.b, spec.k, 0.0)

    # exact cell averages where a potential step crosses a cell
    edges = -half + np.arange(n + 1) * dx
    for s, u_left in ((-spec.b, 0.0), (spec.b, spec.k)):
        i = int(np.searchsorted(edges, s)) - 1
        if 0 <= i < n and edges[i] < s < edges[i + 1]:
            phi = (s - edges[i]) / dx
            u_right = spec.k - u_left
            v[i] = u_left * phi + u_right * (1.0 - phi)

    diag = np.full(n, 2.0 * t) + v
    diag[0] += t  # antisymmetric ghost: psi = 0 at the wall cell edge
    diag[-1] += t
    return GridHamiltonian(n, dx, diag, -t, v, half, spec.barrier_bound)


def aligned_size(spec: WellSpec, target: int, max_denominator: int = 200) -> int:
    """Largest grid size <= target for which both potential steps fall on
    cell edges (needs b/a close to a small rational); used by convergence
    studies so the interface error constant is reproducible across sizes."""
    frac = Fraction(2.0 * spec.b / spec.a).limit_denominator(max_denominator)
    if abs(float(frac) - 2.0 * spec.b / spec.a) > 1e-12:
        raise ValueError("b/a is not close to a small rational; no aligned size")
    period = 2 * frac.denominator + frac.numerator
    m = max(target // period, 1)
    return period * m


def lowest_eigenvalues(h: GridHamiltonian, count: int) -> np.ndarray:
    """The count smallest eigenvalues (J) by Sturm-sequence bisection."""
    if count < 1 or count > h.n // 10:
        raise ValueError(f"count must be in [1, n/10], got {count}")
    scale = h.energy_scale
    w = eigh_tridiagonal(
        h.diagonal / scale,
        np.full(h.n - 1, h.off_diagonal / scale),
        select="i",
        select_range=(0, count - 1),
        eigvals_only=True,
        tol=1e-13,
        lapack_driver="stebz",
    )
    if np.any(np.diff(w) < 0):
        raise ConvergenceFailure("grid eigenvalues are out of order")
    return w * scale


def _apply_longdouble(h: GridHamiltonian, v: np.ndarray) -> np.ndarray:
    t = np.longdouble(-h.off_diagonal)
    d2 = np.empty_like(v)
    d2[1:-1] = (v[2:] - v[1:-1]) + (v[:-2] - v[1:-1])
    d2[0] = (v[1] - v[0]) - 2.0 * v[0]
    d2[-1] = (v[-2] - v[-1]) - 2.0 * v[-1]
    return -t * d2 + h.potential.astype(np.longdouble) * v


def eigenvector(h: GridHamiltonian, eigenvalue: float, *, max_iter: int = 30) -> np.ndarray:
    """Inverse-iteration eigenvector for a converged eigenvalue, normalized
    so that sum(v^2) dx = 1 and sign-aligned to v > 0 just right of x = 0.

    Plain float64 inverse iteration stalls at a residual ~ eps ||H|| from
    the solver's injected roundoff, which at n = 2e4 sits above 1e-8 |E|;
    a couple of extended-precision residual refinements push it well below."""
    scale = h.energy_scale
    diag = h.diagonal / scale
    off = h.off_diagonal / scale

    rng = np.random.default_rng(h.n)
    accept_tol = 1e-9 * abs(eigenvalue)

    last_exc: Exception | None = None
    for attempt in range(4):
        shift = (eigenvalue / scale) * (1.0 + attempt * 3e-13)
        ab = np.zeros((3, h.n))
        ab[0, 1:] = off
        ab[1] = diag - shift
        ab[2, :-1] = off
        v = rng.standard_normal(h.n)
        v /= np.linalg.norm(v)
        try:
            prev = math.inf
            for _ in range(max_iter):
                w = solve_banded((1, 1), ab, v)
                nw = np.linalg.norm(w)
                if not np.isfinite(nw) or nw == 0.0:
                    raise SingularShift(f"inverse iteration blew up at shift {shift}")
                v = w / nw
                residual = float(np.linalg.norm(h.apply(v) - float(v @ h.apply(v)) * v))
                if residual > 0.5 * prev:
                    break  # at the float64 floor
                prev = residual
            # mixed-precision polish: extended residual, float64 correction
            v_ld = v.astype(np.longdouble)
            best_v, best_residual = None, math.inf
            for _ in range(3):
                hv = _apply_longdouble(h, v_ld)
                rq = np.longdouble(v_ld @ hv) / np.longdouble(v_ld @ v_ld)
                r = hv - rq * v_ld
                residual = float(np.sqrt(np.longdouble(r @ r)))
                if residual < best_residual:
                    best_v, best_residual = v_ld, residual
                if residual <= 0.01 * accept_tol:
                    break
                c = solve_banded((1, 1), ab, (r / scale).astype(np.float64))
                v_new = v_ld - c.astype(np.longdouble)
                v_ld = v_new / np.sqrt(np.longdouble(v_new @ v_new))
            if best_v is None or best_residual > accept_tol:
                raise SingularShift(
                    f"residual {best_residual:.3e} J above {accept_tol:.3e} J at shift {shift}")
        except SingularShift as exc:
            last_exc = exc
            continue
        v = best_v.astype(np.float64)
        mid = h.n // 2
        pivot = v[mid] if v[mid] != 0.0 else v[mid + 1]
        if pivot < 0:
            v = -v
        return v / math.sqrt(float(v @ v) * h.dx)
    raise ConvergenceFailure(f"inverse iteration failed after retries: {last_exc}")
