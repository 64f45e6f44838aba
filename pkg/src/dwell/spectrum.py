"""Below-barrier spectrum of the double square well.

Even and odd levels solve the transcendental matching conditions

    even:  g(eps) = h(eps),    odd:  g(eps) = j(eps),

with, in dimensionless form (eps = E/B, kappa = k/B, lambda = b/a),

    g(eps) = -sqrt(eps) * cot(pi sqrt(eps))
    h(eps) = sqrt(kappa - eps) * tanh(pi lambda sqrt(kappa - eps))
    j(eps) = sqrt(kappa - eps) * coth(pi lambda sqrt(kappa - eps))

Pair n is bracketed inside ((n + 1/2)^2, min((n + 1)^2, kappa)); the even
member always exists there, the odd member can be pushed above the barrier.
Roots are located by bisection (which respects the bracket) and polished
with Newton steps using analytic derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .errors import (
    BracketFailure,
    ConvergenceFailure,
    DegenerateGap,
    DwellError,
    NotReached,
    PoleCollision,
)
from .units import ScaledWell, WellSpec, to_dimensionless

__all__ = [
    "EnergyLevel",
    "LevelDiagnostics",
    "SpectrumResult",
    "BoundCheck",
    "BoundReport",
    "Gap01",
    "SweepRow",
    "GapSearchResult",
    "condition_functions",
    "cot_squared",
    "solve_pair",
    "solve_below_barrier",
    "verify_bounds",
    "gap01",
    "gap_sweep",
    "find_b_for_gap",
]

# refinement targets (dimensionless eps units)
_STEP_TOL = 1e-13
_RESIDUAL_TOL = 1e-13
_BISECT_WIDTH = 1e-6
_MAX_ITER = 300

Parity = Literal["even", "odd"]


@dataclass(frozen=True)
class EnergyLevel:
    """One below-barrier level: global index (even levels carry even
    indices), parity, dimensionless eps = E/B, and E in J (NaN when the
    well carries no SI context)."""

    index: int
    parity: Parity
    eps: float
    energy: float


@dataclass(frozen=True)
class LevelDiagnostics:
    index: int
    iterations: int
    residual: float
    degenerate_pair: bool


@dataclass(frozen=True)
class SpectrumResult:
    """All solved below-barrier levels of one well, ordered by energy."""

    levels: tuple[EnergyLevel, ...]
    well: ScaledWell
    solver_report: tuple[LevelDiagnostics, ...]

    def __post_init__(self) -> None:
        degenerate = {d.index for d in self.solver_report if d.degenerate_pair}
        for lo, hi in zip(self.levels, self.levels[1:]):
            if hi.eps > lo.eps:
                continue
            tied_pair = hi.index in degenerate and hi.index == lo.index + 1
            if not (tied_pair and hi.eps >= lo.eps):
                raise ValueError(f"levels {lo.index},{hi.index} are not increasing")

    @property
    def kappa(self) -> float:
        return self.well.kappa

    @property
    def lam(self) -> float:
        return self.well.lam

    @property
    def eps_values(self) -> tuple[float, ...]:
        return tuple(level.eps for level in self.levels)

    def is_degenerate_pair(self, n: int) -> bool:
        return any(d.degenerate_pair and d.index // 2 == n for d in self.solver_report)


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def _sech2(x: float) -> float:
    # 1/cosh^2 without overflowing cosh
    e = math.exp(-abs(x))
    s = 2.0 * e / (1.0 + e * e)
    return s * s


def _csch2(x: float) -> float:
    # 1/sinh^2 for x > 0 without overflowing sinh
    e = math.exp(-x)
    denom = 1.0 - e * e
    if denom == 0.0:
        raise ZeroDivisionError("csch2 at 0")
    s = 2.0 * e / denom
    return s * s


def condition_functions(eps: float, kappa: float, lam: float) -> tuple[float, float, float]:
    """Evaluate (g, h, j) at eps; raises PoleCollision on a cot pole."""
    if not 0.0 < eps < kappa:
        raise ValueError(f"eps must lie in (0, kappa), got eps={eps}, kappa={kappa}")
    s = math.sqrt(eps)
    sin_pis = math.sin(math.pi * s)
    if abs(sin_pis) < 1e-14:
        raise PoleCollision(f"cot pole at sqrt(eps) = {s!r} (integer)")
    g = -s * math.cos(math.pi * s) / sin_pis
    u = math.sqrt(kappa - eps)
    x = math.pi * lam * u
    t = math.tanh(x)
    return g, u * t, u / t


def _g_only(eps: float) -> float:
    s = math.sqrt(eps)
    sin_pis = math.sin(math.pi * s)
    if abs(sin_pis) < 1e-14:
        raise PoleCollision(f"cot pole at sqrt(eps) = {s!r}")
    return -s * math.cos(math.pi * s) / sin_pis


def cot_squared(eps: float) -> float:
    """cot^2(pi sqrt(eps)); monotonically increasing on (1/4, 1)."""
    s = math.sqrt(eps)
    sin_pis = math.sin(math.pi * s)
    if abs(sin_pis) < 1e-14:
        raise PoleCollision(f"cot pole at sqrt(eps) = {s!r}")
    c = math.cos(math.pi * s) / sin_pis
    return c * c


def _f_and_deriv(eps: float, kappa: float, lam: float, parity: Parity) -> tuple[float, float]:
    """F = g - h (even) or g - j (odd), with dF/deps."""
    s = math.sqrt(eps)
    sin_pis = math.sin(math.pi * s)
    if abs(sin_pis) < 1e-14:
        raise PoleCollision(f"cot pole at sqrt(eps) = {s!r}")
    cot = math.cos(math.pi * s) / sin_pis
    csc2 = 1.0 / (sin_pis * sin_pis)
    g = -s * cot
    dg = (-cot + math.pi * s * csc2) / (2.0 * s)

    u = math.sqrt(kappa - eps)
    x = math.pi * lam * u
    if parity == "even":
        t = math.tanh(x)
        rhs = u * t
        drhs_du = t + x * _sech2(x)
    else:
        t = _coth(x)
        rhs = u * t
        drhs_du = t - x * _csch2(x)
    drhs = -drhs_du / (2.0 * u)
    return g - rhs, dg - drhs


def _refine_root(lo: float, hi: float, kappa: float, lam: float,
                 parity: Parity) -> tuple[float, float, int]:
    """Safeguarded bisection+Newton inside a sign-changing bracket.

    Returns (root, residual, iterations)."""
    f_lo, _ = _f_and_deriv(lo, kappa, lam, parity)
    f_hi, _ = _f_and_deriv(hi, kappa, lam, parity)
    if f_lo == 0.0:
        return lo, 0.0, 0
    if f_hi == 0.0:
        return hi, 0.0, 0
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise BracketFailure(f"no sign change for the {parity} condition", (lo, hi))

    iters = 0
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        f_mid, _ = _f_and_deriv(mid, kappa, lam, parity)
        iters += 1
        if f_mid == 0.0:
            return mid, 0.0, iters
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    x = 0.5 * (lo + hi)
    f, df = _f_and_deriv(x, kappa, lam, parity)
    x_best, f_best = x, abs(f)
    while iters < _MAX_ITER:
        iters += 1
        step = f / df if df != 0.0 else math.inf
        x_new = x - step
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)  # bisection fallback keeps the bracket
            step = x_new - x
        f_new, df_new = _f_and_deriv(x_new, kappa, lam, parity)
        if math.copysign(1.0, f_new) == math.copysign(1.0, f_lo):
            lo = x_new
        else:
            hi = x_new
        x, f, df = x_new, f_new, df_new
        if abs(f) < f_best:
            x_best, f_best = x, abs(f)
        if f_best <= _RESIDUAL_TOL and abs(step) <= _STEP_TOL:
            return x_best, f_best, iters
        if abs(step) <= 4.0 * math.ulp(x):
            return x_best, f_best, iters
    raise ConvergenceFailure(
        f"{parity} root did not converge in {_MAX_ITER} iterations (bracket [{lo}, {hi}])")


def _pair_bracket(n: int, kappa: float) -> tuple[float, float, bool]:
    """Bracket ((n+1/2)^2, min((n+1)^2, kappa)); flag whether the upper end
    is the barrier (True) or the cot pole (False)."""
    lo = (n + 0.5) ** 2
    hi_pole = float((n + 1) ** 2)
    if kappa <= hi_pole:
        return lo, kappa, True
    return lo, hi_pole, False


def _upper_eval_point(lo: float, hi: float, capped_by_barrier: bool,
                      kappa: float, lam: float, parity: Parity) -> float | None:
    """Find an evaluation point below the upper bracket end with F > 0.

    Near a cot pole g -> +inf, so we only need to creep toward the pole
    until the sign flips.  When the barrier caps the bracket, the limit of
    the right-hand side at kappa^- (0 for tanh, 1/(pi lambda) for coth)
    decides whether the root exists at all; None means the (odd) level was
    pushed above the barrier."""
    if capped_by_barrier:
        try:
            g_cap = _g_only(kappa)
        except PoleCollision:
            g_cap = math.inf  # the cap sits exactly on a pole: g diverges
        limit = 0.0 if parity == "even" else 1.0 / (math.pi * lam)
        if not g_cap > limit:
            return None
    width = hi - lo
    shrink = 1e-9
    for _ in range(12):
        point = hi - shrink * width
        if point <= lo:
            break
        try:
            f, _ = _f_and_deriv(point, kappa, lam, parity)
        except PoleCollision:
            shrink *= 1e-3
            continue
        if f > 0.0:
            return point
        shrink *= 1e-3
        if shrink * width < 2.0 * math.ulp(hi):
            break
    if capped_by_barrier:
        return None  # root indistinguishable from the barrier top
    raise PoleCollision(
        f"could not find a positive {parity} condition value below the pole at {hi}")


def _pair_unresolvable(eps: float, kappa: float, lam: float) -> bool:
    """True when the even/odd pair at eps cannot be separated in float64.

    Two criteria: tanh and coth of the barrier argument agree to < 1e-15,
    or the first-order estimate of the root separation,
    (j - h) / |d(g - h)/deps|, falls below the solver resolution.  The
    second catches large-eps pairs whose splitting is a few ulps even
    though tanh and coth still differ representably."""
    u = math.sqrt(max(kappa - eps, 0.0))
    x = math.pi * lam * u
    if x == 0.0:
        return False
    t = math.tanh(x)
    rhs_diff = u * (1.0 / t - t)  # = 2u / sinh(2x), positive
    if rhs_diff / u < 1e-15:
        return True
    try:
        _, df = _f_and_deriv(eps, kappa, lam, "even")
    except PoleCollision:
        return False
    separation = rhs_diff / abs(df) if df != 0.0 else math.inf
    return separation < max(2.0 * _STEP_TOL, 64.0 * math.ulp(eps))


def _solve_pair_diagnosed(
    n: int, well: ScaledWell
) -> tuple[EnergyLevel, LevelDiagnostics, EnergyLevel | None, LevelDiagnostics | None]:
    kappa, lam = well.kappa, well.lam
    lo, hi, capped = _pair_bracket(n, kappa)
    if lo >= hi:
        raise ValueError(f"pair {n} requires (n+1/2)^2 < kappa, got kappa={kappa}")
    scale = well.b_scale

    even_hi = _upper_eval_point(lo, hi, capped, kappa, lam, "even")
    if even_hi is None:
        raise BracketFailure(f"even condition has no sign change for pair {n}", (lo, hi))
    eps_even, res_even, it_even = _refine_root(lo, even_hi, kappa, lam, "even")
    even = EnergyLevel(2 * n, "even", eps_even, eps_even * scale)
    degenerate = _pair_unresolvable(eps_even, kappa, lam)
    even_diag = LevelDiagnostics(2 * n, it_even, res_even, degenerate)

    odd_hi = _upper_eval_point(lo, hi, capped, kappa, lam, "odd")
    if odd_hi is None:
        return even, even_diag, None, None
    eps_odd, res_odd, it_odd = _refine_root(lo, odd_hi, kappa, lam, "odd")
    if degenerate and eps_odd < eps_even:
        eps_odd = eps_even  # tie, not a fabricated (negative) splitting
    odd = EnergyLevel(2 * n + 1, "odd", eps_odd, eps_odd * scale)
    odd_diag = LevelDiagnostics(2 * n + 1, it_odd, res_odd, degenerate)
    return even, even_diag, odd, odd_diag


def solve_pair(n: int, well: ScaledWell) -> tuple[EnergyLevel, EnergyLevel | None]:
    """Solve pair n: the even level (always present when (n+1/2)^2 < kappa)
    and the odd level, or None when it lies above the barrier."""
    even, _, odd, _ = _solve_pair_diagnosed(n, well)
    return even, odd


def solve_below_barrier(well: ScaledWell) -> SpectrumResult:
    """Solve every pair n with (n+1/2)^2 < kappa; empty result when
    kappa <= 1/4 (no level fits below the barrier)."""
    levels: list[EnergyLevel] = []
    report: list[LevelDiagnostics] = []
    n = 0
    while (n + 0.5) ** 2 < well.kappa:
        try:
            even, even_diag, odd, odd_diag = _solve_pair_diagnosed(n, well)
        except (BracketFailure, PoleCollision, ConvergenceFailure) as exc:
            exc.pair_index = n  # type: ignore[attr-defined]
            raise
        levels.append(even)
        report.append(even_diag)
        if odd is not None and odd_diag is not None:
            levels.append(odd)
            report.append(odd_diag)
        n += 1
    return SpectrumResult(tuple(levels), well, tuple(report))


@dataclass(frozen=True)
class BoundCheck:
    name: str
    holds: bool
    margin: float
    applicable: bool = True


@dataclass(frozen=True)
class BoundReport:
    checks: tuple[BoundCheck, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.checks if c.applicable)

    def failures(self) -> tuple[BoundCheck, ...]:
        return tuple(c for c in self.checks if c.applicable and not c.holds)


# ties from a coalesced pair are satisfied-at-precision, not violations
_TIE_TOL = 1e-12


def verify_bounds(result: SpectrumResult) -> BoundReport:
    """Check every spectral inequality the well family guarantees:
    B/4 < E0 < E1 < B; the per-pair brackets; E_{2n+2}-E_{2n+1} > (n+5/4)B;
    (5/4)B < E2-E1 < (15/4)B; E1-E0 < (3/4)B.  Margins are dimensionless."""
    if not result.levels:
        raise ValueError("spectrum is empty")
    eps = {level.index: level.eps for level in result.levels}
    checks: list[BoundCheck] = []

    def strict(name: str, margin: float, degenerate: bool = False) -> None:
        holds = margin > 0 or (degenerate and margin >= -_TIE_TOL)
        checks.append(BoundCheck(name, holds, margin))

    def vacuous(name: str) -> None:
        checks.append(BoundCheck(name, True, math.nan, applicable=False))

    strict("window: eps0 > 1/4", eps[0] - 0.25)
    if 1 in eps:
        deg0 = result.is_degenerate_pair(0)
        strict("window: eps1 > eps0", eps[1] - eps[0], deg0)
        strict("window: eps1 < 1", 1.0 - eps[1])
        strict("splitting ceiling: eps1 - eps0 < 3/4", 0.75 - (eps[1] - eps[0]))
    else:
        strict("window: eps0 < 1", 1.0 - eps[0])
        vacuous("window: eps1 > eps0")
        vacuous("splitting ceiling: eps1 - eps0 < 3/4")

    if 1 in eps and 2 in eps:
        strict("next-gap floor: eps2 - eps1 > 5/4", (eps[2] - eps[1]) - 1.25)
        strict("next-gap ceiling: eps2 - eps1 < 15/4", 3.75 - (eps[2] - eps[1]))
    else:
        vacuous("next-gap floor: eps2 - eps1 > 5/4")
        vacuous("next-gap ceiling: eps2 - eps1 < 15/4")

    pairs = 1 + max(level.index for level in result.levels) // 2
    for n in range(pairs):
        lo = (n + 0.5) ** 2
        hi = (n + 1.0) ** 2
        if 2 * n not in eps:
            continue
        deg = result.is_degenerate_pair(n)
        strict(f"bracket pair {n}: eps_{2*n} > (n+1/2)^2", eps[2 * n] - lo)
        if 2 * n + 1 in eps:
            strict(f"bracket pair {n}: eps_{2*n} < eps_{2*n+1}",
                   eps[2 * n + 1] - eps[2 * n], deg)
            strict(f"bracket pair {n}: eps_{2*n+1} < (n+1)^2", hi - eps[2 * n + 1])
        else:
            strict(f"bracket pair {n}: eps_{2*n} < (n+1)^2", hi - eps[2 * n])
        if 2 * n + 2 in eps and 2 * n + 1 in eps:
            strict(f"inter-pair gap {n}: eps_{2*n+2} - eps_{2*n+1} > n + 5/4",
                   (eps[2 * n + 2] - eps[2 * n + 1]) - (n + 1.25))

    return BoundReport(tuple(checks))


@dataclass(frozen=True)
class Gap01:
    """Tunneling splitting E1 - E0 and the oscillation period 2 pi hbar / dE."""

    delta_e: float
    tau: float


def gap01(result: SpectrumResult) -> Gap01:
    """Splitting of the lowest pair; DegenerateGap when f64 cannot resolve it."""
    eps = {level.index: level for level in result.levels}
    if 0 not in eps or 1 not in eps:
        raise ValueError("gap01 needs both levels of the lowest pair")
    e0, e1 = eps[0].energy, eps[1].energy
    if not math.isfinite(e0):
        raise ValueError("well carries no SI scale; solve from a WellSpec")
    delta = e1 - e0
    if delta < 1e-15 * e1:
        raise DegenerateGap(
            f"E1 - E0 = {delta:.3e} J is below f64 resolution of E1 = {e1:.3e} J")
    hbar = result.well.constants.hbar
    tau = 2.0 * math.pi * hbar / delta
    floor = 4.0 * result.well.m * result.well.a**2 / (math.pi * hbar)
    if not tau > floor:  # tau > 2 pi hbar / B always; a breach means a solver bug
        raise DwellError(f"period {tau:.3e} s violates the global floor {floor:.3e} s")
    return Gap01(delta, tau)


@dataclass(frozen=True)
class SweepRow:
    b: float
    e0: float
    e1: float
    delta_e: float
    tau: float
    error: str | None = None


def gap_sweep(template: WellSpec, b_values: list[float]) -> tuple[SweepRow, ...]:
    """Solve the lowest pair for each barrier half-width; failures are
    recorded per row and the sweep continues."""
    rows: list[SweepRow] = []
    for b in b_values:
        try:
            spec = template.with_b(b)
            result = solve_below_barrier(to_dimensionless(spec))
            gap = gap01(result)
            levels = {lv.index: lv for lv in result.levels}
            rows.append(SweepRow(b, levels[0].energy, levels[1].energy,
                                 gap.delta_e, gap.tau))
        except Exception as exc:  # row-local: sweep must continue
            rows.append(SweepRow(b, math.nan, math.nan, math.nan, math.nan,
                                 error=f"{type(exc).__name__}: {exc}"))
    return tuple(rows)


@dataclass(frozen=True)
class GapSearchResult:
    """Smallest grid b with E1 - E0 < delta, plus the ground-level
    cotangent certificate cot^2(pi sqrt(eps0)) < 4 kappa - 1."""

    b: float
    gap: float
    eps0: float
    eps1: float
    cot2: float
    cot2_bound: float
    certified: bool
    steps: int


def find_b_for_gap(delta: float, template: WellSpec, *,
                   ratio: float = 2.0 ** 0.125, cap_factor: float = 100.0) -> GapSearchResult:
    """Walk a geometric grid b_i = b0 * ratio^i until the splitting drops
    below delta; NotReached once b exceeds cap_factor * a."""
    if delta <= 0:
        raise ValueError("delta must be > 0")
    if not template.big_enough:
        raise ValueError("template must be in the deep-barrier regime k >= 10 B")
    cap = cap_factor * template.a
    b = template.b
    steps = 0
    while b <= cap:
        well = to_dimensionless(template.with_b(b))
        even, odd = solve_pair(0, well)
        if odd is None:
            raise BracketFailure("lowest odd level missing during gap search",
                                 (0.25, well.kappa))
        gap = odd.energy - even.energy
        if _pair_unresolvable(even.eps, well.kappa, well.lam):
            if delta < 1e-15 * odd.energy:
                raise DegenerateGap(
                    f"target {delta:.3e} J is below f64 resolution at b = {b:.6g} m")
            # coalesced at f64: true gap is far below any resolvable delta
            gap = 0.0
        if gap < delta:
            cot2 = cot_squared(even.eps)
            bound = 4.0 * well.kappa - 1.0
            return GapSearchResult(b, gap, even.eps, odd.eps, cot2, bound,
                                   cot2 < bound, steps)
        b *= ratio
        steps += 1
    raise NotReached(f"gap {delta:.3e} J not reached before b = {cap:.3e} m")
