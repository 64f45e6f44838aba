"""Solve the below-barrier spectrum of a double square well and verify the
universal inequalities that hold for every member of the family.

The well: two valleys of width a separated by a barrier of half-width b and
height k, with hard walls at +-(a+b).  Levels alternate even/odd, and each
pair n is trapped inside ((n+1/2)^2, (n+1)^2) in units of B = pi^2 hbar^2 /
(2 m a^2), no matter how wide the barrier is.
"""

import numpy as np

from dwell import WellSpec, solve_below_barrier, to_dimensionless, verify_bounds

well = WellSpec(a=1e-6, b=1e-7, k=2e-24, m=9.1e-31)
print(f"geometry: a = {well.a * 1e6:.1f} um, b = {well.b * 1e9:.0f} nm, "
      f"k = {well.k:.2e} J, m = {well.m:.2e} kg")
print(f"confinement scale B = {well.barrier_bound:.4e} J, "
      f"k/B = {well.k / well.barrier_bound:.2f}")

result = solve_below_barrier(to_dimensionless(well))
print(f"\n{len(result.levels)} levels below the barrier:")
print(f"{'index':>5} {'parity':>7} {'E/B':>12} {'E (J)':>14} {'residual':>10}")
for level, diag in zip(result.levels, result.solver_report):
    print(f"{level.index:>5} {level.parity:>7} {level.eps:>12.8f} "
          f"{level.energy:>14.6e} {diag.residual:>10.1e}")

# every guaranteed inequality, with its margin in units of B
report = verify_bounds(result)
print("\nspectral bounds:")
for check in report.checks:
    status = "ok" if check.holds else "VIOLATED"
    margin = "" if not check.applicable else f"  margin = {check.margin:+.3e}"
    note = "" if check.applicable else "  (not applicable here)"
    print(f"  [{status:>8}] {check.name}{margin}{note}")
print("\nall applicable bounds hold:", report.all_hold)

# the gap between the lowest pair shrinks as the barrier widens, while the
# distance to the next pair stays pinned above (5/4) B
eps = np.array(result.eps_values)
print(f"\npair splitting  eps1 - eps0 = {eps[1] - eps[0]:.3e}  (< 3/4)")
print(f"next-pair gap   eps2 - eps1 = {eps[2] - eps[1]:.3f}  (> 5/4)")
