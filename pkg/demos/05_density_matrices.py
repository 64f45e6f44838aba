"""Pure vs mixed composite states and the reduced density matrix.

A system qubit entangled with a two-level environment is described by a
2x2 coefficient matrix; it factorizes exactly when det c = 0.  Tracing out
the environment leaves the system's density matrix, whose diagonal holds
populations and off-diagonal the coherences that decoherence would kill.
"""

import math

import numpy as np

from dwell import (
    Basis,
    CompositeState,
    TwoByTwoOperator,
    change_basis,
    coherence_magnitude,
    expectation,
    is_pure,
    reduce_state,
    reference_states,
)

print("six reference composite states:")
print(f"{'|det c|':>10} {'class':>7} {'purity':>8}   state")
for label, state in reference_states():
    det = abs(np.linalg.det(state.coeffs))
    kind = "pure" if is_pure(state) else "mixed"
    purity = reduce_state(state).purity
    print(f"{det:>10.3e} {kind:>7} {purity:>8.4f}   {label}")

# a localized mixture c_L psi_L phi_a + c_R psi_R phi_b is diagonal in the
# localized basis: measurements cannot tell it from a classical coin flip
s2 = 1.0 / math.sqrt(2.0)
c_l, c_r = 0.8, 0.6
mixture = CompositeState(np.array([[c_l * s2, c_r * s2], [c_l * s2, -c_r * s2]]))
rho = change_basis(reduce_state(mixture), Basis.LOCALIZED)
print(f"\nlocalized mixture with |c_L|^2 = {c_l**2:.2f}, |c_R|^2 = {c_r**2:.2f}:")
print(np.real_if_close(rho.matrix))
print(f"coherence |rho_LR| = {coherence_magnitude(rho):.2e}")

meter = TwoByTwoOperator(np.diag([+1.0, -1.0]), Basis.LOCALIZED)  # which-side meter
print(f"<side> = {expectation(rho, meter):+.4f}  "
      f"(classical average {c_l**2 - c_r**2:+.4f})")

# a pure energy eigenstate refuses to look classical in the localized basis
projector = CompositeState(np.array([[1.0, 0.0], [0.0, 0.0]]))
rho_pure = change_basis(reduce_state(projector), Basis.LOCALIZED)
print("\nground-state projector in the localized basis (maximal coherences):")
print(np.real_if_close(rho_pure.matrix))
print(f"coherence |rho_LR| = {coherence_magnitude(rho_pure):.2f}, "
      f"purity = {rho_pure.purity:.2f}")
