import cmath
import math

import numpy as np
import pytest

from dwell import (
    BASIS_CHANGE,
    Basis,
    HarmonicDrive,
    TwoByTwoOperator,
    TwoLevelSystem,
    flip_flop,
    perturbation_matrices,
    rabi_localized,
    rabi_off_resonance,
    transition_amplitude,
    x_expectation,
)
from dwell.dynamics import (
    flip_flop_generator,
    localized_drive_interaction,
    rk4_step_for,
    rk4_two_level,
    simple_drive_interaction,
)
from dwell.errors import ResonantDenominator


def test_x_expectation_turning_points(two_level):
    assert x_expectation(two_level, "L", 0.0) == pytest.approx(two_level.d, rel=1e-15)
    t_half = math.pi / two_level.omega
    assert x_expectation(two_level, "L", t_half) == pytest.approx(-two_level.d, rel=1e-10)
    assert x_expectation(two_level, "R", 0.0) == pytest.approx(-two_level.d, rel=1e-15)
    period = 2.0 * math.pi / two_level.omega
    assert x_expectation(two_level, "L", period) == pytest.approx(two_level.d, rel=1e-10)


def test_x_expectation_period_matches_gap(two_level, table_spectrum):
    from dwell import gap01

    gap = gap01(table_spectrum)
    assert 2.0 * math.pi / two_level.omega == pytest.approx(gap.tau, rel=1e-12)


def test_basis_change_unitary():
    assert np.allclose(BASIS_CHANGE @ BASIS_CHANGE.conj().T, np.eye(2), atol=1e-15)
    assert np.allclose(BASIS_CHANGE @ BASIS_CHANGE, np.eye(2), atol=1e-15)
    assert np.allclose(BASIS_CHANGE @ np.array([1.0, 0.0]),
                       np.array([1.0, 1.0]) / math.sqrt(2.0), atol=1e-16)
    assert np.allclose(BASIS_CHANGE @ np.array([0.0, 1.0]),
                       np.array([1.0, -1.0]) / math.sqrt(2.0), atol=1e-16)


def test_perturbation_matrices(two_level):
    h, h_prime, w, h_rot, w_rot = perturbation_matrices(two_level)
    hbar_omega = two_level.hbar * two_level.omega
    e_mean = 0.5 * (two_level.e0 + two_level.e1)

    assert h.basis is Basis.ENERGY and h_rot.basis is Basis.LOCALIZED
    assert np.allclose(h.matrix, np.diag([two_level.e0, two_level.e1]))
    assert np.allclose(h_prime.matrix, e_mean * np.eye(2))
    assert np.allclose(w.matrix, np.diag([hbar_omega / 2.0, -hbar_omega / 2.0]))

    # trace is preserved by the similarity transform
    assert np.trace(h_rot.matrix) == pytest.approx(two_level.e0 + two_level.e1)
    assert np.allclose(h_rot.matrix,
                       [[e_mean, -hbar_omega / 2.0], [-hbar_omega / 2.0, e_mean]],
                       rtol=1e-14)
    # the rotated perturbation is purely off-diagonal with equal entries
    assert np.allclose(np.diag(w_rot.matrix), 0.0, atol=1e-30)
    assert w_rot.matrix[0, 1] == pytest.approx(hbar_omega / 2.0, rel=1e-14)
    assert w_rot.matrix[1, 0] == pytest.approx(hbar_omega / 2.0, rel=1e-14)


def test_rotation_involutive(two_level):
    h, *_ = perturbation_matrices(two_level)
    assert np.allclose(h.rotated().rotated().matrix, h.matrix, rtol=1e-14)


def test_flip_flop_certainties(two_level):
    omega = two_level.omega
    p_l, p_r = flip_flop(two_level, math.pi / 2.0, 0.0)
    assert p_l == 1.0 and p_r == 0.0
    p_l, p_r = flip_flop(two_level, math.pi / 2.0, math.pi / omega)
    assert p_l < 1e-30 and p_r >= 1.0 - 1e-30
    p_l, p_r = flip_flop(two_level, math.pi / 2.0, 2.0 * math.pi / omega)
    assert p_l >= 1.0 - 1e-30 and p_r < 1e-30


def test_flip_flop_quarter_period(two_level):
    # sin^2(pi/4 + pi/2) = 1/2 at t = pi/(2 omega)
    t = math.pi / (2.0 * two_level.omega)
    p_l, p_r = flip_flop(two_level, math.pi / 2.0, t)
    assert p_l == pytest.approx(0.5, abs=1e-12)
    assert p_r == pytest.approx(0.5, abs=1e-12)


def test_flip_flop_probability_conservation(two_level):
    t = np.linspace(0.0, 6.0 * math.pi / two_level.omega, 1000)
    p_l, p_r = flip_flop(two_level, 0.7, t)
    assert np.all(p_l >= 0.0) and np.all(p_l <= 1.0)
    assert np.max(np.abs(p_l + p_r - 1.0)) <= 1e-12


def test_flip_flop_matches_rk4(two_level):
    phi = 0.3
    omega = two_level.omega
    times = np.linspace(0.0, 4.0 * math.pi / omega, 80)
    c0 = np.array([math.sin(phi), -1j * math.cos(phi)])
    c = rk4_two_level(flip_flop_generator(two_level), c0, times,
                      two_level.hbar, (2.0 * math.pi / omega) / 200.0)
    p_l_exact, _ = flip_flop(two_level, phi, times)
    assert np.max(np.abs(np.abs(c[:, 0]) ** 2 - p_l_exact)) <= 1e-6
    # unitarity of the integrator itself
    assert np.max(np.abs(np.sum(np.abs(c) ** 2, axis=1) - 1.0)) <= 1e-10


def test_rabi_resonant_full_transfer(two_level):
    drive = HarmonicDrive(0.05 * two_level.hbar * two_level.omega, two_level.omega)
    r0 = drive.amplitude / two_level.hbar
    t_flip = math.pi / (2.0 * r0)
    p0, p1 = rabi_off_resonance(two_level, drive, t_flip)
    assert p1 == pytest.approx(1.0, abs=1e-12)
    assert p0 == pytest.approx(0.0, abs=1e-12)


def test_rabi_no_drive(two_level):
    drive = HarmonicDrive(0.0, 0.9 * two_level.omega)
    t = np.linspace(0.0, 10.0 / two_level.omega, 50)
    p0, p1 = rabi_off_resonance(two_level, drive, t)
    assert np.all(p1 == 0.0) and np.all(p0 == 1.0)


def test_rabi_half_amplitude_at_twice_rate_detuning(two_level):
    a = 0.02 * two_level.hbar * two_level.omega
    detuning = 2.0 * a / two_level.hbar
    drive = HarmonicDrive(a, two_level.omega + detuning)
    r1 = a / two_level.hbar
    r0 = math.hypot(r1, detuning / 2.0)
    _, p1_peak = rabi_off_resonance(two_level, drive, math.pi / (2.0 * r0))
    assert p1_peak == pytest.approx(0.5, abs=1e-12)


def test_rabi_amplitude_monotone_in_detuning(two_level):
    a = 0.02 * two_level.hbar * two_level.omega
    amplitudes = []
    for mult in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
        detuning = mult * a / two_level.hbar
        r1 = a / two_level.hbar
        r0 = math.hypot(r1, detuning / 2.0)
        amplitudes.append((r1 / r0) ** 2)
    assert all(x > y for x, y in zip(amplitudes, amplitudes[1:]))


@pytest.mark.parametrize("omega_mult", [0.97, 1.02])
def test_rabi_matches_rk4(two_level, omega_mult):
    a = 0.08 * two_level.hbar * two_level.omega
    drive = HarmonicDrive(a, omega_mult * two_level.omega)
    r0 = math.hypot(a / two_level.hbar, (drive.omega_prime - two_level.omega) / 2.0)
    times = np.linspace(0.0, 2.0 * math.pi / r0, 60)  # two Rabi periods
    c = rk4_two_level(simple_drive_interaction(two_level, drive),
                      np.array([1.0 + 0.0j, 0.0j]), times, two_level.hbar,
                      rk4_step_for(two_level, drive))
    p0, p1 = rabi_off_resonance(two_level, drive, times)
    assert np.max(np.abs(np.abs(c[:, 1]) ** 2 - p1)) <= 1e-6
    assert np.max(np.abs(np.abs(c[:, 0]) ** 2 - p0)) <= 1e-6


def test_rabi_localized_static_limit(two_level):
    a = 0.03 * two_level.hbar * two_level.omega
    drive = HarmonicDrive(a, 0.0)
    r0p = a / two_level.hbar
    t = np.linspace(0.0, math.pi / r0p, 30)
    p_l, p_r = rabi_localized(two_level, drive, t)
    assert p_l[0] == 0.0
    assert np.max(np.abs(p_l + p_r - 1.0)) <= 1e-12
    # full transfer exactly at the quarter period
    p_peak, _ = rabi_localized(two_level, drive, math.pi / (2.0 * r0p))
    assert p_peak == pytest.approx(1.0, abs=1e-12)


def test_rabi_localized_no_drive(two_level):
    drive = HarmonicDrive(0.0, 0.4 * two_level.omega)
    t = np.linspace(0.0, 5.0 / two_level.omega, 20)
    p_l, _ = rabi_localized(two_level, drive, t)
    assert np.all(p_l == 0.0)


def test_rabi_localized_matches_rk4(two_level):
    a = 0.05 * two_level.hbar * two_level.omega
    drive = HarmonicDrive(a, 0.6 * two_level.omega)
    r0p = math.hypot(a / two_level.hbar, drive.omega_prime / 2.0)
    times = np.linspace(0.0, 2.0 * math.pi / r0p, 60)
    c = rk4_two_level(localized_drive_interaction(drive),
                      np.array([0.0j, 1.0 + 0.0j]), times, two_level.hbar,
                      rk4_step_for(two_level, drive))
    p_l, p_r = rabi_localized(two_level, drive, times)
    assert np.max(np.abs(np.abs(c[:, 0]) ** 2 - p_l)) <= 1e-6
    assert np.max(np.abs(np.abs(c[:, 1]) ** 2 - p_r)) <= 1e-6


def test_transition_amplitude_zero_cases(two_level):
    hbar = two_level.hbar
    elems = (0.3 + 0.1j, 0.3 - 0.1j)
    c = transition_amplitude(two_level.e0, two_level.e1, elems,
                             0.3 * two_level.omega, 0.0, hbar)
    assert c == 0.0
    c = transition_amplitude(two_level.e0, two_level.e1, (0.0, 0.0),
                             0.3 * two_level.omega, 1.0 / two_level.omega, hbar)
    assert c == 0.0


def test_transition_amplitude_resonant_guard(two_level):
    elems = (1e-30, 1e-30)
    with pytest.raises(ResonantDenominator):
        transition_amplitude(two_level.e0, two_level.e1, elems,
                             two_level.omega, 1.0, two_level.hbar)


def test_transition_amplitude_matches_first_order_rk4(two_level):
    # weak symmetric drive 2A cos(w' t) sigma_x; both matrix elements real
    hbar = two_level.hbar
    omega = two_level.omega
    a = hbar * omega / 500.0
    omega_prime = 0.7 * omega
    drive = HarmonicDrive(a, omega_prime)

    def interaction(t: float) -> np.ndarray:
        coupling = 2.0 * a * math.cos(omega_prime * t)
        phase = cmath.exp(-1j * omega * t)
        return np.array([[0.0, coupling * phase],
                         [coupling * phase.conjugate(), 0.0]])

    times = np.linspace(0.0, 20.0 / omega, 40)
    c = rk4_two_level(interaction, np.array([1.0 + 0.0j, 0.0j]), times, hbar,
                      rk4_step_for(two_level, drive))
    p_rk4 = np.abs(c[:, 1]) ** 2
    p_formula = np.array([
        abs(transition_amplitude(two_level.e0, two_level.e1, (a, a),
                                 omega_prime, t, hbar)) ** 2
        for t in times])
    assert np.max(p_rk4) < 0.01  # the perturbative window
    mask = p_rk4 > 0.2 * np.max(p_rk4)
    rel = np.abs(p_formula[mask] / p_rk4[mask] - 1.0)
    assert np.max(rel) <= 0.05


def test_two_level_validation(two_level):
    with pytest.raises(ValueError):
        TwoLevelSystem(2.0, 1.0, 1e-7, two_level.hbar)
    with pytest.raises(ValueError):
        TwoLevelSystem(1e-26, 1.1e-26, -1e-7, two_level.hbar)
    with pytest.raises(ValueError):
        # splitting at the scale bound is not a valid two-level system
        TwoLevelSystem(1e-26, 3e-26, 1e-7, two_level.hbar,
                       confinement_scale=1e-26)


def test_from_well_consistency(table_well, two_level, table_spectrum):
    levels = {lv.index: lv for lv in table_spectrum.levels}
    assert two_level.e0 == pytest.approx(levels[0].energy, rel=1e-14)
    assert two_level.e1 == pytest.approx(levels[1].energy, rel=1e-14)
    assert two_level.omega > 0
    assert two_level.big_omega > two_level.omega


def test_operator_requires_2x2():
    with pytest.raises(ValueError):
        TwoByTwoOperator(np.eye(3), Basis.ENERGY)
