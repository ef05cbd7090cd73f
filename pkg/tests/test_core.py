import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gratingpaths import core, oracles
from gratingpaths.core import CODATA, DomainError, KinematicState


def test_constants_mutually_consistent():
    assert math.isclose(CODATA.hbar_c_ev_nm / CODATA.hbar_ev_s, CODATA.c_m_per_s * 1e9,
                        rel_tol=1e-12)


def test_constants_match_codata_values():
    assert CODATA.hbar_ev_s == 6.582119569e-16
    assert CODATA.c_m_per_s == 2.99792458e8
    assert CODATA.electron_rest_energy_ev == 0.51099895e6
    assert CODATA.boltzmann_ev_per_k == 8.617333262e-5
    assert math.isclose(CODATA.hbar_c_ev_nm, 197.3269804, rel_tol=1e-9)
    assert math.isclose(CODATA.hc_ev_nm, 1239.84, rel_tol=1e-5)


def test_constants_must_be_positive():
    with pytest.raises(DomainError):
        core.PhysicalConstants(1.0, 1.0, -1.0, 1.0, 1.0)


def test_complex_amplitude_is_builtin_complex():
    a = core.ComplexAmplitude(3, 4)
    assert abs(a) ** 2 == 25.0


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_amplitude_product_associative_commutative(a, b, c):
    scale = max(abs(a) * abs(b) * abs(c), 1e-300)
    assert abs((a * b) * c - a * (b * c)) <= 1e-14 * scale * 4
    assert abs(a * b - b * a) <= 1e-14 * max(abs(a) * abs(b), 1e-300)


@given(st.floats(0.0, 1e6), st.floats(0.0, 1e6))
def test_kinematic_state_energy_momentum_relation(m, p):
    s = KinematicState.from_momentum(m, p)
    assert math.isclose(s.energy ** 2, m * m + p * p, rel_tol=1e-12, abs_tol=1e-300)
    assert 0.0 <= s.velocity_fraction <= 1.0


def test_photon_state():
    s = KinematicState.photon(2.0)
    assert s.is_massless and s.velocity_fraction == 1.0 and s.lorentz_factor == math.inf


def test_inconsistent_state_rejected():
    with pytest.raises(DomainError):
        KinematicState(1.0, 1.0, 3.0, 0.5)


def test_from_kinetic_roundtrip():
    s = KinematicState.from_kinetic(CODATA.electron_rest_energy_ev, 54.0)
    assert math.isclose(s.energy - s.rest_energy, 54.0, rel_tol=1e-9)


def test_propagator_phase_photon_is_zero():
    assert core.propagator_phase(KinematicState.photon(2.0), 123.0) == 0.0


def test_propagator_phase_zero_length():
    assert core.propagator_phase(KinematicState.electron(7.43e3), 0.0) == 0.0


def test_propagator_phase_electron_value():
    state = KinematicState.electron(7.43e3)
    expected = -(0.51099895e6) ** 2 * 0.167 / (CODATA.hbar_c_ev_nm * 7.43e3)
    assert math.isclose(core.propagator_phase(state, 0.167), expected, rel_tol=1e-14)


def test_propagator_phase_zero_momentum_massive():
    with pytest.raises(DomainError):
        core.propagator_phase(KinematicState.from_momentum(1.0, 0.0), 1.0)


@given(st.floats(0.0, 1e8), st.floats(0.0, 1e8))
def test_propagator_phase_linear(s1, s2):
    state = KinematicState.electron(7.43e3)
    lhs = core.propagator_phase(state, s1 + s2)
    rhs = core.propagator_phase(state, s1) + core.propagator_phase(state, s2)
    assert abs(lhs - rhs) <= 1e-13 * max(abs(lhs), 1e-300)


def test_free_kernel_light_cone():
    state = KinematicState.photon(2.0)
    t = 3.3
    r = CODATA.c_nm_per_ns * t
    k = core.free_kernel(state, r, t)
    assert math.isclose(abs(k), 1.0 / r, rel_tol=1e-15)
    assert abs(np.angle(k)) < 1e-6


def test_free_kernel_doubling_r_halves_modulus():
    state = KinematicState.electron(7.43e3)
    assert math.isclose(abs(core.free_kernel(state, 2.0, 1.0)),
                        0.5 * abs(core.free_kernel(state, 1.0, 1.0)), rel_tol=1e-15)


def test_free_kernel_massive_phase_cancels():
    state = KinematicState.electron(7.43e3)
    r = 10.0
    t = state.momentum * r / CODATA.hbar_c_ev_nm * CODATA.hbar_ev_ns / state.energy
    k = core.free_kernel(state, r, t)
    assert abs(np.angle(k)) < 1e-9
    assert math.isclose(abs(k), 0.1, rel_tol=1e-15)


def test_free_kernel_singular_origin():
    with pytest.raises(DomainError):
        core.free_kernel(KinematicState.photon(1.0), 0.0, 1.0)


@given(st.floats(1e-3, 1e9), st.floats(1e-3, 1e3))
def test_free_kernel_modulus_times_r(r, t):
    k = core.free_kernel(KinematicState.electron(7.43e3), r, t)
    assert abs(abs(k) * r - 1.0) < 1e-15 * 2


def test_geometric_sum_all_in_phase():
    assert core.geometric_path_sum(0.0, 5) == 5 + 0j


def test_geometric_sum_complete_cancellation():
    assert abs(core.geometric_path_sum(math.pi, 2)) < 1e-15


def test_geometric_sum_damped_matches_direct():
    alpha = 0.7 - 0.001j
    value = core.geometric_path_sum(alpha, 1000)
    direct = oracles.direct_complex_sum(np.exp(1j * np.arange(1000) * alpha))
    assert abs(value - direct) <= 1e-12 * abs(direct)


def test_geometric_sum_single_path():
    assert core.geometric_path_sum(1.3 - 0.2j, 1) == 1.0


def test_geometric_sum_needs_a_path():
    with pytest.raises(DomainError):
        core.geometric_path_sum(0.1, 0)


def test_geometric_sum_vectorised():
    alphas = np.array([0.0, 0.5, 2 * math.pi])
    out = core.geometric_path_sum(alphas, 4)
    assert out.shape == (3,)
    assert out[0] == 4 and abs(out[2] - 4) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-50.0, 50.0), st.integers(1, 10**6))
def test_geometric_sum_real_alpha_bounded(a, n):
    assert abs(core.geometric_path_sum(a, n)) <= n * (1 + 1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-20.0, 20.0), st.floats(-1.0, 1.0), st.integers(1, 10**6))
def test_geometric_sum_closed_form_vs_direct(a, b_scale, n):
    # |Im alpha| * N <= 10
    alpha = complex(a, b_scale * 10.0 / n)
    exact = oracles.direct_geometric_sum(alpha, n)
    got = core.geometric_path_sum(alpha, n)
    assert abs(got - exact) <= 1e-11 * abs(exact) + 1e-13 * math.sqrt(n)


def test_geometric_sum_near_peak_uses_summation():
    alpha = 2 * math.pi + 1e-10
    got = core.geometric_path_sum(alpha, 100)
    assert abs(got - oracles.direct_geometric_sum(alpha, 100)) < 1e-12 * 100


def test_sin_cos_of_product_exact_reduction():
    n, x = 1e6, 0.1234567
    s, c = core.sin_cos_of_product(n, x)
    import mpmath as mp
    mp.mp.dps = 40
    prod = mp.mpf(n) * mp.mpf(x)
    assert abs(s - float(mp.sin(prod))) < 1e-15
    assert abs(c - float(mp.cos(prod))) < 1e-15


def test_expm1_i_small_argument():
    alpha = 1e-12 + 1e-13j
    assert abs(core.expm1_i(alpha) - (1j * alpha)) < 1e-24
