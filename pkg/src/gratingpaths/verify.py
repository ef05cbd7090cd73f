"""Self-check suite: closed forms against oracles and frozen reference values.

Each check reports a measured error and the tolerance it must stay within.
Golden values are computed here from literal constants rather than from
``core.CODATA``, so a corrupted constant shows up as a failure.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from . import (classical_wave, core, decay_source, electron_grating, kinematics, oracles,
               photon_grating)

# independent literal constants for golden values
_HBAR_EV_NS = 6.582119569e-7
_C_NM_NS = 2.99792458e8
_HC_EV_NM = 2.0 * math.pi * _HBAR_EV_NS * _C_NM_NS
_ME_EV = 0.51099895e6

SUITES = ("core", "photon_grating", "electron_grating", "kinematics", "classical_wave",
          "decay_source", "oracles")


class Check(NamedTuple):
    suite: str
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.measured <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.suite}.{self.name}: "
                f"error {self.measured:.3e} <= {self.tolerance:.1e}")


def _rel(a, b) -> float:
    a, b = complex(a), complex(b)
    if b == 0:
        return abs(a)
    return abs(a - b) / abs(b)


def _core():
    rng = np.random.default_rng(12345)
    k = core.CODATA
    yield "constants_consistent", _rel(k.hbar_c_ev_nm / k.hbar_ev_s, k.c_m_per_s * 1e9), 1e-12
    worst = 0.0
    for _ in range(50):
        alpha = complex(rng.uniform(-10, 10), rng.uniform(-1e-3, 1e-3))
        n = int(rng.integers(1, 3000))
        worst = max(worst, _rel(core.geometric_path_sum(alpha, n),
                                oracles.direct_geometric_sum(alpha, n)))
    yield "geometric_sum_vs_direct", worst, 1e-11
    yield "geometric_sum_destructive", abs(core.geometric_path_sum(math.pi, 2)), 1e-15
    state = core.KinematicState.electron(7.43e3)
    golden = -_ME_EV ** 2 * 0.167 / (_HBAR_EV_NS * _C_NM_NS * 7.43e3)
    yield "propagator_phase_golden", _rel(core.propagator_phase(state, 0.167), golden), 1e-12


def _photon():
    ref = photon_grating.PhotonGratingConfig.reference()
    d = photon_grating.pitch_from_first_maximum(2.0, math.radians(5.0))
    yield "pitch_golden", _rel(d, _HC_EV_NM / (2.0 * math.sin(math.radians(5.0)))), 1e-12
    yield "pitch_quoted_7.1um", _rel(d, 7100.0), 2e-2
    sp = photon_grating.strip_phase(ref, math.radians(5.0))
    yield "q_over_r_golden", _rel(sp.q_part / sp.r_part, _HBAR_EV_NS / (2 * 10.0 * 2.0)), 1e-12
    yield "damping_bound_quoted", _rel(photon_grating.damping_bound(ref), 2.4e-3), 5e-2
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(40):
        cfg = photon_grating.PhotonGratingConfig(
            photon_energy=rng.uniform(1, 4), lifetime=rng.uniform(1, 100),
            pitch=rng.uniform(2000, 9000), strip_width=1500.0, n_strips=int(rng.integers(2, 2000)),
            r_source=1e10, r_observer=1e10)
        th = rng.uniform(0.01, 1.5)
        worst = max(worst, _rel(photon_grating.detection_time_density(cfg, th, cfg.flight_time + 3.0),
                                photon_grating.detection_time_density_expanded(
                                    cfg, th, cfg.flight_time + 3.0)))
    yield "density_vs_expanded", worst, 1e-10
    beta = 8.84e-4 - 1.45e-11j
    quad = oracles.adaptive_integral(lambda s: np.exp(1j * beta * s),
                                     oracles.QuadratureSpec(0.0, 7112.0, abs_tol=1e-10, rel_tol=1e-10),
                                     period=2 * math.pi / beta.real)
    yield "strip_vs_quadrature", _rel(photon_grating.single_strip_amplitude(7112.0, beta), quad.value), 1e-9


def _electron():
    ref = electron_grating.ElectronGratingConfig.reference()
    yield "first_max_EPT_quoted", abs(math.degrees(electron_grating.first_maximum_angle(ref)) - 51.0), 0.5
    ev = electron_grating.ElectronGratingConfig.reference(hypothesis="EV")
    yield "first_max_EV_quoted", _rel(math.degrees(electron_grating.first_maximum_angle(ev)), 0.0094), 5e-2
    p = math.sqrt(54.0 ** 2 + 2 * 54.0 * _ME_EV)
    golden = math.degrees(math.asin(_HC_EV_NM / (p * 0.215)))
    yield "first_max_EPT_golden", _rel(math.degrees(electron_grating.first_maximum_angle(ref)), golden), 1e-12
    worst = 0.0
    for t in (500.0, 2500.0, 5000.0):
        cfg = electron_grating.ElectronGratingConfig.reference(filament_temperature=t)
        for deg in (1.0, 10.0, 51.0, 89.0):
            th = math.radians(deg)
            ds = cfg.row_spacing * math.sin(th)
            num = oracles.gaussian_pair_integral(
                ds, cfg.momentum_distribution, float(electron_grating.momentum_difference(cfg, th)),
                core.CODATA.hbar_c_ev_nm)
            worst = max(worst, _rel(electron_grating.pair_overlap(cfg, th), num))
    yield "pair_overlap_vs_quadrature", worst, 1e-6
    worst = 0.0
    for n in (2, 7, 50, 1000):
        cfg = electron_grating.ElectronGratingConfig.reference(n_rows=n)
        for th in (0.3, 0.9, 1.2):
            alpha = float(electron_grating.phase_increment(cfg, th))
            direct = oracles.direct_geometric_sum(alpha, n)
            worst = max(worst, _rel(electron_grating.dg_pattern(cfg, th), abs(direct) ** 2))
    yield "dg_pattern_vs_direct", worst, 1e-11


def _kinematics():
    samples = []
    for eps in (1e-3, 5e-4, 2.5e-4):
        s_b = 5e7
        s_a = s_b * (1 + eps)
        pair = kinematics.PathPair(s_a, s_b, 7400.0, 7430.0)
        ratio = 1.0 + 0.3 * (pair.ratio_ev - 1.0)
        exact_pair = kinematics.pair_from_ratio(s_a, s_b, pair.mean_p, ratio)
        approx = kinematics.phase_difference_first_order(
            pair.mean_s, pair.delta_s, pair.mean_p, pair.mass_energy, ratio, pair.ratio_ev)
        samples.append((eps, abs(kinematics.phase_difference_exact(exact_pair) - approx)))
    order = oracles.convergence_order_fit(samples)
    yield "first_order_error_exponent", abs(order - 2.0), 0.1
    pair = kinematics.PathPair(3.0, 2.0, 100.0, 250.0)
    yield "antisymmetry", abs(kinematics.phase_difference_exact(pair)
                              + kinematics.phase_difference_exact(pair.swapped())), 1e-9


def _classical():
    w = classical_wave.SpatialWave.from_wavelength(620.0)
    samples = [(h, classical_wave.helmholtz_residual(w, 1e4, step=h, richardson=False))
               for h in (2.0, 4.0, 8.0, 16.0)]
    yield "helmholtz_order", abs(oracles.convergence_order_fit(samples) - 2.0), 0.1
    lam = classical_wave.de_broglie_wavelength("photon", 2.0)
    yield "photon_wavelength_golden", _rel(lam, _HC_EV_NM / 2.0), 1e-12
    cfg = electron_grating.ElectronGratingConfig.reference()
    wave = classical_wave.electron_spatial_wave(cfg)
    th = np.radians([20.0, 45.0, 50.9, 70.0])
    amp = classical_wave.superposition_intensity(wave, cfg.r_observer, cfg.row_spacing,
                                                 cfg.n_rows, th) * cfg.r_observer ** 2
    ratio = amp / electron_grating.dg_pattern(cfg, th)
    yield "electron_superposition_shape", float(np.ptp(ratio) / np.mean(ratio)), 1e-10


def _decay():
    yield "width_golden", _rel(decay_source.width_from_lifetime(10.0), _HBAR_EV_NS / 10.0), 1e-12
    yield "position_uncertainty_quoted", _rel(decay_source.photon_position_uncertainty(10.0), 3.0), 1e-3
    yield "alive_at_tau", abs(decay_source.cat_alive_probability(1.44, 1.44) - math.exp(-1.0)), 1e-12
    tau = 2.0
    scale = decay_source.normalising_scale(tau)
    # integrate |scale/r|^2 e^{-t/tau} over the sphere (4 pi r^2) and detection times
    res = oracles.adaptive_integral(lambda t: 4 * math.pi * scale ** 2 * math.exp(-t / tau),
                                    oracles.QuadratureSpec(0.0, 80 * tau))
    yield "normalisation", abs(res.value.real - 1.0), 1e-6


def _oracles():
    yield "unit_integral", abs(oracles.adaptive_integral(
        lambda x: 1.0, oracles.QuadratureSpec(0.0, 1.0)).value - 1.0), 1e-14
    xs = np.linspace(0.1, 1.0, 4)
    yield "quadratic_fit", abs(oracles.convergence_order_fit(list(zip(xs, 3 * xs ** 2))) - 2.0), 1e-6
    dist = electron_grating.MomentumDistribution(7430.0, 469.0)
    res = oracles.adaptive_integral(lambda p: dist.amplitude(p) ** 2,
                                    oracles.QuadratureSpec(7430.0 - 20 * 469.0, 7430.0 + 20 * 469.0))
    yield "gaussian_normalisation", abs(res.value - 1.0), 1e-9


_SUITES: dict[str, Callable] = {
    "core": _core,
    "photon_grating": _photon,
    "electron_grating": _electron,
    "kinematics": _kinematics,
    "classical_wave": _classical,
    "decay_source": _decay,
    "oracles": _oracles,
}


def run_verify(suite: str = "all") -> list[Check]:
    """Run one suite or ``"all"`` and return the checks in a fixed order."""
    if suite == "all":
        names = SUITES
    elif suite in _SUITES:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    checks = []
    for name in names:
        for check_name, measured, tol in _SUITES[name]():
            checks.append(Check(name, check_name, float(measured), tol))
    return checks
