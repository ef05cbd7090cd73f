"""Angular intensity profiles and principal-maximum location.

With ``N`` in the hundreds or thousands the interference lobes are far
narrower than any practical sampling grid, so peaks are not read off the
samples. Each principal maximum is seeded at its analytic angle and
refined with a bounded scalar search inside half a lobe width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from . import core, electron_grating, photon_grating

PEAK_XTOL = 1e-12  # rad


class Peak(NamedTuple):
    theta: float  # rad
    intensity: float
    order: int


@dataclass(frozen=True)
class IntensityProfile:
    theta: np.ndarray  # rad
    intensity: np.ndarray
    peaks: tuple[Peak, ...] = ()

    def __post_init__(self):
        if np.shape(self.theta) != np.shape(self.intensity):
            raise ValueError("theta and intensity must have the same shape")

    @property
    def theta_deg(self) -> np.ndarray:
        return np.degrees(self.theta)


def refine_maximum(f: Callable[[float], float], centre: float, half_width: float,
                   low: float = -0.5 * math.pi, high: float = 0.5 * math.pi,
                   xtol: float = PEAK_XTOL) -> float:
    """Angle maximising ``f`` within ``centre +- half_width`` (clipped to [low, high])."""
    a = max(low, centre - half_width)
    b = min(high, centre + half_width)
    if not b > a:
        return centre
    res = minimize_scalar(lambda x: -f(x), bounds=(a, b), method="bounded",
                          options={"xatol": xtol, "maxiter": 500})
    return float(res.x)


def photon_peaks(config: photon_grating.PhotonGratingConfig, theta_low: float,
                 theta_high: float) -> list[Peak]:
    """Principal maxima of the strip-sum factor inside ``[theta_low, theta_high]``.

    Positions maximise ``|sum_k e^{i k alpha}|^2``; intensities come from the
    full pattern. An order whose maximum coincides with a zero of the
    single-strip factor (``b = d`` and ``l != 0``) is reported with its
    near-zero intensity rather than dropped.
    """
    unit = core.CODATA.hc_ev_nm / (config.photon_energy * config.pitch)
    n = config.n_strips

    def factor(th):
        return abs(core.geometric_path_sum(photon_grating.strip_phase(config, th).alpha, n)) ** 2

    return _orders(factor, unit, n, theta_low, theta_high,
                   lambda th: float(_photon_intensity(config, th)))


def electron_peaks(config: electron_grating.ElectronGratingConfig, theta_low: float,
                   theta_high: float) -> list[Peak]:
    """Principal maxima of the row-sum pattern inside ``[theta_low, theta_high]``."""
    try:
        unit = math.sin(electron_grating.first_maximum_angle(config))
    except electron_grating.NoPhysicalMaximum:
        unit = math.inf

    def pattern(th):
        return float(electron_grating.dg_pattern(config, th))

    return _orders(pattern, unit, config.n_rows, theta_low, theta_high, pattern)


def _orders(factor, unit, n, theta_low, theta_high, intensity) -> list[Peak]:
    peaks = []
    s_low, s_high = math.sin(theta_low), math.sin(theta_high)
    if math.isinf(unit):
        orders = [0] if s_low <= 0 <= s_high else []
    else:
        orders = range(math.ceil(s_low / unit - 1e-12), math.floor(s_high / unit + 1e-12) + 1)
    for l in orders:
        seed = math.asin(l * unit) if l else 0.0
        # half the angular distance to the neighbouring zero
        half = 0.5 * unit / (n * max(math.cos(seed), 1e-12))
        # the zeroth order sits at theta = 0 by symmetry
        th = refine_maximum(factor, seed, half, theta_low, theta_high) if l else 0.0
        peaks.append(Peak(th, intensity(th), abs(int(l))))
    return peaks


def _photon_intensity(config, theta):
    if math.isinf(config.lifetime):
        pref = (config.scale / (config.r_observer * config.r_source)) ** 2
        return pref * photon_grating.angular_factor(config, theta)
    return photon_grating.integrated_intensity(config, theta)


def photon_profile(config: photon_grating.PhotonGratingConfig, theta) -> IntensityProfile:
    """Time-integrated detection probability against angle.

    For an infinitely long-lived source the time integral diverges and the
    per-unit-time intensity without the ``4 tau`` factor is returned.
    """
    theta = np.asarray(theta, dtype=float)
    inten = np.asarray(_photon_intensity(config, theta), dtype=float)
    peaks = photon_peaks(config, float(theta.min()), float(theta.max()))
    return IntensityProfile(theta, inten, tuple(peaks))


def electron_profile(config: electron_grating.ElectronGratingConfig, theta) -> IntensityProfile:
    theta = np.asarray(theta, dtype=float)
    inten = np.asarray(electron_grating.dg_pattern(config, theta), dtype=float)
    peaks = electron_peaks(config, float(theta.min()), float(theta.max()))
    return IntensityProfile(theta, inten, tuple(peaks))
