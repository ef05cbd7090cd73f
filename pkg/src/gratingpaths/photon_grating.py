"""Single photons from a decaying atom reflected by a ruled grating.

Strip ``k`` sits at ``x_k = k d``; a photon reflected from it towards the
observer at angle ``theta`` travels ``k d sin(theta)`` further and so must
have been emitted that much earlier. The per-strip amplitudes therefore
differ by a complex phase ``alpha = (r - i q) d`` whose imaginary part
comes from the decay width of the source.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import core
from .core import DomainError


@dataclass(frozen=True)
class PhotonGratingConfig:
    photon_energy: float  # eV
    lifetime: float  # ns, may be math.inf
    pitch: float  # nm
    strip_width: float  # nm
    n_strips: int
    r_source: float  # nm
    r_observer: float  # nm
    scale: float = 1.0

    def __post_init__(self):
        if not self.photon_energy > 0:
            raise DomainError("photon_energy must be positive")
        if not self.lifetime > 0:
            raise DomainError("lifetime must be positive")
        if not 0 < self.strip_width <= self.pitch:
            raise DomainError("need 0 < strip_width <= pitch")
        if int(self.n_strips) != self.n_strips or self.n_strips < 1:
            raise DomainError("n_strips must be a positive integer")
        if not (self.r_source > 0 and self.r_observer > 0):
            raise DomainError("distances must be positive")
        if not self.scale > 0:
            raise DomainError("scale must be positive")
        width = self.n_strips * self.pitch
        if min(self.r_source, self.r_observer) < 100 * width:
            warnings.warn(
                f"source/observer distance is less than 100x the grating width ({width:g} nm); "
                "far-field approximations are doubtful",
                stacklevel=2,
            )

    @classmethod
    def reference(cls, **overrides) -> "PhotonGratingConfig":
        """2 eV photons, 10 ns lifetime, 1000 strips of 7112 nm, 1 m arms."""
        params = dict(photon_energy=2.0, lifetime=10.0, pitch=7112.0, strip_width=7112.0,
                      n_strips=1000, r_source=1e9, r_observer=1e9, scale=1.0)
        params.update(overrides)
        return cls(**params)

    @property
    def flight_time(self) -> float:
        """Light travel time source -> strip 0 -> observer (ns)."""
        return (self.r_source + self.r_observer) / core.CODATA.c_nm_per_ns


class StripPhaseParameter(NamedTuple):
    r_part: np.ndarray | float  # 1/nm
    q_part: np.ndarray | float  # 1/nm
    alpha: np.ndarray | complex  # rad

    @property
    def beta(self):
        return self.r_part - 1j * self.q_part


def strip_phase(config: PhotonGratingConfig, theta) -> StripPhaseParameter:
    """Complex phase increment between neighbouring strips.

    ``r = E sin(theta) / (hbar c)`` and ``q = sin(theta) / (2 c tau)``;
    ``alpha = (r - i q) d``. For ``theta > 0`` later strips carry the
    larger modulus ``|e^{i alpha}| = e^{q d} > 1``, because their photons
    left the atom earlier, before as much of the state had decayed.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > 0.5 * math.pi + 1e-15):
        raise DomainError("theta must lie in [-pi/2, pi/2]")
    s = np.sin(theta)
    r = config.photon_energy * s / core.CODATA.hbar_c_ev_nm
    q = s / (2.0 * core.CODATA.c_nm_per_ns * config.lifetime)
    alpha = (r - 1j * q) * config.pitch
    return StripPhaseParameter(r[()], q[()], alpha[()])


def single_strip_amplitude(strip_width: float, beta, reflectivity: float = 1.0):
    """Amplitude summed over reflection points across one strip.

    ``a * (exp(i b beta) - 1) / (i beta)``; for ``|b beta| < 1e-8`` the
    second-order series ``a b (1 + i b beta/2 - (b beta)^2/6)`` is used.
    """
    if not strip_width > 0:
        raise DomainError("strip_width must be positive")
    beta = np.asarray(beta, dtype=complex)
    x = strip_width * beta
    small = np.abs(x) < 1e-8
    safe_beta = np.where(small, 1.0, beta)
    closed = core.expm1_i(np.where(small, 1.0, x)) / (1j * safe_beta)
    series = strip_width * (1 + 0.5j * x - x * x / 6.0)
    return (reflectivity * np.where(small, series, closed))[()]


def source_factor(config: PhotonGratingConfig, t_detect, t_create=0.0):
    """``exp(i phi(t_D, t_0))``: decay amplitude up to the strip-0 emission time."""
    elapsed = np.asarray(t_detect, dtype=float) - config.flight_time - t_create
    tol = 1e-12 * config.flight_time
    if np.any(elapsed < -tol):
        raise DomainError("detection earlier than the light travel time allows")
    elapsed = np.maximum(elapsed, 0.0)
    hbar = core.CODATA.hbar_ev_ns
    return np.exp(-1j * config.photon_energy * elapsed / hbar
                  - 0.5 * elapsed / config.lifetime)[()]


def grating_amplitude(config: PhotonGratingConfig, theta, t_detect, t_create=0.0):
    """Total amplitude for reflection at ``theta`` and detection at ``t_detect``.

    Product of the lumped scale over ``r_O r_S``, the decay-damped source
    factor, the single-strip factor and the sum over ``N`` strips.
    """
    sp = strip_phase(config, theta)
    pref = config.scale / (config.r_observer * config.r_source)
    return (pref * source_factor(config, t_detect, t_create)
            * single_strip_amplitude(config.strip_width, sp.beta)
            * core.geometric_path_sum(sp.alpha, config.n_strips))


def detection_time_density(config: PhotonGratingConfig, theta, t_detect, t_create=0.0):
    """Probability per unit detection time (1/ns), ``|A_FI|^2``."""
    return np.abs(grating_amplitude(config, theta, t_detect, t_create)) ** 2


def detection_time_density_expanded(config: PhotonGratingConfig, theta, t_detect,
                                    t_create=0.0, form: str = "exp"):
    """The same density written out in real arithmetic.

    Each conjugate pair multiplies out to ``1 - 2 e^{x} cos y + e^{2x}``.
    ``form="exp"`` evaluates this as ``(e^x - 1)^2 + 4 e^x sin^2(y/2)``;
    ``form="cosh"`` as ``2 e^x (cosh x - cos y)``. Both run in extended
    precision so they serve as an independent check on the complex
    product away from ``theta = 0``.
    """
    sp = strip_phase(config, theta)
    ld = np.longdouble
    r = np.asarray(sp.r_part, dtype=ld)
    q = np.asarray(sp.q_part, dtype=ld)
    b, n = ld(config.strip_width), ld(config.n_strips)
    elapsed = np.asarray(t_detect, dtype=ld) - ld(config.flight_time) - ld(t_create)
    lifetime = np.exp(-elapsed / ld(config.lifetime))
    pref = (ld(config.scale) / (ld(config.r_observer) * ld(config.r_source))) ** 2

    if form == "exp":
        def pair(x, y):
            return np.expm1(x) ** 2 + 4.0 * np.exp(x) * np.sin(0.5 * y) ** 2
    elif form == "cosh":
        def pair(x, y):
            return 2.0 * np.exp(x) * (np.cosh(x) - np.cos(y))
    else:
        raise ValueError(f"unknown form {form!r}")

    # per-strip phase taken from alpha itself, the input the complex form uses
    y = np.asarray(np.real(sp.alpha), dtype=ld)
    x = -np.asarray(np.imag(sp.alpha), dtype=ld)
    strip = pair(q * b, r * b) / (r * r + q * q)
    grating = pair(n * x, n * y) / pair(x, y)
    return (pref * lifetime * strip * grating).astype(float)[()]


def angular_factor(config: PhotonGratingConfig, theta):
    """Theta dependence of the time-integrated intensity for ``q << r``.

    ``sin^2(r b/2)/r^2 * sin^2(N r d/2)/sin^2(r d/2)``, continuous through
    ``theta = 0`` and the principal maxima.
    """
    sp = strip_phase(config, theta)
    r = np.asarray(sp.r_part)
    half_b = 0.5 * config.strip_width
    strip = (half_b * np.sinc(r * half_b / math.pi)) ** 2
    grating = np.abs(core.geometric_path_sum(r * config.pitch, config.n_strips)) ** 2
    return (strip * grating)[()]


def integrated_intensity(config: PhotonGratingConfig, theta, exact: bool = False):
    """Detection probability at ``theta`` summed over all detection times.

    By default returns the narrow-line closed form
    ``4 tau |scale|^2/(r_O r_S)^2 * sin^2(rb/2) sin^2(Nrd/2) / (r^2 sin^2(rd/2))``.
    With ``exact=True`` the full time-resolved density is integrated
    numerically from the earliest possible detection time.
    """
    if not exact:
        pref = (config.scale / (config.r_observer * config.r_source)) ** 2
        return 4.0 * config.lifetime * pref * angular_factor(config, theta)

    from .oracles import QuadratureSpec, adaptive_integral

    if math.isinf(config.lifetime):
        raise DomainError("exact time integral diverges for an infinite lifetime")
    t0 = config.flight_time
    horizon = 80.0 * config.lifetime
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.empty(thetas.shape)
    for i, th in enumerate(thetas.flat):
        peak = float(detection_time_density(config, th, t0))
        spec = QuadratureSpec(0.0, horizon, abs_tol=max(peak, 1e-300) * 1e-14, rel_tol=1e-10)
        res = adaptive_integral(
            lambda x: float(detection_time_density(config, th, t0 + x)), spec)
        out.flat[i] = res.value.real
    return out[0] if np.ndim(theta) == 0 else out


def constructive_angles(config: PhotonGratingConfig, l_max: int) -> list[float]:
    """Angles where all strip amplitudes are in phase, orders 1..l_max."""
    unit = core.CODATA.hc_ev_nm / (config.photon_energy * config.pitch)
    return [math.asin(l * unit) for l in range(1, l_max + 1) if l * unit <= 1.0]


class DestructiveAngle(NamedTuple):
    theta: float
    order: int
    complete: bool


def destructive_angles(config: PhotonGratingConfig, l_max: int) -> list[DestructiveAngle]:
    """Angles with ``alpha = (2l+1) pi``, orders 0..l_max.

    Cancellation is complete for an even number of strips and leaves one
    uncancelled strip amplitude for an odd number.
    """
    unit = 0.5 * core.CODATA.hc_ev_nm / (config.photon_energy * config.pitch)
    complete = config.n_strips % 2 == 0
    return [DestructiveAngle(math.asin((2 * l + 1) * unit), l, complete)
            for l in range(0, l_max + 1) if (2 * l + 1) * unit <= 1.0]


def pitch_from_first_maximum(photon_energy: float, theta1: float) -> float:
    """Strip spacing (nm) that puts the first-order maximum at ``theta1``."""
    if not photon_energy > 0:
        raise DomainError("photon_energy must be positive")
    s = math.sin(theta1)
    if not 0 < s <= 1:
        raise DomainError("first maximum must lie in (0, pi/2]")
    return core.CODATA.hc_ev_nm / (photon_energy * s)


def damping_bound(config: PhotonGratingConfig) -> float:
    """Upper bound ``N d / (c tau)`` on ``2 N q d`` over all angles."""
    return config.n_strips * config.pitch / (core.CODATA.c_nm_per_ns * config.lifetime)


def interference_contrast(config: PhotonGratingConfig, order: int = 1) -> float:
    """Peak-to-valley ratio of the strip-sum factor around a principal maximum.

    The valley is the first zero of the undamped pattern next to the peak;
    finite lifetime fills it in by the ``1/cosh(N q d)`` mechanism.
    """
    unit = core.CODATA.hc_ev_nm / (config.photon_energy * config.pitch)
    n = config.n_strips
    s_peak = order * unit
    s_valley = (order + 1.0 / n) * unit
    if s_valley > 1:
        raise DomainError("order lies outside the physical angular range")
    peak = np.abs(core.geometric_path_sum(strip_phase(config, math.asin(s_peak)).alpha, n)) ** 2
    valley = np.abs(core.geometric_path_sum(strip_phase(config, math.asin(s_valley)).alpha, n)) ** 2
    return float(peak / valley)
