"""Excited-atom photon source and exponential-decay probabilities."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import core
from .core import DomainError, KinematicState

# |r - c*dt| allowed on the light cone, relative to r
LIGHT_CONE_RTOL = 1e-9


def width_from_lifetime(lifetime):
    """Natural width (eV) of a state with mean lifetime ``lifetime`` (ns)."""
    lifetime = np.asarray(lifetime, dtype=float)
    if np.any(lifetime <= 0):
        raise DomainError("lifetime must be positive")
    return (core.CODATA.hbar_ev_ns / lifetime)[()]


def lifetime_from_width(width):
    """Mean lifetime (ns) of a state with natural width ``width`` (eV)."""
    width = np.asarray(width, dtype=float)
    if np.any(width <= 0):
        raise DomainError("width must be positive")
    return (core.CODATA.hbar_ev_ns / width)[()]


@dataclass(frozen=True)
class UnstableState:
    """An excited state decaying to a stable one by photon emission.

    ``excitation_energy`` is the photon energy E_i - E_f in eV, ``lifetime``
    the mean lifetime in ns. The width is derived from the lifetime.
    """

    excitation_energy: float
    lifetime: float

    def __post_init__(self):
        if not self.excitation_energy > 0:
            raise DomainError("excitation energy must be positive")
        if not self.lifetime > 0:
            raise DomainError("lifetime must be positive")
        if self.width / self.excitation_energy > 1e-3:
            warnings.warn(
                "decay width is not small compared to the photon energy; "
                "narrow-line approximations will be poor",
                stacklevel=2,
            )

    @property
    def width(self) -> float:
        return core.CODATA.hbar_ev_ns / self.lifetime


def decay_phase(state: UnstableState, elapsed):
    """Unwrapped phase ``-E t / hbar`` of the decay amplitude (rad)."""
    return -state.excitation_energy * np.asarray(elapsed, dtype=float) / core.CODATA.hbar_ev_ns


def decay_amplitude(state: UnstableState, elapsed):
    """Survival-and-transition amplitude after ``elapsed`` ns.

    ``exp(-i (E - i Gamma/2) t / hbar)``, with the transition matrix element
    set to one. Its squared modulus is ``exp(-t / tau)``.
    """
    t = np.asarray(elapsed, dtype=float)
    if np.any(t < 0):
        raise DomainError("elapsed time must be non-negative")
    hbar = core.CODATA.hbar_ev_ns
    exponent = -1j * state.excitation_energy * t / hbar - 0.5 * t / state.lifetime
    return np.exp(exponent)[()]


def propagation_leg(state: UnstableState, r, dt):
    """Photon propagator over distance ``r`` (nm) and time ``dt`` (ns)."""
    return core.free_kernel(KinematicState.photon(state.excitation_energy), r, dt)


def emission_propagation_amplitude(state: UnstableState, r: float, t_detect: float,
                                   t_emit: float, t_create: float,
                                   scale: float = 1.0) -> complex:
    """Amplitude to detect at distance ``r`` a photon from the decaying state.

    The photon must lie on the light cone, ``r = c (t_detect - t_emit)``,
    within ``LIGHT_CONE_RTOL``. On the cone the propagation leg has no
    phase, so the result is ``scale / r`` times the decay amplitude over
    ``t_emit - t_create``.
    """
    if r <= 0:
        raise DomainError("distance must be positive")
    if t_emit < t_create:
        raise DomainError("photon cannot be emitted before the state is created")
    travel = core.CODATA.c_nm_per_ns * (t_detect - t_emit)
    if abs(r - travel) > LIGHT_CONE_RTOL * r:
        raise DomainError(
            f"off the light cone: r = {r} nm but c*(t_detect - t_emit) = {travel} nm"
        )
    return complex(scale / r * decay_amplitude(state, t_emit - t_create))


def normalising_scale(lifetime: float) -> float:
    """Scale that makes the total detection probability one.

    Integrating ``|scale/r|^2 exp(-t/tau)`` over a sphere of any radius and
    over all detection times gives ``4 pi tau scale^2``.
    """
    return 1.0 / math.sqrt(4.0 * math.pi * lifetime)


def photon_position_uncertainty(lifetime: float) -> float:
    """``hbar / (Gamma / c) = c * tau`` in metres, for a lifetime in ns."""
    width = width_from_lifetime(lifetime)
    return core.CODATA.hbar_ev_s * core.CODATA.c_m_per_s / width


def cat_alive_probability(mean_lifetime, t, t_delay=0.0):
    """Probability the cat is still alive at time ``t`` (same units as tau).

    Before ``t_delay`` has passed no decay can have killed the cat and the
    result is 1.
    """
    t = np.asarray(t, dtype=float)
    elapsed = np.maximum(t - t_delay, 0.0)
    if np.any(np.asarray(t_delay) < 0) or not np.all(np.asarray(mean_lifetime) > 0):
        raise DomainError("need t_delay >= 0 and a positive mean lifetime")
    return np.exp(-elapsed / mean_lifetime)[()]


def cat_dead_probability(mean_lifetime, t, t_delay=0.0):
    return (1.0 - np.asarray(cat_alive_probability(mean_lifetime, t, t_delay)))[()]
