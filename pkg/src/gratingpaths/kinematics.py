"""Two-path timing parameterisation and relativistic phase differences.

Path A and path B have lengths ``s_a``, ``s_b`` and transit times
``t_a >= t_b``. Their timing is described by the ratio ``R = t_a/t_b`` and
the difference ``D = t_a - t_b``. ``R = 1`` means equal production times,
``R = s_a/s_b`` equal velocities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import core
from .core import DomainError

# relative tolerance when comparing timing ratios
RATIO_RTOL = 1e-12


class IndeterminateVelocities(DomainError):
    """Equal transit times (R = 1, D = 0) leave the velocities unfixed."""


@dataclass(frozen=True)
class PathPair:
    s_a: float
    s_b: float
    p_a: float
    p_b: float
    mass_energy: float = core.CODATA.electron_rest_energy_ev

    def __post_init__(self):
        if not (self.s_a > 0 and self.s_b > 0):
            raise DomainError("path lengths must be positive")
        if not (self.p_a > 0 and self.p_b > 0):
            raise DomainError("momenta must be positive")

    @property
    def delta_s(self) -> float:
        return self.s_a - self.s_b

    @property
    def mean_s(self) -> float:
        return 0.5 * (self.s_a + self.s_b)

    @property
    def delta_p(self) -> float:
        return self.p_a - self.p_b

    @property
    def mean_p(self) -> float:
        return 0.5 * (self.p_a + self.p_b)

    @property
    def ratio_ev(self) -> float:
        return self.s_a / self.s_b

    def swapped(self) -> "PathPair":
        return PathPair(self.s_b, self.s_a, self.p_b, self.p_a, self.mass_energy)


@dataclass(frozen=True)
class TimingRatio:
    ratio: float
    difference: float  # ns


class Velocities(NamedTuple):
    beta_a: float
    beta_b: float

    @property
    def superluminal(self) -> bool:
        return self.beta_a > 1.0 or self.beta_b > 1.0


def velocities_from_timing(pair_lengths: tuple[float, float], timing: TimingRatio) -> Velocities:
    """Path speeds (units of c) implied by the transit-time ratio and difference.

    ``v_a = (R-1) s_a / (R D)`` and ``v_b = (R-1) s_b / D``. Check
    ``.superluminal`` on the result; the formula does not enforce ``v <= c``.

    Raises
    ------
    IndeterminateVelocities
        For ``R = 1, D = 0``.
    DomainError
        For ``R < 1``, ``D < 0`` or an inconsistent pair (exactly one of
        ``R = 1``, ``D = 0``).
    """
    s_a, s_b = pair_lengths
    R, D = timing.ratio, timing.difference
    if not (s_a > 0 and s_b > 0):
        raise DomainError("path lengths must be positive")
    if R <= 0 or D < 0:
        raise DomainError("need R > 0 and D >= 0")
    if R < 1:
        raise DomainError("paths are ordered so that t_a >= t_b, i.e. R >= 1")
    if R == 1 and D == 0:
        raise IndeterminateVelocities("equal transit times: velocities are fixed by momenta")
    if R == 1 or D == 0:
        raise DomainError("R = 1 and D = 0 must hold together")
    c = core.CODATA.c_nm_per_ns
    v_b = (R - 1.0) * s_b / D
    v_a = v_b * s_a / (s_b * R)
    return Velocities(v_a / c, v_b / c)


def momentum_from_beta(mass_energy: float, beta: float) -> float:
    """Relativistic ``pc = m c^2 beta gamma`` in eV."""
    if not 0 <= beta < 1:
        raise DomainError("beta must lie in [0, 1)")
    return mass_energy * beta / math.sqrt((1.0 - beta) * (1.0 + beta))


def beta_from_momentum(mass_energy: float, momentum: float) -> float:
    return momentum / math.hypot(mass_energy, momentum)


def equal_time_pair(s_a: float, s_b: float, beta_b: float,
                    mass_energy: float = core.CODATA.electron_rest_energy_ev) -> PathPair:
    """Path pair with equal transit times, so ``v_a / v_b = s_a / s_b`` exactly."""
    beta_a = beta_b * s_a / s_b
    return PathPair(s_a, s_b, momentum_from_beta(mass_energy, beta_a),
                    momentum_from_beta(mass_energy, beta_b), mass_energy)


def pair_from_timing(s_a: float, s_b: float, timing: TimingRatio,
                     mass_energy: float = core.CODATA.electron_rest_energy_ev) -> PathPair:
    v = velocities_from_timing((s_a, s_b), timing)
    if v.superluminal:
        raise DomainError("timing implies a speed above c")
    return PathPair(s_a, s_b, momentum_from_beta(mass_energy, v.beta_a),
                    momentum_from_beta(mass_energy, v.beta_b), mass_energy)


def pair_from_ratio(s_a: float, s_b: float, mean_momentum: float, ratio: float,
                    mass_energy: float = core.CODATA.electron_rest_energy_ev) -> PathPair:
    """Path pair whose transit times have ratio ``R``, centred on ``mean_momentum``.

    The speeds are ``v_bar +- dv/2`` with ``dv = 2 v_bar (R_EV - R)/(R_EV + R)``,
    which makes ``v_a / v_b = R_EV / R`` exactly.
    """
    if not mean_momentum > 0:
        raise DomainError("mean momentum must be positive")
    beta_bar = beta_from_momentum(mass_energy, mean_momentum)
    dv = delta_v_exact(beta_bar, ratio, s_a / s_b)
    return PathPair(s_a, s_b, momentum_from_beta(mass_energy, beta_bar + 0.5 * dv),
                    momentum_from_beta(mass_energy, beta_bar - 0.5 * dv), mass_energy)


def phase_difference_exact(pair: PathPair) -> float:
    """``phi_a - phi_b = (mc^2)^2 / (hbar c) * (s_b/p_b - s_a/p_a)``, no expansion.

    The cross difference ``s_b p_a - s_a p_b`` is formed from error-free
    products and a correctly rounded sum, so nearly equal paths do not lose
    digits and swapping the paths changes the sign exactly.
    """
    m2 = pair.mass_energy ** 2
    hi_b, lo_b = core.two_product(pair.s_b, pair.p_a)
    hi_a, lo_a = core.two_product(pair.s_a, pair.p_b)
    cross = math.fsum((hi_b, lo_b, -hi_a, -lo_a))
    return m2 / core.CODATA.hbar_c_ev_nm * cross / (pair.p_a * pair.p_b)


def phase_difference_first_order(mean_s: float, delta_s: float, mean_p: float,
                                 mass_energy: float, ratio: float, ratio_ev: float) -> float:
    """Phase difference kept to first order in ``delta_s / mean_s``.

    .. math::

        \\frac{(mc)^2}{\\hbar}\\left[-\\frac{\\Delta s}{\\bar p}
        + \\frac{\\bar s}{\\bar p}\\left(1 + \\frac{\\bar p^2}{(mc)^2}\\right)
        \\frac{R_{EV} - R}{R}\\right]
    """
    if ratio <= 0:
        raise DomainError("ratio must be positive")
    m2 = mass_energy ** 2
    bracket = (-delta_s / mean_p
               + mean_s / mean_p * (1.0 + mean_p ** 2 / m2) * (ratio_ev - ratio) / ratio)
    return m2 / core.CODATA.hbar_c_ev_nm * bracket


def phase_difference_equal_times(mean_p: float, delta_s: float) -> float:
    """First-order phase difference for equal production times, ``p ds / hbar``."""
    return mean_p * delta_s / core.CODATA.hbar_c_ev_nm


def phase_difference_equal_velocities(mean_p: float, delta_s: float,
                                      mass_energy: float = core.CODATA.electron_rest_energy_ev) -> float:
    """Phase difference for equal velocities, ``-(mc)^2 ds / (hbar p)``."""
    return -mass_energy ** 2 * delta_s / (core.CODATA.hbar_c_ev_nm * mean_p)


def delta_v_exact(mean_v: float, ratio: float, ratio_ev: float) -> float:
    """Speed difference ``v_a - v_b`` for transit-time ratio ``R`` at mean speed ``v_bar``."""
    if ratio <= 0 or ratio_ev <= 0:
        raise DomainError("ratios must be positive")
    return 2.0 * mean_v * (ratio_ev - ratio) / (ratio_ev + ratio)


def delta_v_first_order(mean_v: float, ratio: float, ratio_ev: float) -> float:
    """``v_bar (R_EV - R) / R``, the exact form kept to first order in ``ds/s``."""
    return mean_v * (ratio_ev - ratio) / ratio


def delta_p_from_delta_v(mass_energy: float, energy: float, delta_v: float) -> float:
    """Momentum change for a small velocity change: ``dp c = E^3/(mc^2)^2 dbeta``."""
    return energy ** 3 / mass_energy ** 2 * delta_v


def nonrelativistic_delta_p(mean_p: float, delta_s: float, mean_s: float) -> float:
    """Equal-time momentum difference with ``p = m v``: ``dp = p ds / s``."""
    return mean_p * delta_s / mean_s


def classify_timing(ratio: float, ratio_ev: float) -> str:
    """Label a timing ratio as ``"EPT"``, ``"EV"`` or ``"mixed"``."""
    if math.isclose(ratio, 1.0, rel_tol=RATIO_RTOL):
        return "EPT"
    if math.isclose(ratio, ratio_ev, rel_tol=RATIO_RTOL):
        return "EV"
    return "mixed"
