"""Thermionic electrons scattered by rows of atoms in a crystal face.

Each row ``k`` contributes a path of length ``s_k = r_S + r_O + k d sin(theta)``
whose phase depends on the electron momentum through the free propagator.
Two assignments of the interfering paths are supported:

* equal production times (EPT): both paths start together, so the longer
  path needs the larger momentum;
* equal velocities (EV): both paths share a momentum and start at
  different times.

Only EPT reproduces the observed first maximum near 51 degrees.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import DomainError, KinematicState


class Hypothesis(str, enum.Enum):
    EQUAL_PRODUCTION_TIMES = "EPT"
    EQUAL_VELOCITIES = "EV"


class NoPhysicalMaximum(DomainError):
    """The requested diffraction maximum would need sin(theta) > 1."""


def rms_emission_velocity(temperature):
    """RMS thermal speed ``sqrt(3 k T / m)`` in units of c."""
    k = core.CODATA
    t = np.asarray(temperature, dtype=float)
    if np.any(t < 0):
        raise DomainError("temperature must be non-negative")
    return np.sqrt(3.0 * k.boltzmann_ev_per_k * t / k.electron_rest_energy_ev)[()]


def emission_kinetic_energy(temperature):
    """Mean thermal kinetic energy ``3 k T / 2`` in eV."""
    return 1.5 * core.CODATA.boltzmann_ev_per_k * np.asarray(temperature, dtype=float)[()]


def mean_momentum_from_kinetic(kinetic_energy):
    """Relativistic ``pc = sqrt(K^2 + 2 K m c^2)`` in eV."""
    k = np.asarray(kinetic_energy, dtype=float)
    if np.any(k < 0):
        raise DomainError("kinetic energy must be non-negative")
    m = core.CODATA.electron_rest_energy_ev
    return np.sqrt(k * k + 2.0 * k * m)[()]


def velocity_from_momentum(momentum):
    """``beta = pc / E`` for an electron."""
    p = np.asarray(momentum, dtype=float)
    return (p / np.hypot(core.CODATA.electron_rest_energy_ev, p))[()]


def thermal_momentum_spread(temperature):
    """Width ``sqrt(2 m k T)`` of the thermal momentum amplitude (eV/c)."""
    k = core.CODATA
    t = np.asarray(temperature, dtype=float)
    if np.any(t < 0):
        raise DomainError("temperature must be non-negative")
    return np.sqrt(2.0 * k.electron_rest_energy_ev * k.boltzmann_ev_per_k * t)[()]


@dataclass(frozen=True)
class MomentumDistribution:
    """Gaussian momentum amplitude with ``int |f|^2 dp = 1``."""

    mean: float
    width: float

    def __post_init__(self):
        if not self.mean > 0:
            raise DomainError("mean momentum must be positive")
        if self.width < 0:
            raise DomainError("width must be non-negative")

    @classmethod
    def from_temperature(cls, mean: float, temperature: float) -> "MomentumDistribution":
        return cls(mean, float(thermal_momentum_spread(temperature)))

    def amplitude(self, p):
        if self.width == 0:
            raise DomainError("amplitude undefined for zero width")
        u = (np.asarray(p, dtype=float) - self.mean) / self.width
        return (np.exp(-0.5 * u * u) / (math.pi ** 0.25 * math.sqrt(self.width)))[()]


@dataclass(frozen=True)
class ElectronGratingConfig:
    mean_momentum: float  # eV/c
    filament_temperature: float  # K
    row_spacing: float  # nm
    n_rows: int
    r_source: float  # nm
    r_observer: float  # nm
    hypothesis: Hypothesis = Hypothesis.EQUAL_PRODUCTION_TIMES
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "hypothesis", Hypothesis(self.hypothesis))
        if not self.mean_momentum > 0:
            raise DomainError("mean_momentum must be positive")
        if self.filament_temperature < 0:
            raise DomainError("filament_temperature must be non-negative")
        if not self.row_spacing > 0:
            raise DomainError("row_spacing must be positive")
        if int(self.n_rows) != self.n_rows or self.n_rows < 1:
            raise DomainError("n_rows must be a positive integer")
        if not (self.r_source > 0 and self.r_observer > 0):
            raise DomainError("distances must be positive")
        if not self.scale > 0:
            raise DomainError("scale must be positive")
        if self.momentum_spread / self.mean_momentum >= 0.2:
            raise DomainError("thermal spread too large: sigma_p/<p> must stay below 0.2")

    @classmethod
    def from_kinetic_energy(cls, kinetic_energy: float, **kwargs) -> "ElectronGratingConfig":
        return cls(mean_momentum=float(mean_momentum_from_kinetic(kinetic_energy)), **kwargs)

    @classmethod
    def reference(cls, **overrides) -> "ElectronGratingConfig":
        """54 eV electrons from a 2500 K filament on 0.215 nm rows."""
        params = dict(mean_momentum=float(mean_momentum_from_kinetic(54.0)),
                      filament_temperature=2500.0, row_spacing=0.215, n_rows=50,
                      r_source=2.7e7, r_observer=2.3e7,
                      hypothesis=Hypothesis.EQUAL_PRODUCTION_TIMES, scale=1.0)
        params.update(overrides)
        return cls(**params)

    @property
    def momentum_spread(self) -> float:
        return float(thermal_momentum_spread(self.filament_temperature))

    @property
    def momentum_distribution(self) -> MomentumDistribution:
        return MomentumDistribution(self.mean_momentum, self.momentum_spread)


def path_length(config: ElectronGratingConfig, k, theta):
    """Source -> row k -> observer distance (nm)."""
    return (config.r_source + config.r_observer
            + np.asarray(k) * config.row_spacing * np.sin(theta))[()]


def electron_path_phase(mean_momentum: float, mass: float, path_length):
    """Propagator phase for an electron of momentum ``mean_momentum`` (eV/c)."""
    return core.propagator_phase(KinematicState.from_momentum(mass, mean_momentum), path_length)


def _mass_term():
    m = core.CODATA.electron_rest_energy_ev
    return m * m / core.CODATA.hbar_c_ev_nm


def phase_increment(config: ElectronGratingConfig, theta):
    """Phase step between neighbouring rows after momentum averaging (rad)."""
    ds = config.row_spacing * np.sin(np.asarray(theta, dtype=float))
    if config.hypothesis is Hypothesis.EQUAL_PRODUCTION_TIMES:
        return (config.mean_momentum * ds / core.CODATA.hbar_c_ev_nm)[()]
    return (-_mass_term() * ds / config.mean_momentum)[()]


def averaged_phase(config: ElectronGratingConfig, k, theta):
    """Momentum-averaged phase of the path via row ``k``: ``k alpha_e + phi_0``."""
    base = config.r_source + config.r_observer
    if config.hypothesis is Hypothesis.EQUAL_PRODUCTION_TIMES:
        phi0 = config.mean_momentum * base / core.CODATA.hbar_c_ev_nm
    else:
        phi0 = -_mass_term() * base / config.mean_momentum
    return (np.asarray(k) * phase_increment(config, theta) + phi0)[()]


def momentum_difference(config: ElectronGratingConfig, theta):
    """Momentum difference between adjacent-row paths under equal start times.

    Non-relativistic equal-time scaling ``dp = <p> ds / s_mean`` with
    ``s_mean`` the mean length of the k=0 and k=1 paths.
    """
    ds = config.row_spacing * np.sin(np.asarray(theta, dtype=float))
    s_mean = config.r_source + config.r_observer + 0.5 * ds
    return (config.mean_momentum * ds / s_mean)[()]


def damping_exponents(config: ElectronGratingConfig, theta):
    """The two Gaussian exponents ``(dp/2 sigma)^2`` and ``(sigma ds/2 hbar)^2``."""
    sigma = config.momentum_spread
    ds = config.row_spacing * np.sin(np.asarray(theta, dtype=float))
    dp = np.asarray(momentum_difference(config, theta))
    if sigma > 0:
        first = (dp / (2.0 * sigma)) ** 2
    else:
        first = np.where(dp == 0, 0.0, np.inf)
    second = (sigma * ds / (2.0 * core.CODATA.hbar_c_ev_nm)) ** 2
    return np.asarray(first)[()], np.asarray(second)[()]


def interference_damping(config: ElectronGratingConfig, theta):
    """Damping ``D(theta)`` of the two-row interference term under EPT.

    With zero momentum spread the term vanishes for any nonzero momentum
    difference, which makes ``D = 0`` everywhere except ``theta = 0``.
    Under EV there is no damping and ``D = 1``.
    """
    if config.hypothesis is Hypothesis.EQUAL_VELOCITIES:
        return np.ones_like(np.asarray(theta, dtype=float))[()]
    first, second = damping_exponents(config, theta)
    return np.exp(-(np.asarray(first) + np.asarray(second)))[()]


def pair_overlap(config: ElectronGratingConfig, theta):
    """Closed-form momentum overlap of two adjacent-row paths (complex).

    ``D(theta) exp(i <p> ds / hbar)``; the real part times ``2 |A|^2`` is
    the interference term.
    """
    ds = config.row_spacing * np.sin(np.asarray(theta, dtype=float))
    phase = config.mean_momentum * ds / core.CODATA.hbar_c_ev_nm
    return (interference_damping(config, theta) * np.exp(1j * phase))[()]


def interference_term(config: ElectronGratingConfig, theta):
    """``2 Re[(A^k)* A^{k+1}]`` for two adjacent rows."""
    amp2 = config.scale ** 2
    damping = interference_damping(config, theta)
    return (2.0 * amp2 * damping * np.cos(phase_increment(config, theta)))[()]


def two_path_interference(config: ElectronGratingConfig, theta):
    """Detection probability for two adjacent rows, ``|A^k + A^{k+1}|^2``.

    Equals ``2 |A|^2 (1 + D cos alpha_e)``, between 0 and ``4 scale^2``.
    """
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) > 0.5 * math.pi + 1e-15):
        raise DomainError("theta must lie in [-pi/2, pi/2]")
    return (2.0 * config.scale ** 2 + interference_term(config, theta))[()]


def dg_pattern(config: ElectronGratingConfig, theta):
    """Angular distribution from ``N`` rows: ``|A|^2 sin^2(N a/2) / sin^2(a/2)``.

    Near ``a = 2 pi l`` the ratio is replaced by its expansion
    ``N^2 (1 - (N^2 - 1) x^2 / 3)`` in the offset ``x = a/2 - pi l``.
    """
    n = config.n_rows
    half = 0.5 * np.asarray(phase_increment(config, theta), dtype=float)
    half = np.atleast_1d(half)
    sn, _ = core.sin_cos_of_product(float(n), half)
    s1 = np.sin(half)
    near = np.abs(s1) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (sn / s1) ** 2
    if np.any(near):
        x = half[near] - math.pi * np.round(half[near] / math.pi)
        ratio[near] = n * n * (1.0 - (n * n - 1.0) * x * x / 3.0)
    out = config.scale ** 2 * ratio
    return out[0] if np.ndim(theta) == 0 else out


def first_maximum_angle(config: ElectronGratingConfig) -> float:
    """Angle of the first-order maximum, ``|alpha_e| = 2 pi``."""
    hc = core.CODATA.hc_ev_nm
    p, d = config.mean_momentum, config.row_spacing
    if config.hypothesis is Hypothesis.EQUAL_PRODUCTION_TIMES:
        s = hc / (p * d)
    else:
        m = core.CODATA.electron_rest_energy_ev
        s = hc * p / (m * m * d)
    if s > 1.0:
        raise NoPhysicalMaximum(f"first maximum needs sin(theta) = {s:.4g} > 1")
    return math.asin(s)


def maximum_angles(config: ElectronGratingConfig, l_max: int) -> list[float]:
    """Principal maxima of orders 1..l_max that lie below 90 degrees."""
    try:
        unit = math.sin(first_maximum_angle(config))
    except NoPhysicalMaximum:
        return []
    return [math.asin(l * unit) for l in range(1, l_max + 1) if l * unit <= 1.0]
