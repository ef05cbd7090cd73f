"""Purely spatial waves equivalent to the grating path amplitudes.

With the source fixed, every path amplitude depends on the observation
point only through its distance ``r_k``. It becomes a spherical wave
``U(r) = A/r exp(i kappa r - damping r)`` with ``kappa = 2 pi / lambda``.
For a stable source this solves the Helmholtz equation
``del^2 U + kappa^2 U = 0``, and Planck's constant enters only through
``lambda``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import core
from .core import DomainError


def de_broglie_wavelength(kind: str, value: float) -> float:
    """Wavelength (nm) from photon energy (eV) or electron momentum (eV/c).

    Both are ``2 pi hbar c / value``; ``kind`` only documents intent.
    """
    if kind not in ("photon", "electron"):
        raise ValueError(f"kind must be 'photon' or 'electron', got {kind!r}")
    if not value > 0:
        raise DomainError("energy or momentum must be positive")
    return core.CODATA.hc_ev_nm / value


@dataclass(frozen=True)
class SpatialWave:
    """Outgoing spherical wave ``A/r exp(i kappa r - damping r)``.

    ``damping`` is in 1/nm and may be negative. The photon wave derived
    from a decaying source has ``damping = -Gamma/(2 hbar c)``: paths
    reaching farther points left the atom earlier, when more of the
    state survived.
    """

    wavenumber: float  # 1/nm
    damping: float = 0.0  # 1/nm
    source_amplitude: complex = 1.0

    def __post_init__(self):
        if not self.wavenumber >= 0:
            raise DomainError("wavenumber must be non-negative")
        if not math.isfinite(self.damping):
            raise DomainError("damping must be finite")

    @classmethod
    def from_wavelength(cls, wavelength: float, **kwargs) -> "SpatialWave":
        if not wavelength > 0:
            raise DomainError("wavelength must be positive")
        return cls(2.0 * math.pi / wavelength, **kwargs)

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.wavenumber if self.wavenumber > 0 else math.inf

    def __call__(self, r, offset=0.0, far_field: bool = False):
        """Evaluate at ``r + offset``.

        The phase at the common base distance ``r`` is applied as one factor
        so that small ``offset`` differences keep full precision even when
        ``kappa r`` is ~1e7. ``far_field=True`` keeps ``1/r`` for the modulus
        instead of ``1/(r + offset)``.
        """
        r = np.asarray(r, dtype=float)
        offset = np.asarray(offset, dtype=float)
        dist = r + offset
        if np.any(dist <= 0):
            raise DomainError("distance must be positive")
        k = self.wavenumber + 1j * self.damping
        base = np.exp(1j * k * r)
        rel = np.exp(1j * k * offset)
        modulus = self.source_amplitude / (r if far_field else dist)
        return (modulus * base * rel)[()]


def photon_spatial_wave(config, source_amplitude: complex = 1.0) -> SpatialWave:
    """Wave equivalent to the photon grating amplitude at fixed source position."""
    kappa = config.photon_energy / core.CODATA.hbar_c_ev_nm
    damping = 0.0
    if math.isfinite(config.lifetime):
        width = core.CODATA.hbar_ev_ns / config.lifetime
        damping = -0.5 * width / core.CODATA.hbar_c_ev_nm
    return SpatialWave(kappa, damping, source_amplitude)


def electron_spatial_wave(config, source_amplitude: complex = 1.0) -> SpatialWave:
    """Matter wave ``A/r exp(i <p> r / hbar)``; defined for equal production times only.

    Under equal velocities the path amplitudes carry the mass phase
    ``-(mc)^2 s / (hbar p)`` instead, which has no such wave form.
    """
    from .electron_grating import Hypothesis

    if Hypothesis(config.hypothesis) is not Hypothesis.EQUAL_PRODUCTION_TIMES:
        raise DomainError(
            "the spatial matter wave exists only for equal production times (EPT)"
        )
    return SpatialWave(config.mean_momentum / core.CODATA.hbar_c_ev_nm, 0.0, source_amplitude)


def photon_wave(config, r, **kwargs):
    return photon_spatial_wave(config)(r, **kwargs)


def electron_wave(config, r, **kwargs):
    return electron_spatial_wave(config)(r, **kwargs)


def _radial_second_derivative(g, h):
    return (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h)


def helmholtz_residual(wave: SpatialWave, r: float, step: float | None = None,
                       richardson: bool = True) -> float:
    """Normalised Helmholtz residual of a spherically symmetric wave.

    For ``U(r)`` depending on ``r`` only, ``del^2 U = (r U)'' / r``. The
    second derivative of ``r U`` is taken by central differences about
    ``r`` (the base phase is factored out), optionally with one Richardson
    step ``(4 D(h/2) - D(h)) / 3``. The result
    ``|del^2 U + kappa^2 U| / (kappa^2 |U|)`` is zero for an exact solution
    up to truncation and rounding; for ``kappa = 0`` it is normalised by
    ``|U| / r^2`` instead.

    Parameters
    ----------
    step : float, optional
        Stencil spacing in nm. Default ``min(1e-4 r, 1e-3 / kappa)``, so the
        stencil also resolves the wavelength.
    """
    if not r > 0:
        raise DomainError("r must be positive")
    kappa = wave.wavenumber
    if step is None:
        step = r * 1e-4
        if kappa > 0:
            step = min(step, 1e-3 / kappa)
    if not step > 0:
        raise DomainError("step must be positive")
    if r <= 2.0 * step:
        raise DomainError("stencil leaves the physical domain: need r > 2 step")

    centre = complex(wave(r))

    def g(offset):
        # (r + offset) U(r + offset), relative to U(r); offsets stay exact
        return (r + offset) * complex(wave(r, offset)) / centre

    d2 = _radial_second_derivative(g, step)
    if richardson:
        d2_half = _radial_second_derivative(g, 0.5 * step)
        d2 = (4.0 * d2_half - d2) / 3.0
    u = g(0.0) / r
    laplacian = d2 / r
    if kappa > 0:
        return abs(laplacian + kappa * kappa * u) / (kappa * kappa * abs(u))
    return abs(laplacian) / (abs(u) / (r * r))


def helmholtz_damping_residual(wave: SpatialWave) -> float:
    """Analytic normalised residual for ``U = A/r exp((i kappa - gamma) r)``.

    ``(r U)'' / r = (i kappa - gamma)^2 U``, so the residual is
    ``|(i kappa - gamma)^2 + kappa^2| / kappa^2 = |gamma^2 - 2 i kappa gamma| / kappa^2``.
    """
    kappa, gamma = wave.wavenumber, wave.damping
    return abs(gamma * gamma - 2j * kappa * gamma) / (kappa * kappa)


def _gauss_legendre_strip(func, width: float, wavenumber_along: float, nodes: int = 24):
    # integrate func over [0, width], one panel per half period of the phase
    panels = max(1, int(math.ceil(abs(wavenumber_along) * width / math.pi)))
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(0.0, width, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return np.dot(wts, func(pts))


def grating_superposition(wave: SpatialWave, r_observer: float, pitch: float, n: int,
                          theta, strip_width: float | None = None,
                          exact_modulus: bool = False):
    """Classical superposition ``sum_k U(r_k)`` with ``r_k = r_O + k d sin(theta)``.

    With ``strip_width`` each strip is a continuum of sources over
    ``[k d, k d + b]``, integrated by Gauss-Legendre panels. The default
    uses the far-field ``1/r_O`` modulus; ``exact_modulus=True`` keeps
    ``1/r_k``. Returns the complex amplitude for each ``theta``.
    """
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    thetas = np.atleast_1d(np.asarray(theta, dtype=float))
    k = np.arange(n, dtype=float)
    out = np.empty(thetas.shape, dtype=complex)
    far = not exact_modulus
    for i, th in enumerate(thetas):
        s = math.sin(th)
        offsets = k * pitch * s
        if strip_width is None:
            terms = wave(r_observer, offsets, far_field=far) * r_observer
        else:
            along = wave.wavenumber * s

            def strip(x, s=s):
                return wave(r_observer, offsets[:, None] + x[None, :] * s, far_field=far) * r_observer

            terms = _gauss_legendre_strip(lambda x: strip(x).T, strip_width, along).ravel()
        # rescale by 1/r_O afterwards to keep the sum well scaled
        total = math.fsum(np.real(terms)) + 1j * math.fsum(np.imag(terms))
        out[i] = total / r_observer
    return complex(out[0]) if np.ndim(theta) == 0 else out


def superposition_intensity(wave: SpatialWave, r_observer: float, pitch: float, n: int,
                            theta, strip_width: float | None = None,
                            exact_modulus: bool = False):
    amp = grating_superposition(wave, r_observer, pitch, n, theta, strip_width, exact_modulus)
    return np.abs(amp) ** 2
