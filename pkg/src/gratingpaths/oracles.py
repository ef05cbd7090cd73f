"""Brute-force reference computations.

Nothing here calls into the closed-form modules; these routines exist so
that closed forms can be checked against something computed a different
way (explicit summation, quadrature, finite differences).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np
from scipy import integrate


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    low: float
    high: float
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if not self.high > self.low:
            raise ValueError("empty integration range")


class QuadratureResult(NamedTuple):
    value: complex
    error: float


def direct_complex_sum(terms: Iterable[complex]) -> complex:
    """Exactly-rounded sum of complex terms (order independent)."""
    terms = np.asarray(list(terms) if not isinstance(terms, np.ndarray) else terms,
                       dtype=complex)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def direct_geometric_sum(alpha: complex, n_paths: int) -> complex:
    """Term-by-term ``sum_k exp(i k alpha)`` carried in extended precision.

    Each term is formed as ``exp(i j alpha) exp(i m l alpha)`` with
    ``k = m l + j``, so only about ``2 sqrt(N)`` extended-precision
    exponentials are needed; every one of the ``N`` terms is still summed.
    """
    if n_paths < 1:
        raise ValueError("need at least one term")
    m = max(1, math.isqrt(n_paths))
    a = np.longdouble(alpha.real)
    b = np.longdouble(alpha.imag)

    def expi(k):
        return np.exp(-k * b) * np.cos(k * a), np.exp(-k * b) * np.sin(k * a)

    inner_re, inner_im = expi(np.arange(m, dtype=np.longdouble))
    outer_re, outer_im = expi(m * np.arange(-(-n_paths // m), dtype=np.longdouble))
    re = outer_re[:, None] * inner_re[None, :] - outer_im[:, None] * inner_im[None, :]
    im = outer_re[:, None] * inner_im[None, :] + outer_im[:, None] * inner_re[None, :]
    # drop the padding beyond n_paths - 1
    re, im = re.ravel()[:n_paths], im.ravel()[:n_paths]
    return complex(float(np.sum(re)), float(np.sum(im)))


def _quad_real(func, low, high, epsabs, epsrel, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, *_ = integrate.quad(
            func, low, high, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1
        )
    return value, err


def adaptive_integral(f: Callable[[float], complex], spec: QuadratureSpec,
                      period: float | None = None) -> QuadratureResult:
    """Integrate a complex function of one real variable.

    Parameters
    ----------
    f : callable
        Scalar integrand, may return complex values.
    spec : QuadratureSpec
        Range and tolerances.
    period : float, optional
        Oscillation period of the integrand if known. The range is then cut
        into panels of roughly one period each before adaptive refinement.

    Returns
    -------
    QuadratureResult
        Estimate and an error bound.

    Raises
    ------
    QuadratureError
        If the combined error bound exceeds
        ``max(abs_tol, rel_tol * |estimate|)``.
    """
    low, high = spec.low, spec.high
    if period is not None and period > 0:
        n_panels = int(min(max(1, math.ceil((high - low) / period)), 100_000))
    else:
        n_panels = 1
    edges = np.linspace(low, high, n_panels + 1)

    epsabs = spec.abs_tol / n_panels
    total = 0j
    error = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        re, re_err = _quad_real(lambda x: complex(f(x)).real, lo, hi, epsabs, spec.rel_tol,
                                spec.max_subdivisions)
        im, im_err = _quad_real(lambda x: complex(f(x)).imag, lo, hi, epsabs, spec.rel_tol,
                                spec.max_subdivisions)
        total += complex(re, im)
        error += math.hypot(re_err, im_err)

    allowed = max(spec.abs_tol, spec.rel_tol * abs(total))
    if not error <= allowed:
        raise QuadratureError(
            f"quadrature error bound {error:.3g} exceeds tolerance {allowed:.3g}"
        )
    return QuadratureResult(total, error)


def nested_integral(f: Callable[[float, float], complex], outer: QuadratureSpec,
                    inner: Callable[[float], QuadratureSpec]) -> QuadratureResult:
    """Iterated 2-D integral ``int dx int dy f(x, y)`` with x-dependent inner range."""
    inner_errors = []

    def g(x):
        res = adaptive_integral(lambda y: f(x, y), inner(x))
        inner_errors.append(res.error)
        return res.value

    res = adaptive_integral(g, outer)
    width = outer.high - outer.low
    return QuadratureResult(res.value, res.error + width * max(inner_errors, default=0.0))


def gaussian_pair_integral(delta_s: float, dist, delta_p: float, hbar_c: float,
                           spec: QuadratureSpec | None = None) -> complex:
    """Numerically integrate the two-path momentum overlap.

    Evaluates

    .. math::

        \\frac{1}{\\sqrt{\\pi}\\sigma}\\int e^{i(p-\\Delta p/2)\\Delta s/\\hbar}
        e^{-(p-\\langle p\\rangle)^2/2\\sigma^2}
        e^{-(p-\\Delta p-\\langle p\\rangle)^2/2\\sigma^2}\\,dp

    over ten widths either side of the Gaussian product's centre.

    Parameters
    ----------
    delta_s : float
        Path-length difference (nm).
    dist : MomentumDistribution
        Anything with ``mean`` and ``width`` attributes in eV/c.
    delta_p : float
        Momentum difference between the two paths (eV/c).
    hbar_c : float
        hbar*c in eV nm.
    """
    mean, sigma = float(dist.mean), float(dist.width)
    if sigma <= 0:
        raise ValueError("momentum width must be positive for the numeric overlap")
    centre = mean + 0.5 * delta_p
    norm = 1.0 / (math.sqrt(math.pi) * sigma)
    k = delta_s / hbar_c

    def integrand(p):
        u1 = (p - mean) / sigma
        u2 = (p - delta_p - mean) / sigma
        return norm * np.exp(1j * (p - 0.5 * delta_p) * k - 0.5 * (u1 * u1 + u2 * u2))

    if spec is None:
        spec = QuadratureSpec(centre - 10 * sigma, centre + 10 * sigma,
                              abs_tol=1e-13, rel_tol=1e-10)
    period = 2 * math.pi / abs(k) if k != 0 else None
    return adaptive_integral(integrand, spec, period=period).value


def central_difference(f: Callable[[float], float], x: float, step: float) -> float:
    """Fourth-order central difference estimate of f'(x)."""
    h = step
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def convergence_order_fit(samples: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of ``log(error)`` against ``log(scale)``.

    Needs at least three samples whose scales span at least a factor of
    two; errors must be positive.
    """
    if len(samples) < 3:
        raise ValueError("need at least three (scale, error) samples")
    scales = np.array([s for s, _ in samples], dtype=float)
    errors = np.array([e for _, e in samples], dtype=float)
    if np.any(scales <= 0) or np.any(errors <= 0):
        raise ValueError("scales and errors must be positive")
    if scales.max() / scales.min() < 2.0:
        raise ValueError("scales must span at least a factor of two")
    slope, _ = np.polyfit(np.log(scales), np.log(errors), 1)
    return float(slope)
