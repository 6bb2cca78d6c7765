"""Fractional Fourier basis, coefficient computation, and partial sums.

The basis functions on [-1, 1] are chirp-modulated complex exponentials

    phi_k(x) = exp(-i x^2 cot(alpha) / 2) * exp(i k pi x),    |k| <= N,

for an angle 0 < alpha <= pi/2; alpha = pi/2 zeroes the chirp and recovers
the classical Fourier system.  Coefficients are the projections
c_k = (1/2) int f conj(phi_k) dx, evaluated by Gauss-Legendre quadrature —
split at known discontinuities so no panel ever integrates across a jump —
and the truncated expansion is evaluated as sum_k c_k phi_k(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import AffineMap, gauss_legendre, map_from_unit
from .validation import check_alpha, check_positive_int

__all__ = [
    "FrftConfig",
    "FrftSpectrum",
    "basis_eval",
    "compute_spectrum",
    "partial_sum",
    "default_quad_order",
]

# below this angle distance from pi/2 the chirp exponent is replaced by
# exactly zero: the classical series is the correct limit and evaluating
# cot this close to its zero adds nothing but rounding noise
_CLASSICAL_ANGLE_TOL = 1e-12


def default_quad_order(big_n: int) -> int:
    """Coefficient quadrature order used when none is supplied.

    The integrand oscillates with wavenumber up to N pi plus the chirp, so
    the order scales with N with a generous floor.
    """
    return max(400, 6 * big_n)


def cot_angle(alpha: float) -> float:
    """cot(alpha) with the classical limit substituted exactly at alpha = pi/2."""
    alpha = check_alpha(alpha)
    if abs(alpha - math.pi / 2) <= _CLASSICAL_ANGLE_TOL:
        return 0.0
    return 1.0 / math.tan(alpha)


@dataclass(frozen=True)
class FrftConfig:
    """Angle and truncation order of a fractional Fourier expansion.

    Attributes
    ----------
    alpha : float
        Chirp angle in (0, pi/2]; pi/2 is the classical series.
    big_n : int
        Truncation order N >= 1; modes k = -N..N are kept.
    """

    alpha: float
    big_n: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(
            self, "big_n", check_positive_int(self.big_n, "big_n")
        )

    @property
    def cot_alpha(self) -> float:
        return cot_angle(self.alpha)

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.big_n, self.big_n + 1)


@dataclass(frozen=True)
class FrftSpectrum:
    """Coefficients c_k, k = -N..N, of one expansion."""

    config: FrftConfig
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        expected = 2 * self.config.big_n + 1
        if coeffs.shape != (expected,):
            raise ValueError(
                f"need {expected} coefficients for N={self.config.big_n}, "
                f"got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("spectrum coefficients must be finite")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    def coeff(self, k: int) -> complex:
        """The coefficient c_k, addressed by signed mode number."""
        if abs(k) > self.config.big_n:
            raise ValueError(f"|k| must be <= {self.config.big_n}, got {k}")
        return complex(self.coeffs[k + self.config.big_n])


def _check_points(x):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.ndim(x) == 0
    if arr.size and np.max(np.abs(arr)) > 1.0 + 1e-9:
        raise ValueError("evaluation points must lie in [-1, 1]")
    return arr, scalar


def basis_eval(config: FrftConfig, k: int, x):
    """The basis function phi_k at ``x``; unimodular for every argument."""
    if abs(k) > config.big_n:
        raise ValueError(f"|k| must be <= {config.big_n}, got {k}")
    x, scalar = _check_points(x)
    values = np.exp(
        -0.5j * config.cot_alpha * x * x + 1j * k * math.pi * x
    )
    return complex(values[0]) if scalar else values


def _quadrature_points(quad_order: int, breakpoints):
    """Gauss-Legendre nodes/weights on [-1, 1], split at the breakpoints.

    One full-order panel per smooth segment, so no panel integrates
    across a jump.
    """
    rule = gauss_legendre(quad_order)
    edges = [-1.0, *sorted(float(b) for b in breakpoints), 1.0]
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        segment = AffineMap(a, b)
        nodes.append(map_from_unit(segment, rule.nodes))
        weights.append(segment.half_length * rule.weights)
    return np.concatenate(nodes), np.concatenate(weights)


def compute_spectrum(
    config: FrftConfig,
    f,
    quad_order: int | None = None,
    breakpoints=(),
) -> FrftSpectrum:
    """Project ``f`` on the basis: c_k = (1/2) sum_q w_q f(x_q) conj(phi_k(x_q)).

    Parameters
    ----------
    config : FrftConfig
    f : callable
        Bounded evaluator on [-1, 1]; vectorized over a point array.
    quad_order : int, optional
        Gauss-Legendre order per smooth segment; defaults to
        ``max(400, 6 N)`` and must be at least ``2 (N + 2)`` to resolve
        the fastest oscillation.
    breakpoints : sequence of float, optional
        Interior discontinuity locations of ``f``; the coefficient
        integrals are split there so quadrature panels never straddle
        a jump.
    """
    if quad_order is None:
        quad_order = default_quad_order(config.big_n)
    quad_order = check_positive_int(quad_order, "quad_order")
    floor = 2 * (config.big_n + 2)
    if quad_order < floor:
        raise ValueError(
            f"quad_order must be >= 2 (N + 2) = {floor}, got {quad_order}"
        )
    x, w = _quadrature_points(quad_order, breakpoints)
    values = np.asarray(f(x))
    # conj(phi_k) = exp(+i x^2 cot/2) exp(-i k pi x)
    chirped = w * values * np.exp(0.5j * config.cot_alpha * x * x)
    phases = np.exp(-1j * math.pi * np.outer(config.modes, x))
    coeffs = 0.5 * (phases @ chirped)
    return FrftSpectrum(config, coeffs)


def partial_sum(spectrum: FrftSpectrum, x):
    """Evaluate the truncated expansion sum_k c_k phi_k at ``x``.

    Complex-valued for alpha < pi/2: the chirp renders each basis function
    complex, and truncation error leaks into both components.
    """
    x, scalar = _check_points(x)
    config = spectrum.config
    phases = np.exp(1j * math.pi * np.outer(x, config.modes))
    values = (phases @ spectrum.coeffs) * np.exp(
        -0.5j * config.cot_alpha * x * x
    )
    return complex(values[0]) if scalar else values
