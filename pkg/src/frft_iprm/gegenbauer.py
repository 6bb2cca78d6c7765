"""Gegenbauer polynomials, normalization constants, and Gram matrices.

The reconstruction space on each smooth piece is spanned by Gegenbauer
polynomials C_l^lam, orthogonal on [-1, 1] under the weight
(1 - x^2)^(lam - 1/2).  This module evaluates them by the stable upward
three-term recurrence, provides the weighted normalization constants
h_l^lam and their consecutive ratio (whose position relative to 1 decides
whether the reconstruction operator's smallest singular value collapses,
stays flat, or its largest blows up), assembles the *unweighted* Gram
matrix that governs conditioning independently of the chirp angle, and
computes the two diagnostic sums appearing in the reconstruction error
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gamma as _gamma

from .numerics import gauss_legendre
from .validation import check_positive_int

__all__ = [
    "GegenbauerBasis",
    "GramMatrix",
    "ErrorBoundDiagnostics",
    "LambdaDomainError",
    "gram_matrix",
    "diagnostics",
    "min_h_constant",
]


class LambdaDomainError(ValueError):
    """The weight exponent lies outside the domain an operation requires.

    Raised by operations whose underlying bound is only proved for
    lam >= 1/2 (the Gram lower bound), as distinct from plain
    out-of-domain arguments.
    """


@dataclass(frozen=True)
class GegenbauerBasis:
    """The family C_0^lam, ..., C_m^lam on [-1, 1].

    Attributes
    ----------
    lam : float
        Weight exponent; must satisfy lam > -1/2 and lam != 0.
    max_degree : int
        Highest degree m >= 0 handled by this basis.
    """

    lam: float
    max_degree: int

    def __post_init__(self):
        lam = float(self.lam)
        if not math.isfinite(lam) or lam <= -0.5 or lam == 0.0:
            raise ValueError(
                f"lam must satisfy lam > -1/2 and lam != 0, got {lam}"
            )
        m = check_positive_int(self.max_degree, "max_degree", minimum=0)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "max_degree", m)

    def _check_degree(self, l: int) -> int:
        l = check_positive_int(l, "l", minimum=0)
        if l > self.max_degree:
            raise ValueError(
                f"degree {l} exceeds max_degree {self.max_degree}"
            )
        return l

    def eval(self, l: int, x):
        """Evaluate C_l^lam at ``x`` (scalar or array with |x| <= 1).

        Uses the upward recurrence
        ``(l+1) C_{l+1} = 2 (l+lam) x C_l - (l+2lam-1) C_{l-1}``
        with ``C_0 = 1`` and ``C_1 = 2 lam x``.
        """
        l = self._check_degree(l)
        x, scalar = _check_unit_points(x)
        values = _eval_matrix(self.lam, l, x)[l]
        return float(values[0]) if scalar else values

    def eval_all(self, x) -> np.ndarray:
        """Evaluate every degree 0..max_degree at ``x``; shape (m+1, len(x))."""
        x, _ = _check_unit_points(x)
        return _eval_matrix(self.lam, self.max_degree, x)

    def boundary_value(self, l: int) -> float:
        """C_l^lam(1) = Gamma(l+2 lam) / (l! Gamma(2 lam)).

        Computed as the running product prod_{j<l} (j + 2 lam)/(j + 1),
        which cannot overflow for the degrees handled here.
        """
        l = self._check_degree(l)
        value = 1.0
        for j in range(l):
            value *= (j + 2.0 * self.lam) / (j + 1.0)
        return value

    def h_constant(self, l: int) -> float:
        """Weighted norm h_l^lam = int (1-x^2)^{lam-1/2} [C_l^lam]^2 dx.

        Evaluated via the closed form
        ``sqrt(pi) C_l^lam(1) Gamma(lam+1/2) / (Gamma(lam) (l+lam))``,
        valid for lam > 0.
        """
        if self.lam <= 0.0:
            raise ValueError(f"h_constant requires lam > 0, got {self.lam}")
        l = self._check_degree(l)
        return (
            math.sqrt(math.pi)
            * self.boundary_value(l)
            * _gamma(self.lam + 0.5)
            / (_gamma(self.lam) * (l + self.lam))
        )

    def h_ratio(self, l: int) -> float:
        """The consecutive ratio h_{l+1}^lam / h_l^lam in closed form.

        Equals ``(l+2 lam)(l+lam) / ((l+1)(l+1+lam))``: below 1 for
        lam < 1 (norms collapse with degree), exactly 1 for lam = 1, and
        above 1 for lam > 1 (norms grow).
        """
        l = check_positive_int(l, "l", minimum=0)
        lam = self.lam
        return ((l + 2.0 * lam) * (l + lam)) / ((l + 1.0) * (l + 1.0 + lam))


@dataclass(frozen=True)
class GramMatrix:
    """Unweighted Gram matrix Gr_{l,j} = int_{-1}^{1} C_l^lam C_j^lam dx.

    Symmetric positive semi-definite, zero on odd-parity entries, and by
    construction independent of any chirp angle: the chirp factor is
    unimodular and cancels in these products.
    """

    entries: np.ndarray
    lam: float
    m: int

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        n = self.m + 1
        if entries.shape != (n, n):
            raise ValueError(
                f"entries must be {(n, n)} for m={self.m}, got {entries.shape}"
            )
        if not np.all(np.isfinite(entries)):
            raise ValueError("Gram entries must be finite")
        scale = max(1.0, float(np.max(np.abs(entries))))
        if np.max(np.abs(entries - entries.T)) > 1e-13 * scale:
            raise ValueError("Gram matrix must be symmetric")
        l = np.arange(n)
        odd = (l[:, None] + l[None, :]) % 2 == 1
        if np.max(np.abs(entries[odd]), initial=0.0) > 1e-13 * scale:
            raise ValueError("odd-parity Gram entries must vanish")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class ErrorBoundDiagnostics:
    """The two m-dependent factors in the reconstruction error bound.

    Attributes
    ----------
    psi_m : float
        ``sum_{l<=m} C_l^lam(1)^2 / h_l^lam``; multiplies the spectral
        tail term.
    phi_m : float
        ``sqrt(sum_{l<=m} C_l^lam(1)^2)``; multiplies the best-approximation
        term.
    """

    psi_m: float
    phi_m: float

    def __post_init__(self):
        if not (self.psi_m > 0.0 and self.phi_m > 0.0):
            raise ValueError("diagnostic factors must be strictly positive")


def _check_unit_points(x):
    """Coerce evaluation points, requiring |x| <= 1 up to rounding slack."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    scalar = np.ndim(x) == 0
    if arr.size and np.max(np.abs(arr)) > 1.0 + 1e-9:
        raise ValueError("evaluation points must lie in [-1, 1]")
    return arr, scalar


def _eval_matrix(lam: float, max_degree: int, x: np.ndarray) -> np.ndarray:
    """All rows C_0..C_max_degree at the points ``x``; shape (max_degree+1, len(x))."""
    out = np.empty((max_degree + 1, len(x)))
    out[0] = 1.0
    if max_degree >= 1:
        out[1] = 2.0 * lam * x
    for l in range(1, max_degree):
        out[l + 1] = (
            2.0 * (l + lam) * x * out[l] - (l + 2.0 * lam - 1.0) * out[l - 1]
        ) / (l + 1.0)
    return out


@lru_cache(maxsize=None)
def _gram_cached(lam: float, m: int) -> GramMatrix:
    rule = gauss_legendre(m + 16)
    positive = rule.nodes > 0.0
    x_pos = rule.nodes[positive]
    w_pos = rule.weights[positive]
    v_pos = _eval_matrix(lam, m, x_pos)
    half = (v_pos * w_pos) @ v_pos.T
    if rule.order % 2 == 1:
        # center node: C_l(0) vanishes exactly for odd l, so parity survives
        v0 = _eval_matrix(lam, m, np.zeros(1))[:, 0]
        half += 0.5 * rule.weights[rule.order // 2] * np.outer(v0, v0)
    # the integrand is odd for l+j odd, so those integrals vanish identically;
    # fold the mirrored half-interval in through the parity mask
    l = np.arange(m + 1)
    even = (l[:, None] + l[None, :]) % 2 == 0
    entries = np.where(even, half + half.T, 0.0)
    return GramMatrix(entries, lam, m)


def gram_matrix(basis: GegenbauerBasis) -> GramMatrix:
    """Unweighted Gram matrix of C_0..C_m by Gauss-Legendre quadrature.

    The rule order m+16 integrates the degree <= 2m polynomial entries
    exactly; mirrored node pairs are folded analytically so odd-parity
    entries are exactly zero and the matrix is exactly symmetric.
    """
    return _gram_cached(basis.lam, basis.max_degree)


def diagnostics(basis: GegenbauerBasis) -> ErrorBoundDiagnostics:
    """Exact finite sums Psi_m and Phi_m from boundary values and norms."""
    if basis.lam <= 0.0:
        raise ValueError(f"diagnostics requires lam > 0, got {basis.lam}")
    boundary_sq = np.array(
        [basis.boundary_value(l) ** 2 for l in range(basis.max_degree + 1)]
    )
    h = np.array([basis.h_constant(l) for l in range(basis.max_degree + 1)])
    return ErrorBoundDiagnostics(
        psi_m=float(np.sum(boundary_sq / h)),
        phi_m=float(math.sqrt(np.sum(boundary_sq))),
    )


def min_h_constant(basis: GegenbauerBasis) -> float:
    """min_l h_l^lam for l <= m, the certified lower bound on lambda_min(Gr).

    The bound is only established for lam >= 1/2; smaller exponents raise
    LambdaDomainError rather than returning a number without a guarantee.
    """
    if basis.lam < 0.5:
        raise LambdaDomainError(
            f"the Gram lower bound requires lam >= 1/2, got {basis.lam}"
        )
    return min(basis.h_constant(l) for l in range(basis.max_degree + 1))
