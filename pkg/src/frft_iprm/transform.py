"""The fractional transformation matrix and the direct-projection matrix.

Entry (k, l) of the transformation matrix is the fractional Fourier
coefficient of the l-th Gegenbauer polynomial,

    W_{k,l} = (1/2) int_{-1}^{1} C_l(x) e^{i x^2 cot(alpha)/2} e^{-i k pi x} dx,

so that solving W ghat = c in the least-squares sense recovers the
polynomial whose spectrum matches the data.  Degrees 0 and 1 admit closed
forms through the complex error function (completing the square in the
chirped Gaussian); all higher degrees use Gauss-Legendre quadrature, the
recurrence being used only to evaluate C_l stably — never to propagate
W itself, which is numerically unreliable for large l.

The direct-projection matrix instead carries the weighted projections
D_{k,l} = (1/h_l) int (1-x^2)^(lam-1/2) phi_k(x) C_l(x) dx, mapping a
spectrum straight to Gegenbauer coefficients of the partial sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .frft import cot_angle
from .gegenbauer import GegenbauerBasis
from .numerics import QuadratureRule, complex_erf, gauss_legendre
from .validation import check_positive_int

__all__ = [
    "TransformMatrix",
    "DirectMatrix",
    "w_k0",
    "w_k0_classical",
    "w_k1",
    "w_k1_classical",
    "w_kl_quadrature",
    "assemble",
    "assemble_direct",
    "assemble_cached",
    "assemble_direct_cached",
    "default_matrix_quad_order",
]

# below this chirp size the closed forms for degrees 0-1 become 0/0 shapes
# (beta -> 0 against a diverging prefactor); the classical columns are the
# correct limit and are used instead
_NEAR_CLASSICAL_COT = 1e-8

# pi to extended precision for reducing the quadratic phase modulo 2 pi;
# the phase k^2 pi^2 / (2 cot) reaches ~1e6 radians at the sweep extremes,
# where double precision would lose six digits of it
_PI_LD = np.longdouble("3.14159265358979323846264338327950288420")


def default_matrix_quad_order(big_n: int) -> int:
    """Quadrature order used for matrix columns l >= 2 when none is given."""
    return max(400, 6 * big_n)


@dataclass(frozen=True)
class TransformMatrix:
    """W with rows k = -N..N and columns l = 0..m, plus its provenance."""

    entries: np.ndarray
    alpha: float
    lam: float
    big_n: int
    m: int
    quad_order: int

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        shape = (2 * self.big_n + 1, self.m + 1)
        if entries.shape != shape:
            raise ValueError(f"entries must have shape {shape}, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("matrix entries must be finite")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    def entry(self, k: int, l: int) -> complex:
        """Entry addressed by signed mode k and degree l."""
        return complex(self.entries[k + self.big_n, l])


@dataclass(frozen=True)
class DirectMatrix(TransformMatrix):
    """Weighted-projection matrix D with the same layout and provenance."""


def _check_lam(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= -0.5 or lam == 0.0:
        raise ValueError(f"lam must satisfy lam > -1/2 and lam != 0, got {lam}")
    return lam


def _check_open_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < math.pi / 2:
        raise ValueError(
            f"closed-form chirp moments require 0 < alpha < pi/2 strictly, "
            f"got {alpha}; use the classical branch at pi/2"
        )
    return alpha


def _quadratic_phase(k: int, cot: float) -> float:
    """k^2 pi^2 / (2 cot), reduced modulo 2 pi in extended precision."""
    theta = (
        np.longdouble(k) * np.longdouble(k) * _PI_LD * _PI_LD
        / (2.0 * np.longdouble(cot))
    )
    return float(np.mod(theta, 2.0 * _PI_LD))


def w_k0(alpha: float, k: int) -> complex:
    """Closed-form W_{k,0}: the chirped Gaussian moment via the error function.

    Completing the square in the exponent gives, with c = cot(alpha) and
    beta = (1-i) sqrt(c)/2,

        W_{k,0} = ((1+i) sqrt(pi) / (4 sqrt(c)))
                  * exp(-i k^2 pi^2 / (2c))
                  * [erf(beta (1 - k pi/c)) - erf(beta (-1 - k pi/c))].

    Valid strictly inside (0, pi/2); the classical angle has its own branch.
    """
    alpha = _check_open_alpha(alpha)
    cot = 1.0 / math.tan(alpha)
    beta = (1.0 - 1.0j) * math.sqrt(cot) / 2.0
    shift = k * math.pi / cot
    theta = _quadratic_phase(k, cot)
    phase = complex(math.cos(theta), -math.sin(theta))
    prefactor = (1.0 + 1.0j) * math.sqrt(math.pi) / (4.0 * math.sqrt(cot))
    return (
        prefactor
        * phase
        * (complex_erf(beta * (1.0 - shift)) - complex_erf(beta * (-1.0 - shift)))
    )


def w_k0_classical(k: int) -> complex:
    """W_{k,0} at alpha = pi/2: (1/2) int e^{-i k pi x} dx = delta_{k,0} exactly."""
    return 1.0 + 0.0j if int(k) == 0 else 0.0 + 0.0j


def w_k1(alpha: float, lam: float, k: int) -> complex:
    """Closed-form W_{k,1} = (2 lam k pi / cot(alpha)) * W_{k,0}.

    Integrating C_1 = 2 lam x against the chirp by parts leaves only this
    multiple of the degree-0 moment: the boundary term carries sin(k pi),
    which vanishes for every integer k.
    """
    alpha = _check_open_alpha(alpha)
    lam = _check_lam(lam)
    if int(k) == 0:
        return 0.0 + 0.0j
    cot = 1.0 / math.tan(alpha)
    return (2.0 * lam * k * math.pi / cot) * w_k0(alpha, k)


def w_k1_classical(lam: float, k: int) -> complex:
    """W_{k,1} at alpha = pi/2: lam int x e^{-i k pi x} dx = 2 i lam (-1)^k / (k pi)."""
    lam = _check_lam(lam)
    k = int(k)
    if k == 0:
        return 0.0 + 0.0j
    return 2.0j * lam * (-1.0) ** k / (k * math.pi)


def w_kl_quadrature(
    alpha: float,
    basis: GegenbauerBasis,
    k: int,
    l: int,
    rule: QuadratureRule,
) -> complex:
    """Entry W_{k,l} by direct Gauss-Legendre quadrature.

    Requires a rule of order at least max(400, 6|k|) so the oscillation
    of wavenumber k pi plus the chirp is fully resolved.
    """
    l = check_positive_int(l, "l", minimum=0)
    k = int(k)
    floor = max(400, 6 * abs(k))
    if rule.order < floor:
        raise ValueError(
            f"insufficient quadrature order {rule.order} for |k|={abs(k)}; "
            f"need at least {floor}"
        )
    cot = cot_angle(alpha)
    x = rule.nodes
    values = basis.eval(l, x) * np.exp(0.5j * cot * x * x - 1j * k * math.pi * x)
    return 0.5 * complex(values @ rule.weights)


def _validate_assembly(basis: GegenbauerBasis, big_n: int, rule):
    big_n = check_positive_int(big_n, "big_n")
    if basis.max_degree > 2 * big_n:
        raise ValueError(
            f"the system needs m <= 2N unknowns, got m={basis.max_degree} "
            f"with N={big_n}"
        )
    if rule is None:
        rule = gauss_legendre(default_matrix_quad_order(big_n))
    if rule.order < max(400, 6 * big_n):
        raise ValueError(
            f"assembly rule order {rule.order} below max(400, 6N) = "
            f"{max(400, 6 * big_n)}"
        )
    return big_n, rule


def _quadrature_block(alpha, basis, big_n, rule, conjugate_basis, weighted):
    """Shared quadrature core: rows k = -N..N of either matrix kind."""
    cot = cot_angle(alpha)
    x, w = rule.nodes, rule.weights
    values = basis.eval_all(x)
    modes = np.arange(-big_n, big_n + 1)
    if conjugate_basis:
        # conj(phi_k) up to the Gegenbauer factor: e^{+i x^2 c/2} e^{-i k pi x}
        chirp = np.exp(0.5j * cot * x * x)
        phases = np.exp(-1j * math.pi * np.outer(modes, x))
    else:
        chirp = np.exp(-0.5j * cot * x * x)
        phases = np.exp(1j * math.pi * np.outer(modes, x))
    if weighted:
        chirp = chirp * (1.0 - x * x) ** (basis.lam - 0.5)
    return (phases * (w * chirp)) @ values.T


def assemble(
    alpha: float,
    basis: GegenbauerBasis,
    big_n: int,
    rule: QuadratureRule | None = None,
) -> TransformMatrix:
    """Assemble W: analytic columns for degrees 0-1, quadrature for l >= 2.

    The closed forms are authoritative for the first two columns whenever
    the chirp is meaningfully present (|cot alpha| >= 1e-8); at and near
    the classical angle those columns take their exact classical values.
    Quadrature fills every higher degree.
    """
    big_n, rule = _validate_assembly(basis, big_n, rule)
    entries = 0.5 * _quadrature_block(
        alpha, basis, big_n, rule, conjugate_basis=True, weighted=False
    )
    modes = np.arange(-big_n, big_n + 1)
    cot = cot_angle(alpha)
    if abs(cot) < _NEAR_CLASSICAL_COT:
        entries[:, 0] = np.where(modes == 0, 1.0 + 0.0j, 0.0 + 0.0j)
        if basis.max_degree >= 1:
            entries[:, 1] = [w_k1_classical(basis.lam, k) for k in modes]
    else:
        entries[:, 0] = [w_k0(alpha, k) for k in modes]
        if basis.max_degree >= 1:
            entries[:, 1] = [w_k1(alpha, basis.lam, k) for k in modes]
    return TransformMatrix(
        entries=entries,
        alpha=float(alpha),
        lam=basis.lam,
        big_n=big_n,
        m=basis.max_degree,
        quad_order=rule.order,
    )


def assemble_direct(
    alpha: float,
    basis: GegenbauerBasis,
    big_n: int,
    rule: QuadratureRule | None = None,
) -> DirectMatrix:
    """Assemble D_{k,l} = (1/h_l) int (1-x^2)^(lam-1/2) phi_k C_l dx.

    Uses Gauss-Legendre on the plain measure with the weight folded into
    the integrand, at twice the requested order to compensate for the
    endpoint behavior of the weight; ghat_l = sum_k c_k D_{k,l} then
    projects a spectrum onto the weighted Gegenbauer space.
    """
    big_n, rule = _validate_assembly(basis, big_n, rule)
    doubled = gauss_legendre(2 * rule.order)
    entries = _quadrature_block(
        alpha, basis, big_n, doubled, conjugate_basis=False, weighted=True
    )
    h = np.array([basis.h_constant(l) for l in range(basis.max_degree + 1)])
    entries /= h[None, :]
    return DirectMatrix(
        entries=entries,
        alpha=float(alpha),
        lam=basis.lam,
        big_n=big_n,
        m=basis.max_degree,
        quad_order=rule.order,
    )


@lru_cache(maxsize=128)
def assemble_cached(
    alpha: float, lam: float, m: int, big_n: int, quad_order: int | None = None
) -> TransformMatrix:
    """Memoized assemble keyed by scalar parameters; shared across pieces."""
    basis = GegenbauerBasis(lam, m)
    rule = None if quad_order is None else gauss_legendre(quad_order)
    return assemble(alpha, basis, big_n, rule)


@lru_cache(maxsize=128)
def assemble_direct_cached(
    alpha: float, lam: float, m: int, big_n: int, quad_order: int | None = None
) -> DirectMatrix:
    """Memoized assemble_direct keyed by scalar parameters."""
    basis = GegenbauerBasis(lam, m)
    rule = None if quad_order is None else gauss_legendre(quad_order)
    return assemble_direct(alpha, basis, big_n, rule)
