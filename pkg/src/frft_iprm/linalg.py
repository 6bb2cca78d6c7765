"""Dense complex linear algebra: least squares, singular values, conditioning.

Thin, contract-enforcing wrappers around LAPACK via NumPy.  The solve goes
through an orthogonal factorization (SVD), never the normal equations, and
numerical rank deficiency — smallest singular value below 1e-14 times the
largest — is surfaced as a distinct exception instead of a silently
garbage solution or an infinite condition number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConditionReport",
    "RankDeficientMatrixError",
    "lstsq",
    "singular_values",
    "condition_report",
    "symmetric_eigenvalues",
]

RANK_DEFICIENCY_THRESHOLD = 1e-14


class RankDeficientMatrixError(np.linalg.LinAlgError):
    """The matrix is numerically rank-deficient (sigma_min/sigma_max < 1e-14)."""


@dataclass(frozen=True)
class ConditionReport:
    """Extreme singular values and condition number of a reconstruction matrix.

    Attributes
    ----------
    sigma_max, sigma_min : float
        Largest and smallest singular values; both positive for the
        full-column-rank matrices this report is issued for.
    kappa : float
        ``sigma_max / sigma_min`` >= 1.
    m, big_n : int
        Polynomial degree and spectral truncation of the matrix.
    alpha, lam : float
        Chirp angle and weight exponent of the matrix.
    """

    sigma_max: float
    sigma_min: float
    kappa: float
    m: int
    big_n: int
    alpha: float
    lam: float

    def __post_init__(self):
        if not (self.sigma_max >= self.sigma_min > 0.0):
            raise ValueError(
                "requires sigma_max >= sigma_min > 0, got "
                f"({self.sigma_max}, {self.sigma_min})"
            )
        if not self.kappa >= 1.0 - 1e-15:
            raise ValueError(f"kappa must be >= 1, got {self.kappa}")


def _as_matrix(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.size == 0:
        raise ValueError("expected a nonempty two-dimensional matrix")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def lstsq(A, b) -> np.ndarray:
    """Minimize ||A x - b||_2 for a tall (rows >= cols) complex matrix.

    Solves through the SVD of ``A`` so the residual is orthogonal to the
    column space (``||A* (A x - b)|| <= 1e-10 ||A|| ||b||``).

    Raises
    ------
    ValueError
        On dimension mismatch or rows < cols.
    RankDeficientMatrixError
        When sigma_min / sigma_max < 1e-14.
    """
    A = _as_matrix(A)
    b = np.asarray(b)
    if b.ndim != 1 or len(b) != A.shape[0]:
        raise ValueError(
            f"right-hand side length {b.shape} does not match {A.shape[0]} rows"
        )
    if A.shape[0] < A.shape[1]:
        raise ValueError(
            f"system must have rows >= cols, got {A.shape[0]}x{A.shape[1]}"
        )
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    if s[-1] < RANK_DEFICIENCY_THRESHOLD * s[0]:
        raise RankDeficientMatrixError(
            f"sigma_min/sigma_max = {s[-1] / s[0]:.3e} below "
            f"{RANK_DEFICIENCY_THRESHOLD:g}"
        )
    return vh.conj().T @ ((u.conj().T @ b) / s)


def singular_values(A) -> np.ndarray:
    """All singular values of ``A`` in descending order.

    They are nonnegative and their squares sum to ||A||_F^2.
    """
    A = _as_matrix(A)
    return np.linalg.svd(A, compute_uv=False)


def condition_report(W) -> ConditionReport:
    """Condition report (sigma_max, sigma_min, kappa) of a TransformMatrix.

    Raises RankDeficientMatrixError instead of reporting an infinite kappa.
    """
    s = singular_values(W.entries)
    if s[-1] < RANK_DEFICIENCY_THRESHOLD * s[0]:
        raise RankDeficientMatrixError(
            f"transform matrix (alpha={W.alpha}, lam={W.lam}, m={W.m}, "
            f"N={W.big_n}) is numerically rank-deficient"
        )
    return ConditionReport(
        sigma_max=float(s[0]),
        sigma_min=float(s[-1]),
        kappa=float(s[0] / s[-1]),
        m=W.m,
        big_n=W.big_n,
        alpha=W.alpha,
        lam=W.lam,
    )


def symmetric_eigenvalues(G) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix in descending order.

    The input must be symmetric to 1e-12 relative to its largest entry;
    the returned spectrum preserves the trace to 1e-10.
    """
    G = _as_matrix(G)
    if G.shape[0] != G.shape[1]:
        raise ValueError(f"matrix must be square, got {G.shape}")
    scale = max(1.0, float(np.max(np.abs(G))))
    if np.max(np.abs(G - G.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric to 1e-12")
    eigenvalues = np.linalg.eigvalsh(G)
    trace_error = abs(float(np.sum(eigenvalues)) - float(np.trace(G)))
    if trace_error > 1e-10 * scale * G.shape[0]:
        raise ArithmeticError(
            f"eigenvalue trace drift {trace_error:.3e} exceeds tolerance"
        )
    return eigenvalues[::-1]
