"""Gibbs-free reconstruction of piecewise analytic functions from fractional
Fourier series.

The package implements three reconstruction routes from a finite set of
fractional Fourier coefficients of a piecewise analytic function on [-1, 1]:

* the raw chirp-modulated partial sum (oscillatory near jumps),
* direct reprojection of the partial sum onto a Gegenbauer basis, and
* inverse polynomial reconstruction, which solves a small least-squares
  system mapping Gegenbauer coefficients to the measured spectrum and
  recovers root-exponential accuracy on each smooth piece.

Supporting modules provide Gauss-Legendre quadrature, the complex error
function, Gegenbauer polynomial evaluation and Gram matrices, conditioning
diagnostics for the reconstruction operator, a six-function piecewise test
corpus, and a CSV-emitting command line interface for the numerical
experiments.
"""

from .numerics import (
    AffineMap,
    QuadratureRule,
    complex_erf,
    gauss_legendre,
    map_from_unit,
    map_to_unit,
)
from .gegenbauer import (
    ErrorBoundDiagnostics,
    GegenbauerBasis,
    GramMatrix,
    LambdaDomainError,
    diagnostics,
    gram_matrix,
    min_h_constant,
)
from .frft import (
    FrftConfig,
    FrftSpectrum,
    basis_eval,
    compute_spectrum,
    cot_angle,
    default_quad_order,
    partial_sum,
)
from .transform import (
    DirectMatrix,
    TransformMatrix,
    assemble,
    assemble_cached,
    assemble_direct,
    assemble_direct_cached,
    w_k0,
    w_k1,
    w_kl_quadrature,
)
from .linalg import (
    ConditionReport,
    RankDeficientMatrixError,
    condition_report,
    lstsq,
    singular_values,
    symmetric_eigenvalues,
)
from .reconstruct import (
    BernsteinRate,
    FractionalReconstructor,
    GridSpec,
    PiecewiseFunction,
    ReconstructionReport,
    bernstein_rho,
    direct_reconstruct,
    error_metrics,
    iprm_reconstruct,
    min_bernstein_rate,
    partial_sum_report,
)
from .corpus import (
    CORPUS_VERSION,
    CorpusIntegrityError,
    TestCorpus,
    load_corpus,
)

__all__ = [
    "AffineMap",
    "QuadratureRule",
    "complex_erf",
    "gauss_legendre",
    "map_from_unit",
    "map_to_unit",
    "ErrorBoundDiagnostics",
    "GegenbauerBasis",
    "GramMatrix",
    "LambdaDomainError",
    "diagnostics",
    "gram_matrix",
    "min_h_constant",
    "FrftConfig",
    "FrftSpectrum",
    "basis_eval",
    "compute_spectrum",
    "cot_angle",
    "default_quad_order",
    "partial_sum",
    "DirectMatrix",
    "TransformMatrix",
    "assemble",
    "assemble_cached",
    "assemble_direct",
    "assemble_direct_cached",
    "w_k0",
    "w_k1",
    "w_kl_quadrature",
    "ConditionReport",
    "RankDeficientMatrixError",
    "condition_report",
    "lstsq",
    "singular_values",
    "symmetric_eigenvalues",
    "BernsteinRate",
    "FractionalReconstructor",
    "GridSpec",
    "PiecewiseFunction",
    "ReconstructionReport",
    "bernstein_rho",
    "direct_reconstruct",
    "error_metrics",
    "iprm_reconstruct",
    "min_bernstein_rate",
    "partial_sum_report",
    "CORPUS_VERSION",
    "CorpusIntegrityError",
    "TestCorpus",
    "load_corpus",
]

__version__ = "0.1.0"
