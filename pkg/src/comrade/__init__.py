"""Zeros of 2F2(-n,1;alpha+1,kappa+1;x) polynomials via comrade matrices.

The pipeline: a four-term recurrence linearizes into a banded pencil
x*B - A; X = B^{-1}*A has a closed quasi-tridiagonal form; a diagonal
similarity turns X into a symmetric tridiagonal plus rank-one spike
(the comrade matrix); a structured QR iteration finds all eigenvalues
— the polynomial's zeros — in O(n^2) time and O(n) memory.  Dense QR
in double and double-double precision provides the reference results.
"""

from .ddouble import ComplexDD, DoubleDouble
from .recurrence import (
    CoefficientSet,
    DegenerateRecurrenceError,
    Parameters,
    eval_recurrence,
    eval_series,
    pochhammer,
    recurrence_coefficients,
    scaled_residual,
)
from .pencil import (
    BandedPencil,
    SpikedTridiagonal,
    apply_b_inverse,
    build_pencil,
    build_x,
    x_to_dense,
)
from .matrix import ComradeMatrix, comrade_direct, comrade_to_dense, symmetrize
from .solver import (
    GeneratorHessenberg,
    NonConvergenceError,
    Spectrum,
    eigenvalues,
    from_comrade,
    qr_step,
    wilkinson_shift,
)
from .dense import (
    DDMatrix,
    EPS_DD,
    EPS_DOUBLE,
    balance,
    build_x_dd,
    condition_numbers,
    dense_qr_eigenvalues,
    frobenius_norm,
    hessenberg_reduce,
    laguerre_nodes,
)
from .experiments import (
    ClassifiedSpectrum,
    REAL_CLASSIFICATION_TOL,
    RefusedSlowRun,
    classify,
    solve_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BandedPencil",
    "ClassifiedSpectrum",
    "CoefficientSet",
    "ComplexDD",
    "ComradeMatrix",
    "DDMatrix",
    "DegenerateRecurrenceError",
    "DoubleDouble",
    "EPS_DD",
    "EPS_DOUBLE",
    "GeneratorHessenberg",
    "NonConvergenceError",
    "Parameters",
    "REAL_CLASSIFICATION_TOL",
    "RefusedSlowRun",
    "Spectrum",
    "SpikedTridiagonal",
    "apply_b_inverse",
    "balance",
    "build_pencil",
    "build_x",
    "build_x_dd",
    "classify",
    "comrade_direct",
    "comrade_to_dense",
    "condition_numbers",
    "dense_qr_eigenvalues",
    "eigenvalues",
    "eval_recurrence",
    "eval_series",
    "frobenius_norm",
    "from_comrade",
    "hessenberg_reduce",
    "laguerre_nodes",
    "pochhammer",
    "qr_step",
    "recurrence_coefficients",
    "scaled_residual",
    "solve_instance",
    "symmetrize",
    "wilkinson_shift",
    "x_to_dense",
]
