"""Dense factorization kernels: SVD, pivoted QR, COD, CS decomposition and GSVD."""

from src.linalg.dense import as_matrix, as_vector, rank_tolerance
from src.linalg.factorizations import (
    CompleteOrthDecomp,
    PivotedQr,
    SvdFactorization,
    complete_orthogonal,
    pinv_apply,
    qr_pivoted,
    svd,
)
from src.linalg.gsvd import CsDecomposition, GsvdFactorization, cs_decompose, gsvd
from src.linalg.sampling import gaussian_samples

__all__ = [
    "as_matrix",
    "as_vector",
    "rank_tolerance",
    "SvdFactorization",
    "PivotedQr",
    "CompleteOrthDecomp",
    "svd",
    "qr_pivoted",
    "complete_orthogonal",
    "pinv_apply",
    "CsDecomposition",
    "GsvdFactorization",
    "cs_decompose",
    "gsvd",
    "gaussian_samples",
]
