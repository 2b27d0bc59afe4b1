"""SVD, pivoted QR, complete orthogonal decomposition and pseudoinverse application."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from src.errors import FactorizationError, ParameterError
from src.linalg.dense import (
    as_matrix,
    fix_column_signs,
    numerical_rank,
)


def _freeze(*arrays: np.ndarray) -> None:
    for arr in arrays:
        arr.setflags(write=False)


@dataclass(frozen=True)
class SvdFactorization:
    """Thin SVD M = U diag(singular_values) V^T with k = len(singular_values)."""

    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        _freeze(self.U, self.singular_values, self.V)

    @property
    def k(self) -> int:
        return int(self.singular_values.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.U.shape[0], self.V.shape[0])

    @property
    def rank(self) -> int:
        return numerical_rank(self.singular_values, self.shape)

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.singular_values) @ self.V.T

    def truncate(self, k: int) -> "SvdFactorization":
        if not 1 <= k <= self.k:
            raise ParameterError(f"Invalid truncation {k}: must lie in [1, {self.k}]")
        return SvdFactorization(
            self.U[:, :k].copy(), self.singular_values[:k].copy(), self.V[:, :k].copy()
        )


@dataclass(frozen=True)
class PivotedQr:
    """Rank-revealing QR: M[:, permutation] = Q1 @ T1 with T1 of full row rank."""

    Q1: np.ndarray
    T1: np.ndarray
    permutation: np.ndarray
    numerical_rank: int
    shape: Tuple[int, int]

    def __post_init__(self):
        _freeze(self.Q1, self.T1, self.permutation)


@dataclass(frozen=True)
class CompleteOrthDecomp:
    """M = U [[T, 0], [0, 0]] V^T with T (r x r) lower triangular and nonsingular."""

    U: np.ndarray
    T: np.ndarray
    V: np.ndarray
    numerical_rank: int

    def __post_init__(self):
        _freeze(self.U, self.T, self.V)

    @property
    def range_basis(self) -> np.ndarray:
        return self.U[:, : self.numerical_rank]

    @property
    def null_basis(self) -> np.ndarray:
        return self.V[:, self.numerical_rank :]

    @property
    def row_basis(self) -> np.ndarray:
        return self.V[:, : self.numerical_rank]


def dense_svd(M: np.ndarray, full_matrices: bool = False):
    """LAPACK SVD with a gesvd fallback when the divide-and-conquer driver fails."""
    try:
        return scipy.linalg.svd(M, full_matrices=full_matrices, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        logger.warning(f"gesdd did not converge on {M.shape[0]}x{M.shape[1]}; retrying with gesvd")
    try:
        return scipy.linalg.svd(M, full_matrices=full_matrices, lapack_driver="gesvd")
    except np.linalg.LinAlgError as e:
        logger.error(f"SVD failed for {M.shape[0]}x{M.shape[1]} matrix: {e}")
        raise FactorizationError(
            f"SVD did not converge for a {M.shape[0]}x{M.shape[1]} matrix"
        ) from e


def svd(M, name: str = "matrix") -> SvdFactorization:
    """Thin SVD with k = min(rows, cols) and deterministic column signs."""
    M = as_matrix(M, name)
    U, s, Vt = dense_svd(M)
    V = Vt.T.copy()
    fix_column_signs(U, V)
    logger.debug(f"svd {M.shape[0]}x{M.shape[1]}: sigma_max={s[0]:.3e}, sigma_min={s[-1]:.3e}")
    return SvdFactorization(U, s, V)


def qr_pivoted(M, name: str = "matrix") -> PivotedQr:
    """Householder QR with column pivoting, truncated at the numerical rank."""
    M = as_matrix(M, name)
    Q, R, perm = scipy.linalg.qr(M, mode="economic", pivoting=True)
    rank = numerical_rank(np.diag(R), M.shape)
    Q1 = Q[:, :rank].copy()
    T1 = R[:rank, :].copy()
    signs = np.sign(np.diag(T1))
    signs[signs == 0] = 1.0
    Q1 *= signs
    T1 *= signs[:, None]
    logger.debug(f"qr_pivoted {M.shape[0]}x{M.shape[1]}: rank {rank}")
    return PivotedQr(Q1, T1, perm.astype(np.intp), rank, M.shape)


def complete_orthogonal(M, name: str = "matrix") -> CompleteOrthDecomp:
    """Two-sided orthogonal reduction built from a pivoted QR and a QR of its rows."""
    M = as_matrix(M, name)
    m, n = M.shape
    Q, R, perm = scipy.linalg.qr(M, pivoting=True)
    rank = numerical_rank(np.diag(R), M.shape)
    if rank == 0:
        return CompleteOrthDecomp(Q, np.zeros((0, 0)), np.eye(n), 0)
    Z, Rz = scipy.linalg.qr(R[:rank, :].T)
    T = Rz[:rank, :].T.copy()
    V = np.empty_like(Z)
    V[perm] = Z
    logger.debug(f"complete_orthogonal {m}x{n}: rank {rank}")
    return CompleteOrthDecomp(Q, T, V, rank)


def pinv_apply(f: PivotedQr, v) -> np.ndarray:
    """Apply the pseudoinverse of the factored matrix to a vector or block of columns.

    Evaluates Pi T1^T (T1 T1^T)^{-1} Q1^T v, using a QR of T1^T so that the
    Gram matrix T1 T1^T is never formed.
    """
    rows, cols = f.shape
    v = np.asarray(v, dtype=np.float64)
    if v.shape[0] != rows:
        raise ParameterError(f"Invalid right-hand side: expected {rows} rows, got {v.shape[0]}")
    out_shape = (cols,) + v.shape[1:]
    if f.numerical_rank == 0:
        return np.zeros(out_shape)
    z = f.Q1.T @ v
    Qt, Rt = scipy.linalg.qr(f.T1.T, mode="economic")
    w = Qt @ scipy.linalg.solve_triangular(Rt, z, trans="T")
    x = np.empty(out_shape)
    x[f.permutation] = w
    return x
