"""Reduce min ||Ax - b||^2 + mu^2 ||Lx||^2 to min ||Ky - b||^2 + mu^2 ||y||^2.

With W spanning N(L), Z spanning R(L) and the oblique pseudoinverse
L# = (I - W (AW)^+ A) L^+, every Tikhonov solution is recovered as

    x_mu = L# Z y_mu + W (AW)^+ b,    K = A L# Z,

for any mu, including the minimum-norm branch when N(A) and N(L) intersect.
Structural shortcuts avoid the general construction when L is square and
nonsingular, has full column or row rank, or when N(L) lies inside N(A).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from src.errors import ParameterError
from src.linalg.dense import as_matrix, as_vector, fix_column_signs
from src.linalg.factorizations import (
    CompleteOrthDecomp,
    PivotedQr,
    complete_orthogonal,
    pinv_apply,
    qr_pivoted,
)

NULL_IN_NULL_RTOL = 1e-12


class TransformCase(str, Enum):
    """Which reduction path produced a standard-form system."""
    GENERAL = "general"
    NULL_IN_NULL = "null_in_null"
    FULL_ROW_RANK = "full_row_rank"
    FULL_COL_RANK = "full_col_rank"
    SQUARE_NONSINGULAR = "square_nonsingular"


@dataclass(frozen=True)
class TransformPlan:
    case_tag: TransformCase
    rank_l: int
    null_dim: int
    rank_aw: int
    aw_norm: float


@dataclass(frozen=True)
class StandardFormSystem:
    """Standard-form operator plus the affine map back to the original unknowns."""

    K: np.ndarray
    rhs: np.ndarray
    back_basis: np.ndarray
    back_offset: np.ndarray
    case_tag: TransformCase
    null_basis: np.ndarray
    range_basis: np.ndarray
    rank_aw: int
    projected_rhs: np.ndarray

    @property
    def oblique_pinv(self) -> np.ndarray:
        """L# assembled from back_basis = L# Z."""
        return self.back_basis @ self.range_basis.T


@dataclass(frozen=True)
class _Structure:
    plan: TransformPlan
    cod: CompleteOrthDecomp
    aw_qr: Optional[PivotedQr]


def null_range_bases(L) -> Tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases (W, Z) of N(L) and R(L); either may have zero columns."""
    cod = complete_orthogonal(as_matrix(L, "L"))
    W = cod.null_basis.copy()
    Z = cod.range_basis.copy()
    fix_column_signs(W)
    fix_column_signs(Z)
    return W, Z


def _analyze(A: np.ndarray, L: np.ndarray) -> _Structure:
    p, n = L.shape
    cod = complete_orthogonal(L)
    r = cod.numerical_rank
    W = cod.null_basis

    if W.shape[1] == 0:
        tag = TransformCase.SQUARE_NONSINGULAR if p == n else TransformCase.FULL_COL_RANK
        return _Structure(TransformPlan(tag, r, 0, 0, 0.0), cod, None)

    AW = A @ W
    aw_norm = float(np.linalg.norm(AW))
    threshold = NULL_IN_NULL_RTOL * np.linalg.norm(A) * max(1.0, np.linalg.norm(W))
    if aw_norm <= threshold:
        plan = TransformPlan(TransformCase.NULL_IN_NULL, r, W.shape[1], 0, aw_norm)
        return _Structure(plan, cod, None)

    aw_qr = qr_pivoted(AW, "AW")
    rank_aw = aw_qr.numerical_rank
    if r == p and rank_aw == W.shape[1]:
        tag = TransformCase.FULL_ROW_RANK
    else:
        tag = TransformCase.GENERAL
    return _Structure(TransformPlan(tag, r, W.shape[1], rank_aw, aw_norm), cod, aw_qr)


def plan_transform(A, L) -> TransformPlan:
    """Detect which reduction path applies to the pair (A, L)."""
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    _check_shapes(A, L)
    return _analyze(A, L).plan


def _check_shapes(A: np.ndarray, L: np.ndarray) -> None:
    if A.shape[1] != L.shape[1]:
        raise ParameterError(f"Invalid pair: A is {A.shape[0]}x{A.shape[1]}, L is {L.shape[0]}x{L.shape[1]}")


def _cod_pinv_times_range(cod: CompleteOrthDecomp) -> np.ndarray:
    """L^+ Z = V1 T^{-1} for L = U1 T V1^T."""
    V1 = cod.row_basis
    return scipy.linalg.solve_triangular(cod.T, V1.T, lower=True, trans="T").T


def _project_out(Q: np.ndarray, M: np.ndarray) -> np.ndarray:
    """(I - Q Q^T) M for Q with orthonormal columns."""
    return M - Q @ (Q.T @ M)


def _square_nonsingular(A, L, b):
    n = L.shape[0]
    L_inv = scipy.linalg.lu_solve(scipy.linalg.lu_factor(L), np.eye(n))
    return A @ L_inv, L_inv, np.zeros(n), np.zeros((n, 0)), np.eye(n), 0, b.copy()


def _full_col_rank(A, L, b):
    n = L.shape[1]
    Q1, R = scipy.linalg.qr(L, mode="economic")
    R_inv = scipy.linalg.solve_triangular(R, np.eye(n))
    return A @ R_inv, R_inv, np.zeros(n), np.zeros((n, 0)), Q1, 0, b.copy()


def _full_row_rank(A, L, b):
    p, n = L.shape
    Q, Rl = scipy.linalg.qr(L.T)
    Q1, W = Q[:, :p], Q[:, p:]
    R = Rl[:p, :]
    L_pinv = scipy.linalg.solve_triangular(R, Q1.T).T

    U, T = scipy.linalg.qr(A @ W, mode="economic")

    def aw_pinv(v):
        return scipy.linalg.solve_triangular(T, U.T @ v)

    # K = (I - U U^T) A L^+ by projection, never as A @ back_basis
    M = A @ L_pinv
    back_basis = L_pinv - W @ aw_pinv(M)
    offset = W @ aw_pinv(b)
    return _project_out(U, M), back_basis, offset, W, np.eye(p), W.shape[1], _project_out(U, b)


def _general(A, b, structure: _Structure):
    cod = structure.cod
    n = A.shape[1]
    W = cod.null_basis.copy()
    Z = cod.range_basis.copy()
    back_basis = _cod_pinv_times_range(cod)
    M = A @ back_basis
    aw_qr = structure.aw_qr
    if aw_qr is None and W.shape[1] > 0 and structure.plan.case_tag is not TransformCase.NULL_IN_NULL:
        aw_qr = qr_pivoted(A @ W, "AW")
    if aw_qr is None or aw_qr.numerical_rank == 0:
        return M, back_basis, np.zeros(n), W, Z, 0, b.copy()

    back_basis = back_basis - W @ pinv_apply(aw_qr, M)
    offset = W @ pinv_apply(aw_qr, b)
    # A W (AW)^+ is the orthogonal projector onto the truncated range Q1
    K = _project_out(aw_qr.Q1, M)
    return K, back_basis, offset, W, Z, aw_qr.numerical_rank, _project_out(aw_qr.Q1, b)


def to_standard_form(A, L, b, case: Optional[TransformCase] = None) -> StandardFormSystem:
    """Transform (A, L, b) to standard form, choosing the cheapest valid path.

    Passing ``case`` forces a path; the general path is always admissible,
    any other must match the detected structure.
    """
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    _check_shapes(A, L)
    b = as_vector(b, "b", length=A.shape[0])

    structure = _analyze(A, L)
    detected = structure.plan.case_tag
    tag = detected if case is None else TransformCase(case)
    if tag not in (detected, TransformCase.GENERAL):
        raise ParameterError(f"Invalid transform path {tag.value}: detected structure is {detected.value}")

    if tag is TransformCase.SQUARE_NONSINGULAR:
        parts = _square_nonsingular(A, L, b)
    elif tag is TransformCase.FULL_COL_RANK:
        parts = _full_col_rank(A, L, b)
    elif tag is TransformCase.FULL_ROW_RANK:
        parts = _full_row_rank(A, L, b)
    else:
        # NULL_IN_NULL is the general construction with the (AW)^+ terms dropped
        parts = _general(A, b, structure)

    K, back_basis, offset, W, Z, rank_aw, projected = parts
    logger.debug(
        f"to_standard_form: path={tag.value}, K {K.shape[0]}x{K.shape[1]}, "
        f"null(L)={structure.plan.null_dim}, rank(AW)={rank_aw}"
    )
    return StandardFormSystem(
        K=K,
        rhs=b,
        back_basis=back_basis,
        back_offset=offset,
        case_tag=tag,
        null_basis=W,
        range_basis=Z,
        rank_aw=rank_aw,
        projected_rhs=projected,
    )


def back_map(system: StandardFormSystem, y_mu) -> np.ndarray:
    """x_mu = back_basis @ y_mu + back_offset."""
    y_mu = as_vector(y_mu, "y_mu", length=system.back_basis.shape[1])
    return system.back_basis @ y_mu + system.back_offset
