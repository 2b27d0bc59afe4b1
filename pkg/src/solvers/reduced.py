"""Reduced-size problems on a leading right singular subspace of A.

With A = U Sigma V^T split after r columns, the normal equations in the V
basis have the block form [[F, B], [B^T, D]] where

    F = Sigma_1^2 + mu^2 (L V1)^T L V1
    B = mu^2 (L V1)^T L V2
    D = Sigma_2^T Sigma_2 + mu^2 (L V2)^T L V2

and S = D - B^T F^{-1} B is the Schur complement of F. These helpers expose
the pieces so that truncation effects can be inspected term by term.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from src.errors import ParameterError
from src.linalg.dense import as_matrix, as_vector
from src.linalg.factorizations import dense_svd


@dataclass(frozen=True)
class SchurBlockTerms:
    leading: np.ndarray
    coupling: np.ndarray
    tail: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.leading + self.coupling + self.tail


@dataclass(frozen=True)
class _Split:
    U1: np.ndarray
    U2: np.ndarray
    sigma1: np.ndarray
    Sigma2: np.ndarray
    V1: np.ndarray
    V2: np.ndarray


def _split(A: np.ndarray, r: int) -> _Split:
    m, n = A.shape
    if not 1 <= r <= min(m, n):
        raise ParameterError(f"Invalid split r={r}: must lie in [1, {min(m, n)}]")
    U, s, Vt = dense_svd(A, full_matrices=True)
    Sigma = np.zeros((m, n))
    Sigma[: s.size, : s.size] = np.diag(s)
    return _Split(
        U1=U[:, :r], U2=U[:, r:], sigma1=s[:r], Sigma2=Sigma[r:, r:],
        V1=Vt[:r].T, V2=Vt[r:].T,
    )


def _validate(A, L, b) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    if L.shape[1] != A.shape[1]:
        raise ParameterError(f"Invalid pair: A has {A.shape[1]} columns, L has {L.shape[1]}")
    b = as_vector(b, "b", length=A.shape[0])
    return A, L, b


def _leading_system(parts: _Split, L: np.ndarray, b: np.ndarray, mu: float):
    LV1 = L @ parts.V1
    F = np.diag(parts.sigma1**2) + mu**2 * (LV1.T @ LV1)
    rhs1 = parts.sigma1 * (parts.U1.T @ b)
    return F, rhs1, LV1


def truncated_block_solution(A, L, b, mu: float, r: int) -> np.ndarray:
    """V1 F^{-1} Sigma_1 U1^T b: the solution restricted to the leading subspace."""
    A, L, b = _validate(A, L, b)
    parts = _split(A, r)
    F, rhs1, _ = _leading_system(parts, L, b, mu)
    return parts.V1 @ scipy.linalg.solve(F, rhs1, assume_a="pos")


def reduced_solution(A, L, b, mu: float, r: int) -> np.ndarray:
    """Minimize ||A V1 z - b||^2 + mu^2 ||L V1 z||^2 by dense least squares; return V1 z."""
    A, L, b = _validate(A, L, b)
    parts = _split(A, r)
    stacked = np.vstack([A @ parts.V1, mu * (L @ parts.V1)])
    target = np.concatenate([b, np.zeros(L.shape[0])])
    z, *_ = scipy.linalg.lstsq(stacked, target)
    return parts.V1 @ z


def schur_block_terms(A, L, b, mu: float, r: int) -> SchurBlockTerms:
    """Split (A^T A + mu^2 L^T L)^{-1} A^T b into leading, coupling and tail terms."""
    A, L, b = _validate(A, L, b)
    parts = _split(A, r)
    F, rhs1, LV1 = _leading_system(parts, L, b, mu)
    g = scipy.linalg.solve(F, rhs1, assume_a="pos")
    leading = parts.V1 @ g
    n = A.shape[1]
    if parts.V2.shape[1] == 0:
        zero = np.zeros(n)
        return SchurBlockTerms(leading=leading, coupling=zero, tail=zero.copy())

    LV2 = L @ parts.V2
    B = mu**2 * (LV1.T @ LV2)
    D = parts.Sigma2.T @ parts.Sigma2 + mu**2 * (LV2.T @ LV2)
    F_inv_B = scipy.linalg.solve(F, B, assume_a="pos")
    S = D - B.T @ F_inv_B
    h = scipy.linalg.solve(S, B.T @ g, assume_a="pos")
    coupling = parts.V1 @ (F_inv_B @ h) - parts.V2 @ h
    rhs2 = parts.Sigma2.T @ (parts.U2.T @ b)
    t = scipy.linalg.solve(S, rhs2, assume_a="pos")
    tail = (parts.V2 - parts.V1 @ F_inv_B) @ t
    return SchurBlockTerms(leading=leading, coupling=coupling, tail=tail)


def nearby_pair(A, L, V1) -> Tuple[np.ndarray, np.ndarray]:
    """The pair ([A; L] V1 V1^T) whose minimum-norm Tikhonov solution the sketch reproduces."""
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    V1 = as_matrix(V1, "V1")
    P = V1 @ V1.T
    return A @ P, L @ P
