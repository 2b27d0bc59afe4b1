"""CS decomposition and the generalized SVD of a matrix pair (A, L)."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from loguru import logger

from src.errors import FactorizationError, ParameterError
from src.linalg.dense import as_matrix, fix_column_signs, numerical_rank
from src.linalg.factorizations import dense_svd


@dataclass(frozen=True)
class CsDecomposition:
    """Qa = U diag(c) W^T, Ql = V diag(s[:q]) W[:, :q]^T with q = min(p, n)."""

    U: np.ndarray
    V: np.ndarray
    c: np.ndarray
    s: np.ndarray
    W: np.ndarray


@dataclass(frozen=True)
class GsvdFactorization:
    """A = U C G^{-1}, L = V S G^{-1}.

    ``c`` ascends and ``s`` descends over all n indices. When L has fewer rows
    than columns the trailing n - p indices carry (c, s) = (1, 0) and are not
    regularized. G^{-1} is never formed explicitly unless asked for: it equals
    W^T R Pi^T, where [A; L] Pi = Q R is the stacked pivoted QR.
    """

    U: np.ndarray
    V: np.ndarray
    c: np.ndarray
    s: np.ndarray
    G: np.ndarray
    R: np.ndarray
    W: np.ndarray
    permutation: np.ndarray
    p: int

    def __post_init__(self):
        for arr in (self.U, self.V, self.c, self.s, self.G, self.R, self.W, self.permutation):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.c.shape[0])

    @property
    def m(self) -> int:
        return int(self.U.shape[0])

    @property
    def paired(self) -> int:
        """Number of indices that carry a regularized (c, s) pair."""
        return min(self.p, self.n)

    def apply_g_inverse(self, x: np.ndarray) -> np.ndarray:
        return self.W.T @ (self.R @ x[self.permutation])

    def g_inverse(self) -> np.ndarray:
        Ginv = np.empty((self.n, self.n))
        Ginv[:, self.permutation] = self.W.T @ self.R
        return Ginv

    def reconstruct(self):
        """Return (A, L) rebuilt from the factors."""
        Ginv = self.g_inverse()
        q = self.paired
        A = (self.U * self.c) @ Ginv
        L = (self.V * self.s[:q]) @ Ginv[:q]
        return A, L


def cs_decompose(Qa, Ql, check: bool = True) -> CsDecomposition:
    """CS decomposition of a stacked matrix [Qa; Ql] with orthonormal columns.

    The L block is diagonalized by an SVD (s descending), after which Qa W has
    orthogonal columns of norms c. c is read off as those column norms, which
    keeps c^2 + s^2 = 1 to working precision even when most c are tiny.
    """
    Qa = as_matrix(Qa, "Qa")
    Ql = as_matrix(Ql, "Ql")
    m, n = Qa.shape
    p = Ql.shape[0]
    if Ql.shape[1] != n:
        raise ParameterError(f"Invalid CS blocks: column counts {n} and {Ql.shape[1]} differ")
    if m < n:
        raise ParameterError(f"Invalid CS blocks: Qa must have at least as many rows as columns, got {m}x{n}")
    if check:
        defect = np.abs(Qa.T @ Qa + Ql.T @ Ql - np.eye(n)).max()
        if defect > 1e-10:
            raise ParameterError(f"Invalid CS blocks: stacked matrix not orthonormal (defect {defect:.2e})")

    q = min(p, n)
    Vl, sl, Wt = dense_svd(Ql, full_matrices=p < n)
    W = Wt.T.copy()
    V = Vl[:, :q].copy()
    # paired columns flip together; the unpaired tail of W flips alone
    fix_column_signs(W[:, :q], V)
    if q < n:
        fix_column_signs(W[:, q:])
    s = np.zeros(n)
    s[:q] = np.clip(sl[:q], 0.0, 1.0)

    M = Qa @ W
    c = np.clip(np.linalg.norm(M, axis=0), 0.0, 1.0)
    # U from a QR taken in descending-c order: the well-determined columns are
    # fixed first and the near-zero ones only complete the basis
    order = np.argsort(-c, kind="stable")
    Uq, Rc = scipy.linalg.qr(M[:, order], mode="economic")
    signs = np.sign(np.diag(Rc))
    signs[signs == 0] = 1.0
    U = np.empty_like(Uq)
    U[:, order] = Uq * signs
    return CsDecomposition(U=U, V=V, c=c, s=s, W=W)


def gsvd(A, L) -> GsvdFactorization:
    """Generalized SVD via a pivoted QR of [A; L] followed by a CS decomposition."""
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    m, n = A.shape
    p = L.shape[0]
    if L.shape[1] != n:
        raise ParameterError(f"Invalid pair: A has {n} columns, L has {L.shape[1]}")
    if m < n:
        raise ParameterError(f"Invalid pair: gsvd needs rows(A) >= cols(A), got {m}x{n}")

    stack = np.vstack([A, L])
    Q, R, perm = scipy.linalg.qr(stack, mode="economic", pivoting=True)
    rank = numerical_rank(np.diag(R), stack.shape)
    if rank < n:
        raise FactorizationError(
            f"null spaces intersect nontrivially: rank([A; L]) = {rank} < {n}"
        )

    cs = cs_decompose(Q[:m], Q[m:], check=False)
    G = np.empty((n, n))
    G[perm] = scipy.linalg.solve_triangular(R, cs.W)
    logger.debug(
        f"gsvd A {m}x{n}, L {p}x{n}: c in [{cs.c[0]:.2e}, {cs.c[-1]:.2e}], unpaired {n - min(p, n)}"
    )
    return GsvdFactorization(
        U=cs.U, V=cs.V, c=cs.c, s=cs.s, G=G, R=R, W=cs.W,
        permutation=perm.astype(np.intp), p=p,
    )
