"""Random instances and independent oracles shared across test suites."""

from typing import Tuple

import numpy as np


class TestDataGenerator:
    """Generate seeded matrices and problem instances."""

    @staticmethod
    def random_matrix(rng: np.random.Generator, m: int, n: int) -> np.ndarray:
        return rng.standard_normal((m, n))

    @staticmethod
    def rank_deficient(rng: np.random.Generator, m: int, n: int, rank: int) -> np.ndarray:
        """Sum of ``rank`` outer products of orthonormal vectors with weights in [1, 2]."""
        U, _ = np.linalg.qr(rng.standard_normal((m, rank)))
        V, _ = np.linalg.qr(rng.standard_normal((n, rank)))
        return (U * rng.uniform(1.0, 2.0, rank)) @ V.T

    @staticmethod
    def orthonormal_stack(rng: np.random.Generator, m: int, p: int, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Blocks (Qa, Ql) of an (m + p) x n matrix with orthonormal columns."""
        Q, _ = np.linalg.qr(rng.standard_normal((m + p, n)))
        return Q[:m], Q[m:]

    @staticmethod
    def graded_matrix(rng: np.random.Generator, n: int, decay: float = 0.5) -> np.ndarray:
        """Square matrix with singular values decay**i and random singular vectors."""
        U, _ = np.linalg.qr(rng.standard_normal((n, n)))
        V, _ = np.linalg.qr(rng.standard_normal((n, n)))
        return (U * decay ** np.arange(n)) @ V.T

    @staticmethod
    def difference_matrix(n: int, order: int) -> np.ndarray:
        """First or second difference written out row by row."""
        stencil = [1.0, -1.0] if order == 1 else [1.0, -2.0, 1.0]
        rows = n - len(stencil) + 1
        D = np.zeros((rows, n))
        for i in range(rows):
            D[i, i:i + len(stencil)] = stencil
        return D


def jacobi_svd(M: np.ndarray, sweeps: int = 60, tol: float = 1e-15):
    """One-sided Jacobi SVD (tall or square M); returns U, s, V with s descending."""
    A = np.array(M, dtype=np.float64)
    m, n = A.shape
    V = np.eye(n)
    for _ in range(sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                alpha = A[:, i] @ A[:, i]
                beta = A[:, j] @ A[:, j]
                gamma = A[:, i] @ A[:, j]
                if abs(gamma) <= tol * np.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = np.sign(zeta) / (abs(zeta) + np.sqrt(1.0 + zeta**2)) if zeta != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t**2)
                s = c * t
                Ai, Aj = A[:, i].copy(), A[:, j].copy()
                A[:, i], A[:, j] = c * Ai - s * Aj, s * Ai + c * Aj
                Vi, Vj = V[:, i].copy(), V[:, j].copy()
                V[:, i], V[:, j] = c * Vi - s * Vj, s * Vi + c * Vj
        if not rotated:
            break
    s = np.linalg.norm(A, axis=0)
    order = np.argsort(-s)
    s = s[order]
    V = V[:, order]
    U = A[:, order] / np.where(s > 0, s, 1.0)
    return U, s, V


def stacked_min_norm(A: np.ndarray, L: np.ndarray, b: np.ndarray, mu: float) -> np.ndarray:
    """Minimum-norm minimizer of ||A x - b||^2 + mu^2 ||L x||^2 via the stacked pseudoinverse."""
    stacked = np.vstack([A, mu * L])
    rhs = np.concatenate([b, np.zeros(L.shape[0])])
    return np.linalg.pinv(stacked, rcond=1e-13) @ rhs


def normal_equations(A: np.ndarray, L: np.ndarray, b: np.ndarray, mu: float) -> np.ndarray:
    return np.linalg.solve(A.T @ A + mu**2 * (L.T @ L), A.T @ b)


def rel(a: np.ndarray, b: np.ndarray) -> float:
    """Relative difference ||a - b|| / max(||b||, tiny)."""
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300))
