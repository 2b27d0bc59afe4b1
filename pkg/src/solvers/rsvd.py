"""Randomized SVD and spectral filter solvers for standard-form problems."""

import numpy as np
import scipy.linalg
from loguru import logger
from pydantic import BaseModel, Field

from config.settings import settings
from src.errors import ParameterError
from src.linalg.dense import as_matrix, as_vector, fix_column_signs, rank_tolerance
from src.linalg.factorizations import SvdFactorization, dense_svd
from src.linalg.sampling import gaussian_samples


class SketchConfig(BaseModel):
    """Gaussian sketch parameters: sample size l, seed and optional power iterations."""

    sample_size: int = Field(default_factory=lambda: settings.default_sample_size, ge=1)
    seed: int = Field(default_factory=lambda: settings.default_seed_sketch, ge=0, lt=2**64)
    power_iterations: int = Field(default=0, ge=0)

    def check_shape(self, m: int, n: int) -> None:
        if self.sample_size > min(m, n):
            raise ParameterError(
                f"Invalid sample size l={self.sample_size}: exceeds min({m}, {n})"
            )


def _orth(M: np.ndarray) -> np.ndarray:
    Q, _ = scipy.linalg.qr(M, mode="economic")
    return Q


def rsvd(K, cfg: SketchConfig) -> SvdFactorization:
    """Rank-l approximate SVD from one Gaussian sketch.

    For m <= n the sketch acts from the left (Y = Omega K, l x n) and captures
    the row space; for m > n it acts from the right (Y = K Omega).
    """
    K = as_matrix(K, "K")
    m, n = K.shape
    cfg.check_shape(m, n)
    l = cfg.sample_size

    if m <= n:
        omega = gaussian_samples(cfg.seed, (l, m))
        Q = _orth((omega @ K).T)
        for _ in range(cfg.power_iterations):
            Q = _orth(K.T @ _orth(K @ Q))
        U, s, Ht = dense_svd(K @ Q)
        V = Q @ Ht.T
    else:
        omega = gaussian_samples(cfg.seed, (n, l))
        Q = _orth(K @ omega)
        for _ in range(cfg.power_iterations):
            Q = _orth(K @ _orth(K.T @ Q))
        H, s, Vt = dense_svd(Q.T @ K)
        U = Q @ H
        V = Vt.T.copy()

    fix_column_signs(U, V)
    logger.debug(f"rsvd {m}x{n}, l={l}, q={cfg.power_iterations}: sigma_l={s[-1]:.3e}")
    return SvdFactorization(U, s, V)


def _live(f: SvdFactorization) -> np.ndarray:
    s = f.singular_values
    if s.size == 0 or s[0] == 0.0:
        return np.zeros(s.shape, dtype=bool)
    return s > rank_tolerance(f.shape, s[0])


def tikhonov_filtered(f: SvdFactorization, b, mu: float) -> np.ndarray:
    """y_mu = sum_i sigma_i^2/(sigma_i^2 + mu^2) * (u_i^T b / sigma_i) v_i."""
    if mu < 0:
        raise ParameterError(f"Invalid mu={mu}: must be non-negative")
    b = as_vector(b, "b", length=f.U.shape[0])
    s = f.singular_values
    beta = f.U.T @ b
    live = _live(f)
    coef = np.zeros_like(s)
    coef[live] = s[live] * beta[live] / (s[live] ** 2 + mu**2)
    return f.V @ coef


def tsvd_solve(f: SvdFactorization, b, k: int) -> np.ndarray:
    """x_k = sum_{i <= k} (u_i^T b / sigma_i) v_i."""
    rank = f.rank
    if not 1 <= k <= rank:
        raise ParameterError(f"Invalid truncation k={k}: must lie in [1, {rank}]")
    b = as_vector(b, "b", length=f.U.shape[0])
    beta = f.U[:, :k].T @ b
    return f.V[:, :k] @ (beta / f.singular_values[:k])
