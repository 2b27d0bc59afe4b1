"""General-form Tikhonov and truncated solvers on a GSVD, and the randomized GSVD."""

import time
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from loguru import logger

from src.errors import ParameterError
from src.linalg.dense import as_matrix, as_vector, rank_tolerance
from src.linalg.factorizations import SvdFactorization
from src.linalg.gsvd import GsvdFactorization, gsvd
from src.solvers.rsvd import SketchConfig, rsvd, tsvd_solve

AUGMENT_SKIP_RTOL = 1e-10


@dataclass(frozen=True)
class RgsvdFactors:
    """Sketch basis V1_tilde and the GSVD of the reduced pair (A V1_tilde, L V1_tilde)."""

    V1_tilde: np.ndarray
    inner: GsvdFactorization
    sketch: SvdFactorization
    skipped_augmentations: int = 0

    @property
    def sample_size(self) -> int:
        return int(self.V1_tilde.shape[1])


@dataclass
class RegularizedSolution:
    """A solution vector with its parameter, accuracy and cost."""

    x: np.ndarray
    mu: Optional[float] = None
    truncation: Optional[int] = None
    rel_err: Optional[float] = None
    elapsed: float = 0.0

    @classmethod
    def build(cls, x: np.ndarray, x_exact: Optional[np.ndarray] = None, **kwargs) -> "RegularizedSolution":
        rel_err = None if x_exact is None else relative_error(x, x_exact)
        return cls(x=x, rel_err=rel_err, **kwargs)


def relative_error(x: np.ndarray, x_exact: np.ndarray) -> float:
    return float(np.linalg.norm(x - x_exact) / np.linalg.norm(x_exact))


def _live_cosines(f: GsvdFactorization) -> np.ndarray:
    tol = rank_tolerance((f.m, f.n), f.c.max())
    return f.c > tol


def gsvd_coefficients(f: GsvdFactorization, b: np.ndarray, mu: float) -> np.ndarray:
    """Coordinates of x_mu in the basis G, i.e. x_mu = G @ coefficients."""
    beta = f.U.T @ b
    q = f.paired
    c, s = f.c[:q], f.s[:q]
    denom = c**2 + mu**2 * s**2
    live = _live_cosines(f)[:q] & (denom > 0)
    coef = np.zeros(f.n)
    coef[:q][live] = c[live] * beta[:q][live] / denom[live]
    coef[q:] = beta[q:]
    return coef


def cgsvd_tikhonov(f: GsvdFactorization, b, mu: float) -> np.ndarray:
    """x_mu = sum_i c_i^2/(c_i^2 + mu^2 s_i^2) (u_i^T b / c_i) g_i, plus the unpaired tail."""
    if mu < 0:
        raise ParameterError(f"Invalid mu={mu}: must be non-negative")
    b = as_vector(b, "b", length=f.m)
    return f.G @ gsvd_coefficients(f, b, mu)


def tgsvd_solve(f: GsvdFactorization, b, k: int) -> np.ndarray:
    """Keep the k paired components with the largest c_i, plus the unpaired tail."""
    q = f.paired
    if not 1 <= k <= q:
        raise ParameterError(f"Invalid truncation k={k}: must lie in [1, {q}]")
    b = as_vector(b, "b", length=f.m)
    beta = f.U.T @ b
    coef = np.zeros(f.n)
    kept = np.arange(q - k, q)
    kept = kept[_live_cosines(f)[kept]]
    coef[kept] = beta[kept] / f.c[kept]
    coef[q:] = beta[q:]
    return f.G @ coef


def rgsvd(A, L, cfg: SketchConfig, augment: Optional[Sequence[np.ndarray]] = None) -> RgsvdFactors:
    """Sketch the right singular subspace of A, then factor the projected pair.

    Each augmentation vector e is orthogonalized against the current basis
    (two passes) and appended as w/||w||; a vector already inside the span is
    skipped with a warning.
    """
    A = as_matrix(A, "A")
    L = as_matrix(L, "L")
    n = A.shape[1]
    if L.shape[1] != n:
        raise ParameterError(f"Invalid pair: A has {n} columns, L has {L.shape[1]}")

    sketch = rsvd(A, cfg)
    basis = sketch.V.copy()
    skipped = 0
    for i, e in enumerate(augment or []):
        e = as_vector(e, f"augment[{i}]", length=n)
        w = e - basis @ (basis.T @ e)
        w -= basis @ (basis.T @ w)
        norm = np.linalg.norm(w)
        if norm <= AUGMENT_SKIP_RTOL * np.linalg.norm(e):
            logger.warning(f"Augmentation vector {i} lies in the sketch span (residual {norm:.2e}); skipped")
            skipped += 1
            continue
        basis = np.column_stack([basis, w / norm])

    inner = gsvd(A @ basis, L @ basis)
    logger.debug(f"rgsvd: reduced pair {A.shape[0]}x{basis.shape[1]}, {L.shape[0]}x{basis.shape[1]}")
    basis.setflags(write=False)
    return RgsvdFactors(V1_tilde=basis, inner=inner, sketch=sketch, skipped_augmentations=skipped)


def rgsvd_tikhonov(f: RgsvdFactors, b, mu: float) -> np.ndarray:
    """Tikhonov solution of the reduced pair lifted by V1_tilde."""
    return f.V1_tilde @ cgsvd_tikhonov(f.inner, b, mu)


def rgsvd_tgsvd(f: RgsvdFactors, b, k: int) -> np.ndarray:
    return f.V1_tilde @ tgsvd_solve(f.inner, b, k)



def truncated_solution(
    f: Union[SvdFactorization, GsvdFactorization, RgsvdFactors],
    b,
    k: int,
    x_exact: Optional[np.ndarray] = None,
) -> RegularizedSolution:
    """TSVD, TGSVD or randomized TGSVD solution with k kept, recorded as its truncation."""
    start = time.perf_counter()
    if isinstance(f, SvdFactorization):
        x = tsvd_solve(f, b, k)
    elif isinstance(f, GsvdFactorization):
        x = tgsvd_solve(f, b, k)
    elif isinstance(f, RgsvdFactors):
        x = rgsvd_tgsvd(f, b, k)
    else:
        raise ParameterError(f"Invalid factorization type {type(f).__name__} for a truncated solve")
    return RegularizedSolution.build(x, x_exact, truncation=int(k), elapsed=time.perf_counter() - start)
