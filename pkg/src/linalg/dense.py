"""Validation and small helpers for dense float64 arrays."""

from typing import Tuple

import numpy as np
import numpy.typing as npt

from src.errors import ParameterError

DenseMatrix = npt.NDArray[np.float64]
Vector = npt.NDArray[np.float64]

EPS = float(np.finfo(np.float64).eps)


def as_matrix(M, name: str = "matrix") -> DenseMatrix:
    """Return M as a non-empty, finite, C-ordered float64 2-D array."""
    arr = np.ascontiguousarray(M, dtype=np.float64)
    if arr.ndim != 2:
        raise ParameterError(f"Invalid {name}: expected a 2-D array, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ParameterError(f"Invalid {name}: empty array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"Invalid {name}: non-finite entries")
    return arr


def as_vector(v, name: str = "vector", length: int = None) -> Vector:
    """Return v as a finite float64 1-D array, optionally of a fixed length."""
    arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1:
        raise ParameterError(f"Invalid {name}: expected a vector, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise ParameterError(f"Invalid {name}: expected length {length}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"Invalid {name}: non-finite entries")
    return arr


def rank_tolerance(shape: Tuple[int, ...], largest: float) -> float:
    """Threshold below which a singular value (or |R_kk|) counts as zero."""
    return EPS * max(shape) * abs(largest)


def numerical_rank(values: np.ndarray, shape: Tuple[int, ...]) -> int:
    """Count entries of a nonincreasing magnitude sequence above the rank tolerance."""
    if values.size == 0:
        return 0
    mags = np.abs(values)
    tol = rank_tolerance(shape, mags.max())
    return int(np.count_nonzero(mags > tol))


def fix_column_signs(*mats: np.ndarray, reference: int = 0) -> None:
    """Flip columns in place so the largest-magnitude entry of mats[reference] is positive.

    The same flips are applied to every matrix passed, keeping paired factors consistent.
    """
    ref = mats[reference]
    if ref.size == 0:
        return
    idx = np.argmax(np.abs(ref), axis=0)
    signs = np.sign(ref[idx, np.arange(ref.shape[1])])
    signs[signs == 0] = 1.0
    for M in mats:
        M *= signs
