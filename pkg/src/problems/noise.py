"""Relative Gaussian noise on the right-hand side."""

import numpy as np
from pydantic import BaseModel, Field

from src.errors import ParameterError
from src.linalg.dense import as_vector
from src.linalg.sampling import gaussian_samples


class NoiseSpec(BaseModel):
    """Relative noise level and seed for one noise realization."""
    delta: float = Field(ge=0.0)
    seed: int = Field(ge=0, lt=2**64)


def add_noise(b, spec: NoiseSpec) -> np.ndarray:
    """Return b + delta * (||b|| / ||s||) * s, so that ||noise|| = delta * ||b||."""
    b = as_vector(b, "b")
    if spec.delta == 0.0:
        return b.copy()
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        raise ParameterError("Invalid right-hand side: relative noise is undefined for b = 0")
    s = gaussian_samples(spec.seed, b.shape[0])
    return b + spec.delta * (b_norm / np.linalg.norm(s)) * s
