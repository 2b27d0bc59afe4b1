"""Seeded standard-normal samples (Box-Muller over the PCG64 bit generator)."""

from typing import Tuple, Union

import numpy as np

from src.errors import ParameterError


def gaussian_samples(seed: int, size: Union[int, Tuple[int, ...]]) -> np.ndarray:
    """Draw standard-normal values reproducibly from ``seed``.

    Uniform pairs come from ``numpy.random.PCG64``; each pair (u1, u2) yields
    r*cos(2*pi*u2) and r*sin(2*pi*u2) with r = sqrt(-2 log(1 - u1)), written in
    that order. The fill order of a multi-dimensional ``size`` is row-major.
    """
    if seed < 0:
        raise ParameterError(f"Invalid seed {seed}: must be non-negative")
    shape = (size,) if isinstance(size, (int, np.integer)) else tuple(size)
    count = int(np.prod(shape))
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = (count + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    theta = 2.0 * np.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(theta)
    z[1::2] = radius * np.sin(theta)
    return z[:count].reshape(shape)
