"""Discretized Fredholm and Volterra test problems of the first kind.

Every generator returns a square A, the sampled exact solution and b = A x.
Discretizations follow the Regularization Tools conventions (midpoint
quadrature, Galerkin for phillips, Gauss-Laguerre for i_laplace).
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import eigh_tridiagonal, toeplitz

from src.errors import ParameterError


@dataclass(frozen=True)
class InverseProblem:
    """A generated test instance."""

    name: str
    A: np.ndarray
    x_exact: np.ndarray
    b_exact: np.ndarray
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.A.shape[1])


def _midpoints(n: int, a: float, b: float) -> np.ndarray:
    h = (b - a) / n
    return a + h * (np.arange(1, n + 1) - 0.5)


def _shaw(n: int) -> Tuple[np.ndarray, np.ndarray]:
    if n % 2:
        raise ParameterError(f"Invalid size n={n}: shaw requires an even order")
    h = np.pi / n
    theta = _midpoints(n, -np.pi / 2, np.pi / 2)
    co = np.cos(theta)
    psi = np.pi * np.sin(theta)
    ss = psi[:, None] + psi[None, :]
    # np.sinc(x) = sin(pi x)/(pi x) with the x = 0 limit handled
    A = h * ((co[:, None] + co[None, :]) * np.sinc(ss / np.pi)) ** 2
    x = 2.0 * np.exp(-6.0 * (theta - 0.8) ** 2) + np.exp(-2.0 * (theta + 0.5) ** 2)
    return A, x


def _foxgood(n: int) -> Tuple[np.ndarray, np.ndarray]:
    h = 1.0 / n
    t = _midpoints(n, 0.0, 1.0)
    A = h * np.sqrt(t[:, None] ** 2 + t[None, :] ** 2)
    return A, t.copy()


def _gravity(n: int, d: float = 0.25) -> Tuple[np.ndarray, np.ndarray]:
    if d <= 0:
        raise ParameterError(f"Invalid depth d={d}: must be positive")
    t = _midpoints(n, 0.0, 1.0)
    A = (1.0 / n) * d / (d**2 + (t[:, None] - t[None, :]) ** 2) ** 1.5
    x = np.sin(np.pi * t) + 0.5 * np.sin(2.0 * np.pi * t)
    return A, x


def _heat(n: int, kappa: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    if kappa <= 0:
        raise ParameterError(f"Invalid kappa={kappa}: must be positive")
    h = 1.0 / n
    t = _midpoints(n, 0.0, 1.0)
    c = h / (2.0 * kappa * np.sqrt(np.pi))
    d = 1.0 / (4.0 * kappa**2)
    kernel = c * t ** (-1.5) * np.exp(-d / t)
    first_row = np.zeros(n)
    first_row[0] = kernel[0]
    A = toeplitz(kernel, first_row)

    x = np.zeros(n)
    half = n // 2
    ti = np.arange(1, half + 1) * 20.0 / n
    x[:half] = np.where(
        ti < 2,
        0.75 * ti**2 / 4.0,
        np.where(ti < 3, 0.75 + (ti - 2.0) * (3.0 - ti), 0.75 * np.exp(-(ti - 3.0) * 2.0)),
    )
    return A, x


def _phillips(n: int) -> Tuple[np.ndarray, np.ndarray]:
    if n % 4:
        raise ParameterError(f"Invalid size n={n}: phillips requires n divisible by 4")
    h = 12.0 / n
    n4 = n // 4
    scale = 9.0 / (h * np.pi**2)
    c = np.cos(np.arange(-1, n4 + 1) * 4.0 * np.pi / n)
    r1 = np.zeros(n)
    r1[:n4] = h + scale * (2.0 * c[1 : n4 + 1] - c[0:n4] - c[2 : n4 + 2])
    r1[n4] = h / 2.0 + scale * (np.cos(4.0 * np.pi / n) - 1.0)
    A = toeplitz(r1)

    x = np.zeros(n)
    x[2 * n4 : 3 * n4] = r1[:n4] / h
    x[n4 : 2 * n4] = x[2 * n4 : 3 * n4][::-1]
    return A, x


def _laguerre_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Laguerre nodes and log-weights from the Jacobi matrix eigensystem.

    The recurrence has diagonal 2j - 1 and off-diagonal j; each weight is the
    squared leading component of its eigenvector. Weights for the largest nodes
    underflow long before exp(t) * w does, so columns are assembled from
    2 log|v0|; an underflowed component gets a log-weight of -inf.
    """
    diagonal = 2.0 * np.arange(1, n + 1) - 1.0
    off = -np.arange(1, n, dtype=np.float64)
    nodes, vectors = eigh_tridiagonal(diagonal, off)
    with np.errstate(divide="ignore"):
        log_weights = 2.0 * np.log(np.abs(vectors[0, :]))
    return nodes, log_weights


def _i_laplace(n: int, eg: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    eg = int(eg)
    if eg not in (1, 2, 3, 4):
        raise ParameterError(f"Invalid example eg={eg}: i_laplace supports 1, 2, 3, 4")
    s = 10.0 * np.arange(1, n + 1) / n
    t, log_w = _laguerre_rule(n)
    live = np.isfinite(log_w)
    A = np.zeros((n, n))
    A[:, live] = np.exp((1.0 - s[:, None]) * t[None, live] + log_w[None, live])
    if not live.all():
        logger.debug(f"i_laplace n={n}: {int((~live).sum())} columns zeroed by weight underflow")

    if eg == 1:
        x = np.exp(-t / 2.0)
    elif eg == 2:
        x = 1.0 - np.exp(-t / 2.0)
    elif eg == 3:
        x = t**2 * np.exp(-t / 2.0)
    else:
        x = np.where(t <= 2.0, 0.0, 1.0)
    return A, x


_GENERATORS: Dict[str, Callable[..., Tuple[np.ndarray, np.ndarray]]] = {
    "shaw": _shaw,
    "i_laplace": _i_laplace,
    "foxgood": _foxgood,
    "gravity": _gravity,
    "heat": _heat,
    "phillips": _phillips,
}

PROBLEM_NAMES = tuple(_GENERATORS)


def generate(name: str, n: int, **params) -> InverseProblem:
    """Build the named test problem of order n; b_exact is A @ x_exact."""
    generator = _GENERATORS.get(name)
    if generator is None:
        raise ParameterError(f"Unknown problem {name!r}; choose from {', '.join(PROBLEM_NAMES)}")
    if n < 8:
        raise ParameterError(f"Invalid size n={n}: test problems need n >= 8")
    try:
        A, x = generator(n, **params)
    except TypeError as e:
        raise ParameterError(f"Invalid parameters for {name}: {e}") from e

    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(x))):
        raise ParameterError(f"Generator {name} produced non-finite values at n={n}")
    A.setflags(write=False)
    x.setflags(write=False)
    b = A @ x
    b.setflags(write=False)
    logger.debug(f"Generated {name} n={n} params={params}")
    return InverseProblem(name=name, A=A, x_exact=x, b_exact=b, params=dict(params))
