"""Banded regularization operators: identity, first and second differences."""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.sparse import diags

from src.errors import ParameterError


class OperatorKind(str, Enum):
    """Supported regularization operators."""
    IDENTITY = "identity"
    D1 = "d1"
    D2 = "d2"


_STENCILS = {
    OperatorKind.D1: (1.0, -1.0),
    OperatorKind.D2: (1.0, -2.0, 1.0),
}


@dataclass(frozen=True)
class RegularizationOperator:
    kind: OperatorKind
    matrix: np.ndarray

    @property
    def null_dimension(self) -> int:
        return self.matrix.shape[1] - self.matrix.shape[0]


def derivative_operator(kind, n: int) -> RegularizationOperator:
    """Dense identity, (n-1) x n first-difference or (n-2) x n second-difference matrix."""
    try:
        kind = OperatorKind(kind)
    except ValueError:
        raise ParameterError(f"Invalid operator kind: {kind!r}")
    if n < 3:
        raise ParameterError(f"Invalid size n={n}: operators need n >= 3")

    if kind is OperatorKind.IDENTITY:
        return RegularizationOperator(kind, np.eye(n))

    stencil = _STENCILS[kind]
    rows = n - len(stencil) + 1
    matrix = diags(stencil, offsets=list(range(len(stencil))), shape=(rows, n)).toarray()
    return RegularizationOperator(kind, matrix)
