"""Test problems, regularization operators and seeded noise."""

from src.problems.export import export_problem_csv, read_matrix_csv, read_vectors_csv
from src.problems.generators import PROBLEM_NAMES, InverseProblem, generate
from src.problems.noise import NoiseSpec, add_noise
from src.problems.operators import OperatorKind, RegularizationOperator, derivative_operator

__all__ = [
    "InverseProblem",
    "PROBLEM_NAMES",
    "generate",
    "NoiseSpec",
    "add_noise",
    "OperatorKind",
    "RegularizationOperator",
    "derivative_operator",
    "export_problem_csv",
    "read_matrix_csv",
    "read_vectors_csv",
]
