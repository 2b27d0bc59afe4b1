"""CSV export of generated problems for cross-checking elsewhere."""

from pathlib import Path
from typing import Dict, Union

import numpy as np
import pandas as pd
from loguru import logger

from src.problems.generators import InverseProblem

PathLike = Union[str, Path]

# written with 17 significant digits; read back with pandas' round-trip parser
FLOAT_FORMAT = "%.17g"


def export_problem_csv(problem: InverseProblem, directory: PathLike) -> Dict[str, Path]:
    """Write A.csv (headerless, row-major) and vectors.csv (x_exact, b_exact)."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)

    matrix_path = out_dir / "A.csv"
    vectors_path = out_dir / "vectors.csv"
    pd.DataFrame(problem.A).to_csv(matrix_path, header=False, index=False, float_format=FLOAT_FORMAT)
    pd.DataFrame({"x_exact": problem.x_exact, "b_exact": problem.b_exact}).to_csv(
        vectors_path, index=False, float_format=FLOAT_FORMAT
    )
    logger.info(f"Exported {problem.name} (n={problem.n}) to {out_dir}")
    return {"matrix": matrix_path, "vectors": vectors_path}


def read_matrix_csv(path: PathLike) -> np.ndarray:
    """Headerless numeric CSV as a float64 matrix, bit-exact for exported files."""
    frame = pd.read_csv(path, header=None, float_precision="round_trip")
    return frame.to_numpy(dtype=np.float64)


def read_vectors_csv(path: PathLike) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")
