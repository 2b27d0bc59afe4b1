"""Standard-form and general-form regularized solvers."""

from src.solvers.gsvdreg import (
    RegularizedSolution,
    RgsvdFactors,
    cgsvd_tikhonov,
    relative_error,
    rgsvd,
    rgsvd_tgsvd,
    rgsvd_tikhonov,
    tgsvd_solve,
    truncated_solution,
)
from src.solvers.reduced import (
    SchurBlockTerms,
    nearby_pair,
    reduced_solution,
    schur_block_terms,
    truncated_block_solution,
)
from src.solvers.rsvd import SketchConfig, rsvd, tikhonov_filtered, tsvd_solve

__all__ = [
    "SketchConfig",
    "rsvd",
    "tikhonov_filtered",
    "tsvd_solve",
    "RegularizedSolution",
    "RgsvdFactors",
    "cgsvd_tikhonov",
    "relative_error",
    "rgsvd",
    "rgsvd_tgsvd",
    "rgsvd_tikhonov",
    "tgsvd_solve",
    "truncated_solution",
    "SchurBlockTerms",
    "nearby_pair",
    "reduced_solution",
    "schur_block_terms",
    "truncated_block_solution",
]
