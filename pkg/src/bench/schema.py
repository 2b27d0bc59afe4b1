"""Benchmark configuration and result records."""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from config.settings import settings
from src.problems.generators import PROBLEM_NAMES
from src.problems.operators import OperatorKind


class Method(str, Enum):
    """Solver pipelines."""
    CSVD = "csvd"
    CGSVD = "cgsvd"
    RGSVD = "rgsvd"
    RSVD_STD = "rsvd_std"

    @property
    def sketched(self) -> bool:
        return self in (Method.RGSVD, Method.RSVD_STD)


class Rule(str, Enum):
    """Regularization-parameter choice rules."""
    GCV = "gcv"
    LCURVE = "lcurve"
    DISCREPANCY = "discrepancy"


class BenchConfig(BaseModel):
    """One benchmark case; repetitions vary the noise seed as seed_noise + r."""

    problem: str
    problem_params: Dict[str, Any] = Field(default_factory=dict)
    n: int = Field(ge=8)
    operator: OperatorKind = OperatorKind.D2
    method: Method = Method.CGSVD
    delta: float = Field(default_factory=lambda: settings.default_delta, ge=0.0)
    sample_size: int = Field(default_factory=lambda: settings.default_sample_size, ge=1)
    power_iterations: int = Field(default=0, ge=0)
    seed_noise: int = Field(default_factory=lambda: settings.default_seed_noise, ge=0, lt=2**64)
    seed_sketch: int = Field(default_factory=lambda: settings.default_seed_sketch, ge=0, lt=2**64)
    rule: Rule = Rule.GCV
    repetitions: int = Field(default_factory=lambda: settings.default_repetitions, ge=1)
    mu: Optional[float] = Field(default=None, ge=0.0)
    augment: Optional[bool] = None  # None: decided by the preset's non_decaying flag
    tau: float = Field(default_factory=lambda: settings.discrepancy_tau, gt=0.0)

    @field_validator("problem")
    @classmethod
    def known_problem(cls, v: str) -> str:
        if v not in PROBLEM_NAMES:
            raise ValueError(f"unknown problem {v!r}; choose from {', '.join(PROBLEM_NAMES)}")
        return v

    @model_validator(mode="after")
    def operator_matches_method(self) -> "BenchConfig":
        if self.method is Method.CSVD and self.operator is not OperatorKind.IDENTITY:
            logger.warning(f"csvd solves the standard form; operator {self.operator.value} replaced by identity")
            self.operator = OperatorKind.IDENTITY
        if self.method.sketched and self.sample_size > self.n:
            raise ValueError(f"sample_size {self.sample_size} exceeds n={self.n}")
        return self

    def label(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in sorted(self.problem_params.items()))
        name = f"{self.problem}({params})" if params else self.problem
        return f"{name} n={self.n} {self.method.value}/{self.operator.value}"


# Stable column order of tabulated results.
CSV_COLUMNS: List[str] = [
    "problem", "n", "method", "operator", "l", "seed_noise", "seed_sketch",
    "mu", "rel_err", "t_factor", "t_select", "t_solve", "t_total",
]


class BenchRecord(BaseModel):
    """Outcome of one benchmark repetition."""

    problem: str
    n: int
    method: Method
    operator: OperatorKind
    l: Optional[int] = None
    seed_noise: int
    seed_sketch: Optional[int] = None
    mu: Optional[float] = None
    rel_err: float = Field(ge=0.0)
    t_factor: float = Field(ge=0.0)
    t_select: float = Field(ge=0.0)
    t_solve: float = Field(ge=0.0)
    t_total: float = Field(ge=0.0)
    rule: Optional[Rule] = None
    delta: Optional[float] = None
    timestamp: datetime = Field(default_factory=datetime.now)

    def to_row(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        return {column: data[column] for column in CSV_COLUMNS}
