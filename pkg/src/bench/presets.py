"""Per-problem benchmark defaults."""

from typing import Any, Dict, Optional

from config.settings import settings
from src.bench.schema import BenchConfig, Method
from src.problems.operators import OperatorKind

# sketch sizes for the non-decaying i_laplace examples, by problem order
_ILAPLACE_SAMPLE_SIZES = {500: 150, 1000: 300, 2000: 600}
_ILAPLACE_SAMPLE_RATIO = 0.3

# examples whose exact solution does not decay at the far end of the interval
_NON_DECAYING = {("i_laplace", 2), ("i_laplace", 4)}


def _example(params: Optional[Dict[str, Any]]) -> int:
    return int((params or {}).get("eg", 1))


def is_non_decaying(problem: str, params: Optional[Dict[str, Any]] = None) -> bool:
    """True when the solution carries a constant mode the sketch basis will miss."""
    if problem != "i_laplace":
        return False
    return (problem, _example(params)) in _NON_DECAYING


def preset_operator(problem: str) -> OperatorKind:
    return OperatorKind.D1 if problem == "i_laplace" else OperatorKind.D2


def preset_sample_size(problem: str, n: int, default: int, params: Optional[Dict[str, Any]] = None) -> int:
    if is_non_decaying(problem, params):
        size = _ILAPLACE_SAMPLE_SIZES.get(n, int(round(_ILAPLACE_SAMPLE_RATIO * n)))
    else:
        size = default
    return max(1, min(size, n))


def preset_config(problem: str, n: int, method: Method = Method.CGSVD, **overrides: Any) -> BenchConfig:
    """BenchConfig with the per-example operator and sample size filled in.

    Keyword overrides win over preset values; anything left unset falls back
    to the settings defaults carried by BenchConfig.
    """
    params = dict(overrides.pop("problem_params", None) or {})
    values: Dict[str, Any] = {"problem": problem, "n": n, "method": method, "problem_params": params}
    values["operator"] = overrides.pop("operator", None) or preset_operator(problem)
    if Method(method) is Method.CSVD:
        values["operator"] = OperatorKind.IDENTITY

    sample_size = overrides.pop("sample_size", None)
    if sample_size is None:
        sample_size = preset_sample_size(problem, n, settings.default_sample_size, params)
    values["sample_size"] = sample_size

    values.update({k: v for k, v in overrides.items() if v is not None})
    return BenchConfig(**values)
