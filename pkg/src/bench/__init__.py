"""Benchmark harness: configurations, presets, runner and result tables."""

from src.bench.presets import is_non_decaying, preset_config
from src.bench.report import emit_table, read_results, records_frame, summarize
from src.bench.runner import (
    BenchmarkRunner,
    BenchStats,
    CaseOutcome,
    run_benchmark,
    run_case,
    run_suite,
    solve_case,
    solve_system,
)
from src.bench.schema import CSV_COLUMNS, BenchConfig, BenchRecord, Method, Rule

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "CSV_COLUMNS",
    "Method",
    "Rule",
    "preset_config",
    "is_non_decaying",
    "BenchmarkRunner",
    "BenchStats",
    "CaseOutcome",
    "run_case",
    "solve_case",
    "solve_system",
    "run_benchmark",
    "run_suite",
    "emit_table",
    "read_results",
    "records_frame",
    "summarize",
]
