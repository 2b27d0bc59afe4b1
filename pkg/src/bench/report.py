"""Result tables: CSV, Markdown in the method-grouped layout, and rich console output."""

from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import pandas as pd
from loguru import logger
from rich.console import Console
from rich.table import Table

from src.bench.schema import CSV_COLUMNS, BenchRecord, Method
from src.errors import ParameterError

TABLE_FORMATS = ("csv", "md")
_GROUP_KEYS = ["problem", "n", "operator", "method"]

Records = Union[Sequence[BenchRecord], pd.DataFrame]


def records_frame(records: Records) -> pd.DataFrame:
    """Records as a DataFrame in the stable column order."""
    if isinstance(records, pd.DataFrame):
        missing = [c for c in CSV_COLUMNS if c not in records.columns]
        if missing:
            raise ParameterError(f"Result table is missing columns: {', '.join(missing)}")
        frame = records[CSV_COLUMNS].copy()
    else:
        frame = pd.DataFrame([r.to_row() for r in records], columns=CSV_COLUMNS)
    return frame.astype({"l": "Int64", "seed_sketch": "Int64"})


def read_results(paths: Iterable[Union[str, Path]]) -> pd.DataFrame:
    """Concatenate result CSV files written by the bench command."""
    frames = []
    for path in paths:
        try:
            frames.append(pd.read_csv(path))
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            logger.error(f"Error reading results from {path}: {e}")
            raise ParameterError(f"Cannot read results from {path}: {e}") from e
    if not frames:
        raise ParameterError("No result files given")
    return records_frame(pd.concat(frames, ignore_index=True))


def summarize(records: Records) -> pd.DataFrame:
    """Median mu, rel_err and timings per (problem, n, operator, method)."""
    frame = records_frame(records)
    if frame.empty:
        raise ParameterError("Nothing to summarize: no records")
    grouped = frame.groupby(_GROUP_KEYS, sort=False)
    summary = grouped[["mu", "rel_err", "t_factor", "t_select", "t_solve", "t_total"]].median()
    summary["runs"] = grouped.size()
    return summary.reset_index()


def _method_order(methods: Iterable[str]) -> List[str]:
    known = [m.value for m in Method]
    present = list(dict.fromkeys(methods))
    return sorted(present, key=lambda m: known.index(m) if m in known else len(known))


def _fmt(value, spec: str) -> str:
    return "-" if pd.isna(value) else format(value, spec)


def markdown_table(records: Records) -> str:
    """One row per problem and size, with T(s) / mu / err columns grouped by method."""
    summary = summarize(records)
    methods = _method_order(summary["method"])
    header = ["problem", "n"]
    for method in methods:
        label = method.upper()
        header += [f"{label} T(s)", f"{label} μ", f"{label} err"]

    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for (problem, n), rows in summary.groupby(["problem", "n"], sort=False):
        by_method = rows.set_index("method")
        cells = [str(problem), str(n)]
        for method in methods:
            if method in by_method.index:
                row = by_method.loc[[method]].iloc[0]
                cells += [_fmt(row["t_total"], ".3g"), _fmt(row["mu"], ".2e"), _fmt(row["rel_err"], ".2e")]
            else:
                cells += ["-", "-", "-"]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def emit_table(records: Records, fmt: str) -> str:
    """Render records as CSV (one row per repetition) or Markdown (medians)."""
    if fmt not in TABLE_FORMATS:
        raise ParameterError(f"Invalid table format {fmt!r}; choose from {', '.join(TABLE_FORMATS)}")
    frame = records_frame(records)
    if frame.empty:
        raise ParameterError("Nothing to tabulate: no records")
    if fmt == "csv":
        return frame.to_csv(index=False)
    return markdown_table(frame)


def summary_table(records: Records, title: str = "Benchmark summary") -> Table:
    summary = summarize(records)
    table = Table(title=title, show_header=True)
    table.add_column("Problem", style="bold cyan")
    table.add_column("n", justify="right")
    table.add_column("Operator", justify="center")
    table.add_column("Method", style="bold")
    table.add_column("μ (median)", justify="right")
    table.add_column("rel. error", justify="right")
    table.add_column("T(s)", justify="right")
    table.add_column("Runs", justify="right")
    for row in summary.itertuples(index=False):
        table.add_row(
            str(row.problem), str(row.n), str(row.operator), str(row.method),
            _fmt(row.mu, ".3e"), _fmt(row.rel_err, ".3e"), _fmt(row.t_total, ".3f"), str(row.runs),
        )
    return table


def print_summary(records: Records, console: Optional[Console] = None) -> None:
    (console or Console()).print(summary_table(records))
