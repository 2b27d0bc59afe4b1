#!/usr/bin/env python3
"""regusolve command-line interface: benchmarks, one-shot solves, tables and exports."""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
import typer
from loguru import logger
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

from config.settings import load_key_value_file, settings
from src.bench import BenchmarkRunner, CaseOutcome, Method, Rule, emit_table, preset_config, read_results
from src.bench.report import TABLE_FORMATS, markdown_table, print_summary
from src.bench.runner import solve_system
from src.errors import RegusolveError
from src.problems import OperatorKind, derivative_operator, export_problem_csv, generate, read_matrix_csv
from src.solvers.rsvd import SketchConfig

app = typer.Typer(name="regusolve", help="Tikhonov regularization for discrete ill-posed problems.", no_args_is_help=True)
console = Console(stderr=True)

# keys accepted in --config files for the bench command
_BENCH_KEYS = {
    "problem", "n", "method", "operator", "delta", "sample_size", "power_iterations", "rule",
    "seed_noise", "seed_sketch", "reps", "mu", "tau", "augment", "format", "out", "plot_out", "param",
}


def configure_logging(level: str, log_file: bool = False) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())
    if log_file:
        logs_dir = Path(settings.logs_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)
        logger.add(logs_dir / "regusolve_{time}.log", level="DEBUG", rotation="10 MB", retention=5)


def _fail(e: Exception) -> None:
    console.print(f"[bold red]Error:[/bold red] {e}")
    raise typer.Exit(code=1)


def _parse_scalar(text: str) -> Any:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


def _parse_params(items: List[str]) -> Dict[str, Any]:
    params = {}
    for item in items:
        if "=" not in item:
            raise typer.BadParameter(f"expected key=value, got {item!r}", param_hint="--param")
        key, value = item.split("=", 1)
        params[key.strip()] = _parse_scalar(value.strip())
    return params


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Log level (defaults to settings)."),
    log_file: bool = typer.Option(False, "--log-file", help="Also log to a rotating file in the logs directory."),
):
    configure_logging(log_level or settings.log_level, log_file)


@app.command()
def bench(
    problem: Optional[str] = typer.Option(None, "--problem", help="Test problem name."),
    n: Optional[int] = typer.Option(None, "--n", help="Problem order."),
    method: Optional[Method] = typer.Option(None, "--method"),
    operator: Optional[OperatorKind] = typer.Option(None, "--operator", help="Defaults to the problem preset."),
    delta: Optional[float] = typer.Option(None, "--delta", help="Relative noise level."),
    sample_size: Optional[int] = typer.Option(None, "--sample-size", "-l"),
    power_iterations: Optional[int] = typer.Option(None, "--power-iterations"),
    rule: Optional[Rule] = typer.Option(None, "--rule"),
    seed_noise: Optional[int] = typer.Option(None, "--seed-noise"),
    seed_sketch: Optional[int] = typer.Option(None, "--seed-sketch"),
    reps: Optional[int] = typer.Option(None, "--reps", help="Repetitions with seeds seed_noise + r."),
    mu: Optional[float] = typer.Option(None, "--mu", help="Fixed regularization parameter; skips the rule."),
    tau: Optional[float] = typer.Option(None, "--tau", help="Discrepancy safety factor."),
    augment: Optional[bool] = typer.Option(None, "--augment/--no-augment", help="Constant-mode augmentation."),
    param: Optional[List[str]] = typer.Option(None, "--param", help="Problem parameter key=value, repeatable."),
    fmt: Optional[str] = typer.Option(None, "--format", help="Output format: csv or md."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the table here instead of stdout."),
    plot_out: Optional[Path] = typer.Option(None, "--plot-out", help="CSV of x and x_exact for the first run."),
    config: Optional[Path] = typer.Option(None, "--config", exists=True, dir_okay=False, help="key=value file."),
):
    """Run one benchmark case over several noise realizations."""
    try:
        file_values = load_key_value_file(config) if config else {}
    except (OSError, ValueError) as e:
        _fail(e)
    unknown = set(file_values) - _BENCH_KEYS
    if unknown:
        raise typer.BadParameter(f"unknown keys {', '.join(sorted(unknown))}", param_hint="--config")

    def pick(key: str, flag: Any) -> Any:
        return flag if flag is not None else file_values.get(key)

    problem = pick("problem", problem)
    n = pick("n", n)
    if problem is None or n is None:
        raise typer.BadParameter("--problem and --n are required (flag or config file)")
    fmt = pick("format", fmt) or "csv"
    if fmt not in TABLE_FORMATS:
        raise typer.BadParameter(f"choose from {', '.join(TABLE_FORMATS)}", param_hint="--format")
    out = pick("out", out)
    plot_out = pick("plot_out", plot_out)

    file_params = [p for p in str(file_values.get("param", "")).split(",") if p.strip()]
    params = _parse_params(file_params)
    params.update(_parse_params(param or []))

    try:
        cfg = preset_config(
            problem,
            int(n),
            pick("method", method) or Method.CGSVD,
            problem_params=params,
            operator=pick("operator", operator),
            delta=pick("delta", delta),
            sample_size=pick("sample_size", sample_size),
            power_iterations=pick("power_iterations", power_iterations),
            rule=pick("rule", rule),
            seed_noise=pick("seed_noise", seed_noise),
            seed_sketch=pick("seed_sketch", seed_sketch),
            repetitions=pick("reps", reps),
            mu=pick("mu", mu),
            tau=pick("tau", tau),
            augment=pick("augment", augment),
        )
    except ValueError as e:
        _fail(e)

    first: List[CaseOutcome] = []
    with Progress(
        SpinnerColumn(), TextColumn("{task.description}"), BarColumn(), TimeElapsedColumn(),
        console=console, transient=True,
    ) as progress:
        task = progress.add_task(cfg.label(), total=cfg.repetitions)

        def on_outcome(outcome: CaseOutcome) -> None:
            if not first:
                first.append(outcome)
            progress.advance(task)

        runner = BenchmarkRunner(on_outcome=on_outcome)
        try:
            records = runner.run_benchmark(cfg)
        except RegusolveError as e:
            _fail(e)

    text = emit_table(records, fmt)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
        console.print(f"✅ Wrote {len(records)} records to {out}")
    else:
        typer.echo(text, nl=False)

    if plot_out and first:
        outcome = first[0]
        pd.DataFrame(
            {"index": np.arange(outcome.x.size), "x": outcome.x, "x_exact": outcome.x_exact}
        ).to_csv(plot_out, index=False)
        console.print(f"📈 Plot data written to {plot_out}")

    print_summary(records, console)


@app.command()
def solve(
    matrix: Path = typer.Option(..., "--matrix", exists=True, dir_okay=False, help="Headerless CSV of A."),
    rhs: Path = typer.Option(..., "--rhs", exists=True, dir_okay=False, help="Headerless one-column CSV of b."),
    operator_file: Optional[Path] = typer.Option(None, "--operator-file", exists=True, dir_okay=False),
    operator: Optional[OperatorKind] = typer.Option(None, "--operator"),
    method: Method = typer.Option(Method.CGSVD, "--method"),
    rule: Rule = typer.Option(Rule.GCV, "--rule"),
    sample_size: Optional[int] = typer.Option(None, "--sample-size", "-l"),
    seed_sketch: Optional[int] = typer.Option(None, "--seed-sketch"),
    power_iterations: int = typer.Option(0, "--power-iterations"),
    noise_level: Optional[float] = typer.Option(None, "--noise-level", help="Noise norm for the discrepancy rule."),
    mu: Optional[float] = typer.Option(None, "--mu"),
    tau: Optional[float] = typer.Option(None, "--tau"),
    augment: bool = typer.Option(False, "--augment/--no-augment"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write x here instead of stdout."),
):
    """Solve one regularized problem read from CSV files."""
    if operator_file and operator:
        raise typer.BadParameter("give either --operator-file or --operator, not both")
    try:
        A = read_matrix_csv(matrix)
        b = read_matrix_csv(rhs).ravel()
        n = A.shape[1]
        if operator_file:
            L = read_matrix_csv(operator_file)
        else:
            L = derivative_operator(operator or OperatorKind.IDENTITY, n).matrix

        sketch = None
        if method.sketched:
            sketch = SketchConfig(
                sample_size=sample_size or min(settings.default_sample_size, min(A.shape)),
                seed=settings.default_seed_sketch if seed_sketch is None else seed_sketch,
                power_iterations=power_iterations,
            )
        solution = solve_system(
            A, L, b, method,
            rule=rule, sketch=sketch, mu=mu, noise_norm=noise_level, tau=tau,
            augment=[np.ones(n)] if augment else [],
        )
    except (RegusolveError, ValueError, OSError) as e:
        _fail(e)

    frame = pd.DataFrame({"x": solution.x})
    if out:
        frame.to_csv(out, index=False, float_format="%.17g")
        console.print(f"✅ Solution written to {out}")
    else:
        typer.echo(frame.to_csv(index=False, float_format="%.17g"), nl=False)
    console.print(f"μ = {solution.mu:.6e}, T = {solution.times.total:.3f}s")


@app.command()
def table(
    paths: List[Path] = typer.Argument(..., exists=True, dir_okay=False, help="Result CSV files."),
    out: Optional[Path] = typer.Option(None, "--out"),
):
    """Aggregate result CSV files into a Markdown table of medians."""
    try:
        text = markdown_table(read_results(paths))
    except RegusolveError as e:
        _fail(e)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        console.print(f"✅ Table written to {out}")
    else:
        typer.echo(text, nl=False)


@app.command()
def export(
    problem: str = typer.Option(..., "--problem"),
    n: int = typer.Option(..., "--n"),
    param: Optional[List[str]] = typer.Option(None, "--param", help="key=value, repeatable."),
    out_dir: Optional[Path] = typer.Option(None, "--out-dir"),
):
    """Write a generated test problem as A.csv and vectors.csv."""
    params = _parse_params(param or [])
    target = out_dir or Path(settings.results_dir) / f"{problem}_{n}"
    try:
        paths = export_problem_csv(generate(problem, n, **params), target)
    except (RegusolveError, OSError) as e:
        _fail(e)
    console.print(f"✅ Exported {problem} n={n}: {paths['matrix']}, {paths['vectors']}")


if __name__ == "__main__":
    app()
