"""Benchmark runner: generate, perturb, factor, select a parameter and solve.

Timings cover the three phases that make up the reported cost: the
(approximate) factorization, the parameter choice and the regularized solve.
Problem generation and noise injection are excluded.
"""

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from functools import lru_cache
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError

from config.settings import settings
from src.bench.presets import is_non_decaying
from src.bench.schema import BenchConfig, BenchRecord, Method, Rule
from src.errors import BenchCaseError, ParameterError, RegusolveError
from src.linalg.dense import as_matrix, as_vector
from src.linalg.factorizations import svd
from src.linalg.gsvd import gsvd
from src.paramsel import (
    FilterSpectrum,
    discrepancy_select,
    gcv_select,
    lcurve_select,
    spectrum_from_gsvd,
    spectrum_from_svd,
)
from src.problems import InverseProblem, NoiseSpec, add_noise, derivative_operator, generate
from src.solvers.gsvdreg import RegularizedSolution, cgsvd_tikhonov, rgsvd, rgsvd_tikhonov
from src.solvers.rsvd import SketchConfig, rsvd, tikhonov_filtered
from src.transform import back_map, to_standard_form

Solver = Callable[[float], np.ndarray]


@dataclass
class PhaseTimes:
    factor: float = 0.0
    select: float = 0.0
    solve: float = 0.0

    @property
    def total(self) -> float:
        return self.factor + self.select + self.solve


@dataclass
class SystemSolution:
    """Regularized solution of one (A, L, b) with the spectrum it was chosen on."""
    x: np.ndarray
    mu: float
    spectrum: FilterSpectrum
    times: PhaseTimes

    def regularized(self, x_exact: Optional[np.ndarray] = None) -> RegularizedSolution:
        return RegularizedSolution.build(self.x, x_exact, mu=self.mu, elapsed=self.times.total)


@dataclass
class CaseOutcome:
    record: BenchRecord
    solution: RegularizedSolution
    x_exact: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return self.solution.x


def _factor(
    method: Method,
    A: np.ndarray,
    L: Optional[np.ndarray],
    b: np.ndarray,
    sketch: Optional[SketchConfig],
    augment: Sequence[np.ndarray],
) -> Tuple[FilterSpectrum, Solver]:
    if method is Method.CSVD:
        f = svd(A, "A")
        return spectrum_from_svd(f, b), lambda mu: tikhonov_filtered(f, b, mu)

    if L is None:
        raise ParameterError(f"Method {method.value} needs a regularization operator")
    if method is Method.CGSVD:
        g = gsvd(A, L)
        return spectrum_from_gsvd(g, b), lambda mu: cgsvd_tikhonov(g, b, mu)

    if sketch is None:
        raise ParameterError(f"Method {method.value} needs a sketch configuration")
    if method is Method.RGSVD:
        r = rgsvd(A, L, sketch, augment)
        return spectrum_from_gsvd(r.inner, b), lambda mu: rgsvd_tikhonov(r, b, mu)

    system = to_standard_form(A, L, b)
    k = rsvd(system.K, sketch)
    rhs = system.projected_rhs
    spectrum = spectrum_from_svd(k, rhs, unregularized=system.rank_aw)
    return spectrum, lambda mu: back_map(system, tikhonov_filtered(k, rhs, mu))


def select_mu(
    spectrum: FilterSpectrum,
    rule: Rule,
    noise_norm: Optional[float] = None,
    tau: Optional[float] = None,
) -> float:
    """Apply a parameter-choice rule; the discrepancy rule needs the noise norm."""
    rule = Rule(rule)
    if rule is Rule.GCV:
        return gcv_select(spectrum)
    if rule is Rule.LCURVE:
        return lcurve_select(spectrum)
    if noise_norm is None:
        raise ParameterError("The discrepancy rule needs the noise norm")
    return discrepancy_select(spectrum, noise_norm, tau)


def solve_system(
    A,
    L,
    b,
    method: Method,
    rule: Rule = Rule.GCV,
    sketch: Optional[SketchConfig] = None,
    mu: Optional[float] = None,
    noise_norm: Optional[float] = None,
    tau: Optional[float] = None,
    augment: Sequence[np.ndarray] = (),
) -> SystemSolution:
    """Factor, choose mu (unless given) and solve; each phase is timed."""
    method = Method(method)
    A = as_matrix(A, "A")
    L = None if L is None else as_matrix(L, "L")
    b = as_vector(b, "b", length=A.shape[0])
    times = PhaseTimes()

    start = time.perf_counter()
    spectrum, solver = _factor(method, A, L, b, sketch, augment)
    times.factor = time.perf_counter() - start

    if mu is None:
        start = time.perf_counter()
        mu = select_mu(spectrum, rule, noise_norm, tau)
        times.select = time.perf_counter() - start

    start = time.perf_counter()
    x = solver(mu)
    times.solve = time.perf_counter() - start
    return SystemSolution(x=x, mu=float(mu), spectrum=spectrum, times=times)


@lru_cache(maxsize=8)
def _cached_problem(name: str, n: int, params: Tuple[Tuple[str, object], ...]) -> InverseProblem:
    return generate(name, n, **dict(params))


def _augmentation(cfg: BenchConfig, L: Optional[np.ndarray]) -> List[np.ndarray]:
    if cfg.method is not Method.RGSVD or L is None:
        return []
    wanted = cfg.augment
    if wanted is None:
        wanted = is_non_decaying(cfg.problem, cfg.problem_params) and L.shape[0] < L.shape[1]
    return [np.ones(cfg.n)] if wanted else []


def solve_case(cfg: BenchConfig) -> CaseOutcome:
    """Run one repetition of a case with its own noise seed."""
    try:
        problem = _cached_problem(cfg.problem, cfg.n, tuple(sorted(cfg.problem_params.items())))
        b = add_noise(problem.b_exact, NoiseSpec(delta=cfg.delta, seed=cfg.seed_noise))
        noise_norm = float(np.linalg.norm(b - problem.b_exact))
        L = None if cfg.method is Method.CSVD else derivative_operator(cfg.operator, cfg.n).matrix
        sketch = None
        if cfg.method.sketched:
            sketch = SketchConfig(
                sample_size=cfg.sample_size, seed=cfg.seed_sketch, power_iterations=cfg.power_iterations
            )

        solution = solve_system(
            problem.A, L, b, cfg.method,
            rule=cfg.rule, sketch=sketch, mu=cfg.mu,
            noise_norm=noise_norm, tau=cfg.tau, augment=_augmentation(cfg, L),
        )
    except (RegusolveError, LinAlgError) as e:
        logger.error(f"Case {cfg.label()} (seed_noise={cfg.seed_noise}) failed: {e}")
        raise BenchCaseError(f"{cfg.label()} failed: {e}", config=cfg) from e

    times = solution.times
    result = solution.regularized(problem.x_exact)
    record = BenchRecord(
        problem=cfg.problem,
        n=cfg.n,
        method=cfg.method,
        operator=cfg.operator,
        l=cfg.sample_size if cfg.method.sketched else None,
        seed_noise=cfg.seed_noise,
        seed_sketch=cfg.seed_sketch if cfg.method.sketched else None,
        mu=solution.mu,
        rel_err=result.rel_err,
        t_factor=times.factor,
        t_select=times.select,
        t_solve=times.solve,
        t_total=times.total,
        rule=None if cfg.mu is not None else cfg.rule,
        delta=cfg.delta,
    )
    logger.info(
        f"{cfg.label()} seed={cfg.seed_noise}: mu={record.mu:.3e}, "
        f"rel_err={record.rel_err:.3e}, T={record.t_total:.3f}s"
    )
    return CaseOutcome(record=record, solution=result, x_exact=np.asarray(problem.x_exact))


def run_case(cfg: BenchConfig) -> BenchRecord:
    return solve_case(cfg).record


@dataclass
class BenchStats:
    """Counters for a benchmark session."""
    start_time: datetime
    end_time: Optional[datetime] = None
    cases_run: int = 0
    failures: int = 0
    error_details: List[str] = field(default_factory=list)

    @property
    def duration(self) -> Optional[timedelta]:
        if self.end_time:
            return self.end_time - self.start_time
        return None

    @property
    def success_rate(self) -> float:
        total = self.cases_run + self.failures
        if total == 0:
            return 0.0
        return self.cases_run / total


class BenchmarkRunner:
    """Runs repetitions and suites of benchmark cases, collecting statistics."""

    def __init__(self, on_outcome: Optional[Callable[[CaseOutcome], None]] = None):
        self.stats = BenchStats(start_time=datetime.now())
        self.on_outcome = on_outcome
        self._lock = threading.Lock()

    def _run_one(self, cfg: BenchConfig) -> BenchRecord:
        try:
            outcome = solve_case(cfg)
        except BenchCaseError as e:
            with self._lock:
                self.stats.failures += 1
                self.stats.error_details.append(str(e))
            raise
        with self._lock:
            self.stats.cases_run += 1
        if self.on_outcome:
            self.on_outcome(outcome)
        return outcome.record

    @staticmethod
    def _repetitions(cfg: BenchConfig) -> Iterator[BenchConfig]:
        for r in range(cfg.repetitions):
            yield cfg.model_copy(update={"seed_noise": cfg.seed_noise + r, "repetitions": 1})

    def run_benchmark(self, cfg: BenchConfig) -> List[BenchRecord]:
        """All repetitions of one case, with noise seeds seed_noise + r."""
        logger.info(f"Running {cfg.label()} x{cfg.repetitions}")
        return [self._run_one(case) for case in self._repetitions(cfg)]

    def _run_tolerant(self, cfg: BenchConfig) -> List[BenchRecord]:
        """Like run_benchmark, but stops at the first failing repetition and keeps what ran."""
        logger.info(f"Running {cfg.label()} x{cfg.repetitions}")
        records = []
        for case in self._repetitions(cfg):
            try:
                records.append(self._run_one(case))
            except BenchCaseError as e:
                logger.warning(
                    f"Skipping remaining repetitions of {cfg.label()} after {len(records)} completed: {e}"
                )
                break
        return records

    def run_suite(self, configs: Iterable[BenchConfig], max_workers: Optional[int] = None) -> List[BenchRecord]:
        """Run independent cases, in parallel when max_workers > 1.

        A failing case is logged and counted; the rest of the suite continues.
        Records come back in configuration order.
        """
        configs = list(configs)
        workers = max_workers or settings.max_workers
        self.stats = BenchStats(start_time=datetime.now())
        try:
            if workers <= 1:
                batches = [self._run_tolerant(cfg) for cfg in configs]
            else:
                with ThreadPoolExecutor(max_workers=workers) as executor:
                    batches = list(executor.map(self._run_tolerant, configs))
        finally:
            self.stats.end_time = datetime.now()
            logger.info(
                f"Suite finished: {self.stats.cases_run} runs, {self.stats.failures} failures, "
                f"duration {self.stats.duration}"
            )
        return [record for batch in batches for record in batch]


# Convenience functions
def run_benchmark(cfg: BenchConfig) -> List[BenchRecord]:
    return BenchmarkRunner().run_benchmark(cfg)


def run_suite(configs: Iterable[BenchConfig], max_workers: Optional[int] = None) -> List[BenchRecord]:
    return BenchmarkRunner().run_suite(configs, max_workers)
