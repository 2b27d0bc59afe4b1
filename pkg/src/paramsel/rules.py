"""Regularization-parameter choice: GCV, discrepancy principle and L-curve."""

from typing import Optional

import numpy as np
from loguru import logger
from scipy.optimize import bisect, minimize_scalar

from config.settings import settings
from src.errors import SelectionError
from src.paramsel.spectrum import (
    FilterSpectrum,
    gcv_value,
    mu_grid,
    residual_norm,
    solution_norm,
)

# Speeds below this fraction of the fastest grid segment are stationary points
# of the L-curve parametrization, where curvature is numerically meaningless.
LCURVE_MIN_SPEED_RATIO = 1e-8


def _require_positive(spec: FilterSpectrum) -> None:
    if not np.any(spec.gammas > 0):
        raise SelectionError("All generalized values are zero: no parameter to choose")


def gcv_select(spec: FilterSpectrum, points: Optional[int] = None) -> float:
    """Minimize G(mu) on a log grid, then refine the best bracket by golden section."""
    _require_positive(spec)
    grid = mu_grid(spec, points)
    values = gcv_value(spec, grid)
    k = int(np.argmin(values))
    mu = float(grid[k])

    if 0 < k < grid.size - 1:
        logs = np.log10(grid)

        def objective(t: float) -> float:
            return float(gcv_value(spec, 10.0**t))

        try:
            result = minimize_scalar(
                objective, bracket=(logs[k - 1], logs[k], logs[k + 1]), method="golden"
            )
            if logs[k - 1] <= result.x <= logs[k + 1] and result.fun <= values[k]:
                mu = float(10.0 ** result.x)
        except ValueError as e:
            # flat G around the grid minimum: keep the grid point
            logger.debug(f"GCV refinement skipped: {e}")

    logger.debug(f"gcv_select: mu={mu:.4e} (grid index {k} of {grid.size})")
    return mu


def _residual_limits(spec: FilterSpectrum):
    dead = spec.gammas == 0
    floor2 = spec.residual_floor**2
    low = np.sqrt(floor2 + np.sum(spec.betas[dead] ** 2))
    high = np.sqrt(floor2 + np.sum(spec.betas**2))
    return low, high


def discrepancy_select(spec: FilterSpectrum, eps: float, tau: Optional[float] = None) -> float:
    """Find mu with ||residual(mu)|| = tau * eps by bisection in log(mu)."""
    _require_positive(spec)
    tau = settings.discrepancy_tau if tau is None else tau
    target = tau * eps
    low, high = _residual_limits(spec)
    if target <= low:
        raise SelectionError(
            f"Discrepancy target {target:.3e} is at or below the residual floor {low:.3e}"
        )
    if target >= high:
        raise SelectionError(
            f"Discrepancy target {target:.3e} is at or above the data norm {high:.3e}"
        )

    positive = spec.gammas[spec.gammas > 0]
    lo = np.log10(positive.min()) - 8.0
    hi = np.log10(positive.max()) + 8.0

    def gap(t: float) -> float:
        return float(residual_norm(spec, 10.0**t)) - target

    if gap(lo) >= 0 or gap(hi) <= 0:
        raise SelectionError(f"Discrepancy target {target:.3e} not bracketed on [1e{lo:.1f}, 1e{hi:.1f}]")
    t = bisect(gap, lo, hi, xtol=1e-12, maxiter=500)
    mu = float(10.0**t)
    logger.debug(f"discrepancy_select: mu={mu:.4e}, target={target:.4e}")
    return mu


def discrepancy_truncation(spec: FilterSpectrum, eps: float, tau: Optional[float] = None) -> int:
    """Smallest truncation k whose residual is at most tau * eps."""
    _require_positive(spec)
    tau = settings.discrepancy_tau if tau is None else tau
    target = tau * eps
    order = np.argsort(-spec.gammas, kind="stable")
    order = order[spec.gammas[order] > 0]
    b2 = spec.betas[order] ** 2
    base = spec.residual_floor**2 + np.sum(spec.betas[spec.gammas == 0] ** 2)
    # squared residual after keeping the k largest values, k = 1..len(order)
    dropped = np.append(np.cumsum(b2[::-1])[::-1], 0.0)[1:]
    residuals2 = base + dropped
    hits = np.nonzero(residuals2 <= target**2)[0]
    if hits.size == 0:
        raise SelectionError(
            f"No truncation reaches the discrepancy target {target:.3e} (best {np.sqrt(residuals2[-1]):.3e})"
        )
    k = int(hits[0]) + 1
    logger.debug(f"discrepancy_truncation: k={k}")
    return k


def lcurve_select(spec: FilterSpectrum, points: Optional[int] = None) -> float:
    """Grid point of maximum curvature of (log residual, log solution norm)."""
    _require_positive(spec)
    if np.unique(spec.gammas[spec.gammas > 0]).size < 2:
        raise SelectionError("L-curve is degenerate: a single spectral value has no corner")
    grid = mu_grid(spec, points)

    rho = np.asarray(residual_norm(spec, grid))
    eta = np.asarray(solution_norm(spec, grid))
    if np.any(rho <= 0) or np.any(eta <= 0):
        raise SelectionError("L-curve is degenerate: zero residual or solution norm on the grid")

    t = np.log(grid)
    x, y = np.log(rho), np.log(eta)
    dx, dy = np.gradient(x, t), np.gradient(y, t)
    ddx, ddy = np.gradient(dx, t), np.gradient(dy, t)
    speed2 = dx**2 + dy**2
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = (dx * ddy - ddx * dy) / speed2**1.5

    usable = np.zeros(grid.size, dtype=bool)
    usable[2:-2] = True
    usable &= np.isfinite(kappa) & (speed2 > LCURVE_MIN_SPEED_RATIO**2 * speed2.max())
    if not usable.any() or kappa[usable].max() <= 0:
        raise SelectionError("L-curve is degenerate: no point of positive curvature")

    k = int(np.flatnonzero(usable)[np.argmax(kappa[usable])])
    mu = float(grid[k])
    logger.debug(f"lcurve_select: mu={mu:.4e}, curvature={kappa[k]:.3e}")
    return mu
