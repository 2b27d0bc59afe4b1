"""Spectral form of a filtered solution, shared by all parameter-choice rules.

Both the SVD form (gamma_i = sigma_i) and the GSVD form (gamma_i = c_i/s_i)
reduce to the same quantities: filter factors f_i = gamma_i^2/(gamma_i^2+mu^2),
residual components (1 - f_i) beta_i and solution components f_i beta_i/gamma_i.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from config.settings import settings
from src.errors import ParameterError, SelectionError
from src.linalg.dense import as_vector, rank_tolerance
from src.linalg.factorizations import SvdFactorization
from src.linalg.gsvd import GsvdFactorization

ArrayOrFloat = Union[float, np.ndarray]


@dataclass(frozen=True)
class FilterSpectrum:
    """Generalized values, projected data and the parts no filter can touch.

    ``unregularized`` counts components that are always fitted exactly (filter
    factor 1, no seminorm contribution); they only enter the GCV degrees of
    freedom. ``scales`` multiplies each solution component in the (semi)norm.
    """

    gammas: np.ndarray
    betas: np.ndarray
    residual_floor: float
    rows: int
    unregularized: int = 0
    scales: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        if self.gammas.shape != self.betas.shape:
            raise ParameterError(
                f"Invalid spectrum: {self.gammas.shape[0]} values but {self.betas.shape[0]} coefficients"
            )
        if not np.all(np.isfinite(self.gammas)) or np.any(self.gammas < 0):
            raise ParameterError("Invalid spectrum: generalized values must be finite and >= 0")
        if self.scales is None:
            object.__setattr__(self, "scales", np.ones_like(self.gammas))

    @property
    def gamma_max(self) -> float:
        return float(self.gammas.max()) if self.gammas.size else 0.0

    def scaled(self, alpha: float) -> "FilterSpectrum":
        """The spectrum of alpha * b."""
        return FilterSpectrum(
            self.gammas, alpha * self.betas, abs(alpha) * self.residual_floor,
            self.rows, self.unregularized, self.scales,
        )


def spectrum_from_svd(f: SvdFactorization, b, unregularized: int = 0) -> FilterSpectrum:
    """Spectrum of a (possibly truncated or randomized) SVD; tiny sigma count as zero."""
    b = as_vector(b, "b", length=f.U.shape[0])
    beta = f.U.T @ b
    floor = float(np.linalg.norm(b - f.U @ beta))
    s = f.singular_values
    gammas = s.copy()
    if s.size and s[0] > 0:
        gammas[s <= rank_tolerance(f.shape, s[0])] = 0.0
    else:
        gammas[:] = 0.0
    return FilterSpectrum(gammas, beta, floor, rows=f.U.shape[0], unregularized=unregularized)


def spectrum_from_gsvd(f: GsvdFactorization, b) -> FilterSpectrum:
    """Spectrum of a GSVD; indices with s_i = 0 are unregularized (filter value 1)."""
    b = as_vector(b, "b", length=f.m)
    beta = f.U.T @ b
    floor = float(np.linalg.norm(b - f.U @ beta))
    q = f.paired
    regular = np.zeros(f.n, dtype=bool)
    s_max = f.s.max()
    if s_max > 0:
        regular[:q] = f.s[:q] > rank_tolerance((f.p, f.n), s_max)
    c_tol = rank_tolerance((f.m, f.n), f.c.max())
    c = f.c[regular]
    gammas = np.where(c > c_tol, c / f.s[regular], 0.0)
    return FilterSpectrum(
        gammas, beta[regular], floor, rows=f.m, unregularized=int(np.count_nonzero(~regular))
    )


def _as_mus(mu: ArrayOrFloat) -> np.ndarray:
    mus = np.atleast_1d(np.asarray(mu, dtype=np.float64))
    if np.any(mus < 0):
        raise ParameterError("Invalid mu: must be non-negative")
    return mus


def _unwrap(values: np.ndarray, mu: ArrayOrFloat) -> ArrayOrFloat:
    return float(values[0]) if np.ndim(mu) == 0 else values


def filter_factors(gammas: np.ndarray, mu: float) -> np.ndarray:
    """gamma^2/(gamma^2 + mu^2), with 0 where gamma = 0."""
    g2 = gammas**2
    denom = g2 + mu**2
    return np.divide(g2, denom, out=np.zeros_like(g2), where=denom > 0)


def _complements(spec: FilterSpectrum, mus: np.ndarray) -> np.ndarray:
    # 1 - f computed directly as mu^2/(gamma^2 + mu^2) to avoid cancellation
    g2 = spec.gammas[None, :] ** 2
    m2 = mus[:, None] ** 2
    denom = g2 + m2
    return np.divide(m2, denom, out=np.ones_like(denom), where=denom > 0)


def residual_norm(spec: FilterSpectrum, mu: ArrayOrFloat) -> ArrayOrFloat:
    mus = _as_mus(mu)
    comp = _complements(spec, mus) * spec.betas[None, :]
    values = np.sqrt(spec.residual_floor**2 + np.sum(comp**2, axis=1))
    return _unwrap(values, mu)


def solution_norm(spec: FilterSpectrum, mu: ArrayOrFloat) -> ArrayOrFloat:
    """Norm (or L-seminorm) of the regularized solution."""
    mus = _as_mus(mu)
    g = spec.gammas[None, :]
    denom = g**2 + mus[:, None] ** 2
    ratio = np.divide(g, denom, out=np.zeros_like(denom), where=(g > 0) & (denom > 0))
    comp = ratio * (spec.betas * spec.scales)[None, :]
    return _unwrap(np.sqrt(np.sum(comp**2, axis=1)), mu)


def gcv_value(spec: FilterSpectrum, mu: ArrayOrFloat) -> ArrayOrFloat:
    """||residual||^2 / (rows - sum f_i - unregularized)^2; inf when no freedom is left."""
    mus = _as_mus(mu)
    comp = _complements(spec, mus)
    res = spec.residual_floor**2 + np.sum((comp * spec.betas[None, :]) ** 2, axis=1)
    # m - unregularized - sum f_i, accumulated from 1 - f_i so small mu keeps its digits
    dof = (spec.rows - spec.unregularized - spec.gammas.size) + np.sum(comp, axis=1)
    values = np.full_like(res, np.inf)
    positive = dof > 0
    values[positive] = res[positive] / dof[positive] ** 2
    return _unwrap(values, mu)


def mu_grid(spec: FilterSpectrum, points: Optional[int] = None) -> np.ndarray:
    """Logarithmic grid over [lower_ratio * gamma_max, upper_ratio * gamma_max]."""
    points = points or settings.grid_points
    if points < 3:
        raise ParameterError(f"Invalid grid size {points}: need at least 3 points")
    gmax = spec.gamma_max
    if gmax <= 0:
        raise SelectionError("No positive generalized value: the filter is identically zero")
    return np.logspace(
        np.log10(settings.grid_lower_ratio * gmax),
        np.log10(settings.grid_upper_ratio * gmax),
        points,
    )
