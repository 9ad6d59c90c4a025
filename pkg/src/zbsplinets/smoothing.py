"""Zero-integral smoothing splines.

The fit minimizes a penalized least-squares functional over the zero-integral
spline space, expressed in an orthonormal basis: a roughness term weighted by
``1 - alpha`` plus a weighted data misfit weighted by ``alpha``.  The unique
minimizer exists iff the collocation matrix has full column rank, which is
checked through a knot/data interlacing scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .bayes import DiscreteDensity, GridFunction, clr_discrete, inv_clr
from .errors import (
    DimensionMismatch,
    InfeasibleDesign,
    PointOutsideDomain,
    SingularSystem,
    ZbError,
)
from .knots import KnotSequence
from .ortho import OrthoBasis, Strategy, orthogonalize
from .spline import Spline


@dataclass(frozen=True)
class SmoothingProblem:
    """Data, weights and tuning parameters of one smoothing fit."""

    basis: OrthoBasis
    xs: np.ndarray
    ys: np.ndarray
    alpha: float = 0.5
    penalty_order: int = 1
    weights: np.ndarray | None = None

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.size != ys.size:
            raise DimensionMismatch("xs and ys must have equal length")
        knots = self.basis.knots
        if np.any(xs < knots.a) or np.any(xs > knots.b):
            raise PointOutsideDomain("data abscissae must lie in the domain")
        if not 0 < self.alpha <= 1:
            raise ZbError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 1 <= self.penalty_order <= knots.degree - 1:
            raise ZbError(
                f"penalty order must be in 1..{knots.degree - 1}, got {self.penalty_order}"
            )
        w = (
            np.ones_like(xs)
            if self.weights is None
            else np.asarray(self.weights, dtype=float)
        )
        if w.size != xs.size or np.any(w <= 0):
            raise DimensionMismatch("weights must be positive and match xs")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class FitResult:
    coeffs: np.ndarray
    spline: Spline
    residual_ss: float
    penalty: float


def check_rank(basis: OrthoBasis, xs: np.ndarray) -> bool:
    """Whether the collocation matrix at ``xs`` has full column rank.

    Greedy interlacing scan: for every basis position there must exist a
    strictly increasing selection of data points, one per position, lying
    strictly between the two knots bracketing that function's support.
    Duplicated abscissae count once.
    """
    return failed_interlacing_index(basis, xs) is None


def failed_interlacing_index(basis: OrthoBasis, xs: np.ndarray) -> int | None:
    """First basis position for which no interlacing point exists, or None."""
    knots = basis.knots
    k = knots.degree
    pts = np.unique(np.asarray(xs, dtype=float))
    dim = basis.dim
    j = 0
    for r in range(dim):
        lo = knots.extended[r]
        hi = knots.extended[r + k + 1]
        while j < pts.size and pts[j] <= lo:
            j += 1
        if j >= pts.size or pts[j] >= hi:
            return r
        j += 1
    return None


def fit(problem: SmoothingProblem) -> FitResult:
    """Solve the penalized least-squares problem in the orthonormal basis."""
    basis = problem.basis
    alpha, l = problem.alpha, problem.penalty_order
    colloc = basis.design(problem.xs)
    penalty = basis.gram_matrix(l)
    w = problem.weights
    lhs = (1 - alpha) * penalty + alpha * colloc.T @ (w[:, None] * colloc)
    rhs = alpha * colloc.T @ (w * problem.ys)
    try:
        cho = scipy.linalg.cho_factor(lhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from None
    coeffs = scipy.linalg.cho_solve(cho, rhs)
    resid = problem.ys - colloc @ coeffs
    return FitResult(
        coeffs=coeffs,
        spline=basis.spline(coeffs),
        residual_ss=float(np.sum(w * resid**2)),
        penalty=float(coeffs @ penalty @ coeffs),
    )


def fit_density(
    d: DiscreteDensity,
    knots: KnotSequence,
    alpha: float = 0.5,
    penalty_order: int = 1,
    strategy: Strategy = Strategy.SPLINET,
    basis: OrthoBasis | None = None,
    grid: int = 501,
    zero_policy: str = "reject",
) -> tuple[FitResult, GridFunction]:
    """Histogram-to-density pipeline: discrete clr, smoothing fit, back-transform.

    Returns the fit and the unit-integral density sampled on ``grid`` points.
    """
    if basis is None:
        basis = orthogonalize(knots, strategy)
    ys = clr_discrete(d, zero_policy)
    if failed_interlacing_index(basis, d.midpoints) is not None and alpha >= 1:
        raise InfeasibleDesign("data points do not interlace the knots")
    problem = SmoothingProblem(
        basis=basis, xs=d.midpoints, ys=ys, alpha=alpha, penalty_order=penalty_order
    )
    result = fit(problem)
    xs = np.linspace(knots.a, knots.b, grid)
    density = inv_clr(GridFunction(xs, result.spline(xs)))
    return result, density
