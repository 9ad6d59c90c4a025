"""Density-space operations and the centred log-ratio transform.

Densities live on a bounded interval and carry only relative information;
perturbation and powering play the role of addition and scalar multiplication.
The centred log-ratio (clr) transform maps them isometrically onto the
zero-integral subspace of square-integrable functions.  Grid data are
integrated with the trapezoid rule; exact quadrature is reserved for splines.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    GridMismatch,
    GridTooLarge,
    NonpositiveDensity,
    OverflowRisk,
    ZeroFrequency,
)

MAX_BAYES_GRID = 5000


@dataclass(frozen=True)
class GridFunction:
    """A function sampled on a strictly increasing grid."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if xs.size != values.size or xs.size < 2:
            raise GridMismatch("need matching xs/values with at least 2 points")
        if np.any(np.diff(xs) <= 0):
            raise GridMismatch("grid must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    @property
    def eta(self) -> float:
        return float(self.xs[-1] - self.xs[0])

    def integral(self) -> float:
        return float(np.trapezoid(self.values, self.xs))


@dataclass(frozen=True)
class DiscreteDensity:
    """Histogram data: bin midpoints with relative frequencies."""

    midpoints: np.ndarray
    freqs: np.ndarray

    def __post_init__(self) -> None:
        mid = np.asarray(self.midpoints, dtype=float)
        freqs = np.asarray(self.freqs, dtype=float)
        if mid.size != freqs.size or mid.size < 1:
            raise GridMismatch("need matching midpoints/freqs")
        if np.any(np.diff(mid) <= 0):
            raise GridMismatch("midpoints must be strictly increasing")
        if np.any(freqs < 0):
            raise NonpositiveDensity("frequencies must be nonnegative")
        object.__setattr__(self, "midpoints", mid)
        object.__setattr__(self, "freqs", freqs)

    def normalized(self, zero_policy: str = "reject", eps: float = 1e-6) -> "DiscreteDensity":
        """Return a copy with frequencies summing to one.

        ``zero_policy='replace'`` substitutes zeros with ``eps`` times the
        smallest positive frequency before renormalizing; the default rejects
        zero bins outright.
        """
        f = self.freqs.copy()
        if np.any(f == 0):
            if zero_policy == "reject":
                raise ZeroFrequency("zero bin frequency; use zero_policy='replace'")
            positive = f[f > 0]
            if positive.size == 0:
                raise ZeroFrequency("all frequencies are zero")
            f[f == 0] = eps * positive.min()
        return DiscreteDensity(self.midpoints, f / f.sum())


def _require_positive(f: GridFunction) -> None:
    if np.any(f.values <= 0):
        raise NonpositiveDensity("density values must be strictly positive")


def _same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.xs.size != g.xs.size or np.any(f.xs != g.xs):
        raise GridMismatch("functions must share a grid")


def clr(f: GridFunction) -> GridFunction:
    """Centred log-ratio transform: log density minus its interval mean."""
    _require_positive(f)
    logf = np.log(f.values)
    mean = np.trapezoid(logf, f.xs) / f.eta
    return GridFunction(f.xs, logf - mean)


def inv_clr(fc: GridFunction) -> GridFunction:
    """Back-transform to a unit-integral density."""
    if np.any(fc.values > 700):
        raise OverflowRisk("values too large to exponentiate")
    dens = np.exp(fc.values)
    return GridFunction(fc.xs, dens / np.trapezoid(dens, fc.xs))


def clr_discrete(d: DiscreteDensity, zero_policy: str = "reject") -> np.ndarray:
    """Discrete clr: log frequencies centred by their plain mean."""
    d = d.normalized(zero_policy)
    logs = np.log(d.freqs)
    return logs - logs.mean()


def perturb(f: GridFunction, g: GridFunction) -> GridFunction:
    """Density-space addition: pointwise product, renormalized."""
    _same_grid(f, g)
    _require_positive(f)
    _require_positive(g)
    prod = f.values * g.values
    return GridFunction(f.xs, prod / np.trapezoid(prod, f.xs))


def power(alpha: float, f: GridFunction) -> GridFunction:
    """Density-space scalar multiplication: pointwise power, renormalized."""
    _require_positive(f)
    p = f.values**alpha
    return GridFunction(f.xs, p / np.trapezoid(p, f.xs))


def l2_grid_inner(f: GridFunction, g: GridFunction) -> float:
    """Trapezoid L2 inner product of two grid functions."""
    _same_grid(f, g)
    return float(np.trapezoid(f.values * g.values, f.xs))


def _trapezoid_weights(xs: np.ndarray) -> np.ndarray:
    w = np.zeros_like(xs)
    dx = np.diff(xs)
    w[:-1] += dx / 2
    w[1:] += dx / 2
    return w


def bayes_inner(f: GridFunction, g: GridFunction) -> float:
    """The density-space inner product, by tensorized trapezoid quadrature.

    Quadratic in the grid size, so very fine grids are rejected.
    """
    _same_grid(f, g)
    _require_positive(f)
    _require_positive(g)
    if f.xs.size > MAX_BAYES_GRID:
        raise GridTooLarge(f"grid above {MAX_BAYES_GRID} points")
    lf, lg = np.log(f.values), np.log(g.values)
    df = lf[:, None] - lf[None, :]
    dg = lg[:, None] - lg[None, :]
    w = _trapezoid_weights(f.xs)
    return float(w @ (df * dg) @ w / (2 * f.eta))
