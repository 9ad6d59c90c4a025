"""Exact L2 inner products of splines and their derivatives.

All integrals use per-interval Gauss-Legendre rules with enough nodes to be
exact for the polynomial degree at hand, so structural zeros (disjoint
supports) come out exactly zero.
"""

from __future__ import annotations

import numpy as np

from .bspline import gauss_nodes
from .errors import DerivOrderTooHigh, KnotMismatch
from .knots import KnotSequence
from .spline import Basis, Spline
from .zbspline import zb_design_matrix


class InstrumentationContext:
    """Counts inner-product evaluations consumed by an orthogonalization run.

    Single-owner: do not share one context across concurrent runs.
    """

    def __init__(self) -> None:
        self.count = 0

    def add(self, n: int = 1) -> None:
        self.count += n


def _quad_points(knots: KnotSequence, deriv: int) -> tuple[np.ndarray, np.ndarray]:
    # integrand degree 2(k - deriv); one spare node beyond exactness
    npts = (knots.degree - deriv + 1) + 1
    return gauss_nodes(knots, max(npts, 1))


def zb_gram(knots: KnotSequence, deriv: int = 0) -> np.ndarray:
    """Gram matrix of ``deriv``-th derivatives of the zero-integral basis."""
    if deriv > knots.degree:
        raise DerivOrderTooHigh(
            f"derivative order {deriv} exceeds spline degree {knots.degree}"
        )
    nodes, weights = _quad_points(knots, deriv)
    zd = zb_design_matrix(knots, nodes, deriv)
    return zd.T @ (weights[:, None] * zd)


def support_mask(s: Spline) -> np.ndarray:
    """Boolean mask over the ``g + 1`` knot intervals covered by ``s``.

    Derived from the nonzero coefficients, so it is a superset of the exact
    numerical support.
    """
    knots = s.knots
    k = knots.degree
    n_int = knots.g + 1
    mask = np.zeros(n_int, dtype=bool)
    if s.basis is Basis.ORTHO:
        assert s.ortho is not None
        for p in np.flatnonzero(s.coeffs):
            lo, hi = s.ortho.supports[p]
            mask[lo:hi] = True
        return mask
    width = k + 1 if s.basis is Basis.B else k + 2
    for p in np.flatnonzero(s.coeffs):
        mask[max(p - k, 0) : min(p - k + width, n_int)] = True
    return mask


def l2_inner(
    s1: Spline,
    s2: Spline,
    deriv: int = 0,
    ctx: InstrumentationContext | None = None,
) -> float:
    """Integral of the product of ``deriv``-th derivatives over the domain.

    When an instrumentation context is given, the counter is incremented only
    for pairs whose supports overlap on a set of positive measure; disjoint
    pairs return zero without counting.
    """
    if not s1.knots.same_as(s2.knots):
        raise KnotMismatch("splines must share a knot sequence")
    if deriv > s1.knots.degree:
        raise DerivOrderTooHigh(
            f"derivative order {deriv} exceeds spline degree {s1.knots.degree}"
        )
    if not np.any(support_mask(s1) & support_mask(s2)):
        return 0.0
    if ctx is not None:
        ctx.add()
    nodes, weights = _quad_points(s1.knots, deriv)
    return float(np.sum(weights * s1(nodes, deriv) * s2(nodes, deriv)))


def gram(
    splines: list[Spline],
    deriv: int = 0,
    ctx: InstrumentationContext | None = None,
) -> np.ndarray:
    """Full symmetric matrix of pairwise inner products."""
    n = len(splines)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = l2_inner(splines[i], splines[j], deriv, ctx)
    return out


def nonzero_count(m: np.ndarray, threshold_abs: float = 1e-10) -> int:
    """Number of entries with absolute value above the threshold."""
    if threshold_abs < 0:
        raise ValueError("threshold must be nonnegative")
    return int(np.count_nonzero(np.abs(np.asarray(m)) > threshold_abs))


def coefficient_inner(u: np.ndarray, g: np.ndarray, v: np.ndarray) -> float:
    """Inner product of two splines given by coefficient vectors and a Gram."""
    return float(u @ g @ v)
