"""B-spline evaluation, derivatives and design matrices.

Evaluation follows the Cox-de Boor recurrence on the extended knot sequence.
Knot intervals are half-open ``[t_j, t_{j+1})`` with the last nonempty
interval closed at ``b`` so that evaluation is total on ``[a, b]`` and the
partition of unity holds at the right endpoint.  Terms with a zero-width
denominator (coincident knots) are defined as zero.
"""

from __future__ import annotations

import numpy as np

from .errors import DerivOrderTooHigh, IndexOutOfRange, PointOutsideDomain
from .knots import KnotSequence


def _zero_interval_indicators(t: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Order-1 (degree-0) basis table, shape ``(len(x), len(t) - 1)``."""
    x = x[:, None]
    lo, hi = t[None, :-1], t[None, 1:]
    table = ((x >= lo) & (x < hi)).astype(float)
    b = t[-1]
    closure = (x[:, 0] == b)
    if np.any(closure):
        j = np.flatnonzero((t[:-1] < b) & (t[1:] == b))
        if j.size:
            table[closure, j[0]] = 1.0
    return table


def bspline_table(knots: KnotSequence, order: int, x: np.ndarray, deriv: int = 0) -> np.ndarray:
    """Values (or ``deriv``-th derivatives) of all order-``order`` B-splines.

    Returns shape ``(len(x), len(extended) - order)``; column ``p`` holds the
    B-spline with conventional index ``p - k``.
    """
    t = knots.extended
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if order < 1 or order > t.size - 1:
        raise IndexOutOfRange(f"order {order} not supported on this sequence")
    if deriv < 0:
        raise DerivOrderTooHigh("derivative order must be nonnegative")
    if deriv >= order:
        # derivative of a degree < deriv polynomial piece
        return np.zeros((x.size, t.size - order))
    table = _zero_interval_indicators(t, x)
    for m in range(2, order + 1):
        n = t.size - m
        new = np.zeros((x.size, n))
        den_left = t[m - 1 : m - 1 + n] - t[:n]
        den_right = t[m : m + n] - t[1 : 1 + n]
        if deriv and m > order - deriv:
            # switch to the derivative recurrence for the last ``deriv`` steps
            for j in range(n):
                if den_left[j] > 0:
                    new[:, j] += (m - 1) * table[:, j] / den_left[j]
                if den_right[j] > 0:
                    new[:, j] -= (m - 1) * table[:, j + 1] / den_right[j]
        else:
            for j in range(n):
                if den_left[j] > 0:
                    new[:, j] += (x - t[j]) / den_left[j] * table[:, j]
                if den_right[j] > 0:
                    new[:, j] += (t[j + m] - x) / den_right[j] * table[:, j + 1]
        table = new
    return table


def eval_bspline(knots: KnotSequence, i: int, order: int, x: float, deriv: int = 0) -> float:
    """Value of the B-spline with conventional index ``i`` at a point."""
    k = knots.degree
    p = i + k
    n = knots.extended.size - order
    if p < 0 or p >= n:
        raise IndexOutOfRange(f"index {i} outside -{k}..{n - 1 - k} for order {order}")
    return float(bspline_table(knots, order, np.array([x]), deriv)[0, p])


def design_matrix(knots: KnotSequence, xs: np.ndarray, deriv: int = 0) -> np.ndarray:
    """Collocation matrix of the degree-``k`` B-spline basis at ``xs``.

    Entry ``(j, p)`` is the ``deriv``-th derivative of the basis function with
    conventional index ``p - k`` at ``xs[j]``.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < knots.a) or np.any(xs > knots.b):
        raise PointOutsideDomain(f"points must lie in [{knots.a}, {knots.b}]")
    if deriv > knots.degree:
        raise DerivOrderTooHigh(
            f"derivative order {deriv} exceeds spline degree {knots.degree}"
        )
    return bspline_table(knots, knots.degree + 1, xs, deriv)


def gauss_nodes(knots: KnotSequence, npts: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on every knot interval.

    Returns ``(nodes, weights)`` flattened over the ``g + 1`` intervals, exact
    for piecewise polynomials of degree ``2 * npts - 1``.
    """
    u, w = np.polynomial.legendre.leggauss(npts)
    bp = knots.breakpoints
    lo, hi = bp[:-1], bp[1:]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (hi + lo)[:, None] + half[:, None] * u[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights
