"""Zero-integral spline basis built from first derivatives of B-splines.

The degree-``k`` basis function with conventional index ``i`` is the first
derivative of the order-``k + 2`` B-spline with the same index, expressed
through the difference formula so evaluation stays exact.  The space has
dimension ``g + k``, one less than the unconstrained spline space.
"""

from __future__ import annotations

import numpy as np

from .bspline import bspline_table
from .errors import (
    DegenerateSpace,
    DerivOrderTooHigh,
    DimensionMismatch,
    IndexOutOfRange,
    PointOutsideDomain,
)
from .knots import KnotSequence


def zb_dimension(knots: KnotSequence) -> int:
    """Dimension ``g + k`` of the zero-integral spline space."""
    dim = knots.g + knots.degree
    if dim < 1:
        raise DegenerateSpace("zero-integral space is trivial for g + k = 0")
    return dim


def conversion_matrices(knots: KnotSequence) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal scaling ``D`` and difference matrix ``K``.

    B-spline coefficients of a zero-integral spline are ``D K z`` for the
    coefficient vector ``z`` in this basis.  ``K`` is lower bidiagonal with
    ``+1`` on the diagonal and ``-1`` below, so its columns sum to zero.
    """
    k = knots.degree
    nb = knots.n_bsplines
    t = knots.extended
    spans = t[k + 1 : k + 1 + nb] - t[:nb]
    d = (k + 1) / spans
    kmat = np.zeros((nb, nb - 1))
    idx = np.arange(nb - 1)
    kmat[idx, idx] = 1.0
    kmat[idx + 1, idx] = -1.0
    return np.diag(d), kmat


def zb_to_b(knots: KnotSequence, z: np.ndarray) -> np.ndarray:
    """B-spline coefficients of the spline with coefficients ``z``."""
    z = np.asarray(z, dtype=float)
    dim = zb_dimension(knots)
    if z.shape[-1] != dim:
        raise DimensionMismatch(f"expected {dim} coefficients, got {z.shape[-1]}")
    d, kmat = conversion_matrices(knots)
    return z @ (d @ kmat).T


def zb_design_matrix(knots: KnotSequence, xs: np.ndarray, deriv: int = 0) -> np.ndarray:
    """Values (or derivatives) of all ``g + k`` basis functions at ``xs``."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(xs < knots.a) or np.any(xs > knots.b):
        raise PointOutsideDomain(f"points must lie in [{knots.a}, {knots.b}]")
    if deriv > knots.degree:
        raise DerivOrderTooHigh(
            f"derivative order {deriv} exceeds spline degree {knots.degree}"
        )
    b = bspline_table(knots, knots.degree + 1, xs, deriv)
    d, kmat = conversion_matrices(knots)
    return b @ (d @ kmat)


def eval_zbspline(knots: KnotSequence, i: int, x: float, deriv: int = 0) -> float:
    """Value of the basis function with conventional index ``i`` at ``x``."""
    k = knots.degree
    p = i + k
    if p < 0 or p >= zb_dimension(knots):
        raise IndexOutOfRange(f"index {i} outside -{k}..{knots.g - 1}")
    if x < knots.a or x > knots.b:
        raise PointOutsideDomain(f"{x} outside [{knots.a}, {knots.b}]")
    return float(zb_design_matrix(knots, np.array([x]), deriv)[0, p])


def zb_support(knots: KnotSequence, p: int) -> tuple[int, int]:
    """Support of basis function at storage position ``p``.

    Returned as a half-open range ``(lo, hi)`` of breakpoint-interval indices
    (``g + 1`` intervals in total), clipped to the domain.
    """
    k = knots.degree
    lo = max(p - k, 0)
    hi = min(p + 2, knots.g + 1)
    return lo, hi
