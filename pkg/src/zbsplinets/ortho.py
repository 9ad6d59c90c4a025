"""Orthonormal bases of the zero-integral spline space.

Four construction strategies are provided: one-sided Gram-Schmidt in either
direction, the symmetric two-sided variant, and the dyadic net ("splinet")
construction that keeps supports logarithmically small.  Every strategy is
expressed as a linear transform ``phi`` acting on the zero-integral basis:
row ``r`` of ``phi`` holds the coefficients of output function ``r``.

Construction is instrumented: each functional inner product evaluated during
orthogonalization increments a counter.  One-sided sweeps skip (and do not
count) pairs with disjoint supports; the central step of the two-sided scheme
and the neighbor projections of the dyadic scheme evaluate every pair.  The
closed-form predictions replicated by ``predicted_ip_count`` follow the same
convention and exclude the in-tuplet orthogonalization of the final (top)
level of the dyadic net, so the instrumentation does too.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bspline import gauss_nodes
from .errors import DegenerateSpace, NonDyadicKnots, NumericalBreakdown
from .inner import InstrumentationContext, zb_gram
from .knots import KnotSequence, dyadic_levels
from .spline import Basis, Spline
from .zbspline import zb_design_matrix, zb_dimension, zb_support

SUPPORT_NORM_TOL = 1e-11


class Strategy(enum.Enum):
    GS_LEFT_RIGHT = "gs-lr"
    GS_RIGHT_LEFT = "gs-rl"
    GS_TWO_SIDED = "gs-two-sided"
    SPLINET = "splinet"


@dataclass(frozen=True)
class OrthoBasis:
    """Result of an orthogonalization run.

    ``supports[r]`` is a half-open range of knot-interval indices containing
    the numerical support of function ``r``.  ``levels`` is populated for the
    dyadic strategy only (1 = smallest supports).
    """

    knots: KnotSequence
    strategy: Strategy
    phi: np.ndarray
    supports: tuple[tuple[int, int], ...]
    ip_count: int
    levels: tuple[int, ...] | None = None
    fully_orthogonal: bool = True

    @property
    def dim(self) -> int:
        return self.phi.shape[0]

    def function(self, p: int) -> Spline:
        """Basis function ``p`` as a spline over the zero-integral basis."""
        return Spline(self.knots, Basis.ZB, self.phi[p])

    def design(self, xs: np.ndarray, deriv: int = 0) -> np.ndarray:
        """Collocation matrix of the basis at ``xs`` (one column per function)."""
        return zb_design_matrix(self.knots, xs, deriv) @ self.phi.T

    def gram_matrix(self, deriv: int = 0) -> np.ndarray:
        """Gram matrix of ``deriv``-th derivatives (the penalty matrix)."""
        return self.phi @ zb_gram(self.knots, deriv) @ self.phi.T

    def spline(self, coeffs: np.ndarray) -> Spline:
        return Spline(self.knots, Basis.ORTHO, coeffs, ortho=self)


class _Builder:
    """Mutable state of an orthogonalization run over coefficient vectors."""

    def __init__(self, knots: KnotSequence, ctx: InstrumentationContext) -> None:
        p = zb_dimension(knots)
        self.knots = knots
        self.ctx = ctx
        self.gram = zb_gram(knots, 0)
        self.w = np.eye(p)
        self.supports = [zb_support(knots, r) for r in range(p)]

    def overlap(self, r1: int, r2: int) -> bool:
        (a1, b1), (a2, b2) = self.supports[r1], self.supports[r2]
        return max(a1, a2) < min(b1, b2)

    def inner(self, r1: int, r2: int, counted: bool = True) -> float:
        if counted:
            self.ctx.add()
        return float(self.w[r1] @ self.gram @ self.w[r2])

    def project(self, r: int, m: int, counted: bool = True) -> None:
        c = self.inner(r, m, counted)
        self.w[r] -= c * self.w[m]
        if self.overlap(r, m):
            (a1, b1), (a2, b2) = self.supports[r], self.supports[m]
            self.supports[r] = (min(a1, a2), max(b1, b2))

    def normalize(self, r: int) -> None:
        norm = math.sqrt(max(float(self.w[r] @ self.gram @ self.w[r]), 0.0))
        if norm < 1e-13:
            raise NumericalBreakdown(f"norm underflow at position {r}")
        self.w[r] /= norm

    def pair_combine(self, ri: int, rj: int, counted: bool = True) -> None:
        """Symmetrically mix two unit-norm vectors so they become orthogonal."""
        s = self.inner(ri, rj, counted)
        if abs(s) >= 1.0 - 1e-12:
            raise NumericalBreakdown(f"nearly dependent pair ({ri}, {rj})")
        ap, am = 1.0 / math.sqrt(1.0 + s), 1.0 / math.sqrt(1.0 - s)
        ca, cb = 0.5 * (ap + am), 0.5 * (ap - am)
        vi, vj = self.w[ri].copy(), self.w[rj].copy()
        self.w[ri] = ca * vi + cb * vj
        self.w[rj] = cb * vi + ca * vj
        if self.overlap(ri, rj) or cb != 0.0:
            (a1, b1), (a2, b2) = self.supports[ri], self.supports[rj]
            union = (min(a1, a2), max(b1, b2))
            self.supports[ri] = self.supports[rj] = union

    def one_sided(self, order: list[int], done: list[int]) -> None:
        """Classical sweep; disjoint pairs are skipped and not counted."""
        for r in order:
            for m in done:
                if self.overlap(r, m):
                    self.project(r, m, counted=True)
            self.normalize(r)
            done.append(r)

    def central_pairs(self, members: list[int], done: list[int], counted: bool = True) -> None:
        """Pair members first-with-last, projecting each against ``done``.

        Every projection is evaluated (and counted) regardless of support
        overlap; an odd leftover is orthogonalized against all of ``done``.
        """
        i, j = 0, len(members) - 1
        while i < j:
            for r in (members[i], members[j]):
                for m in done:
                    self.project(r, m, counted)
                self.normalize(r)
            self.pair_combine(members[i], members[j], counted)
            done.extend((members[i], members[j]))
            i += 1
            j -= 1
        if i == j:
            r = members[i]
            for m in done:
                self.project(r, m, counted)
            self.normalize(r)
            done.append(r)


def _build_two_sided(b: _Builder, members: list[int], done: list[int]) -> None:
    lo = min(b.supports[r][0] for r in members)
    hi = max(b.supports[r][1] for r in members)
    left, right, central = [], [], []
    for r in members:
        s0, s1 = b.supports[r]
        if 2 * s0 < lo + hi and 2 * s1 > lo + hi:
            central.append(r)
        elif 2 * s1 <= lo + hi:
            left.append(r)
        else:
            right.append(r)
    b.one_sided(sorted(left), done)
    b.one_sided(sorted(right, reverse=True), done)
    b.central_pairs(sorted(central), done)


def _build_splinet(
    b: _Builder, k: int, n_levels: int, max_levels: int | None
) -> tuple[tuple[int, ...], bool]:
    p = b.w.shape[0]
    blocks = [list(range(s, s + k + 1)) for s in range(0, p, k + 1)]
    levels = [0] * p
    level = 1
    complete = True
    while blocks:
        if max_levels is not None and level > max_levels:
            complete = False
            break
        if len(blocks) == 1:
            # top of the net: in-tuplet products excluded from the count
            b.central_pairs(blocks[0], done=[], counted=False)
            for r in blocks[0]:
                levels[r] = level
            blocks = []
            break
        bottom = blocks[0::2]
        for blk in bottom:
            b.central_pairs(blk, done=[], counted=True)
            for r in blk:
                levels[r] = level
        for pos in range(1, len(blocks), 2):
            neighbors = blocks[pos - 1] + blocks[pos + 1]
            for r in blocks[pos]:
                for m in neighbors:
                    b.project(r, m, counted=True)
        blocks = blocks[1::2]
        level += 1
    return tuple(levels), complete


def orthogonalize(
    knots: KnotSequence,
    strategy: Strategy,
    ctx: InstrumentationContext | None = None,
    partial_levels: int | None = None,
) -> OrthoBasis:
    """Build an orthonormal basis of the zero-integral spline space.

    ``partial_levels`` (dyadic strategy only) stops the recursion after that
    many support levels; the result is then flagged as not fully orthogonal.
    """
    dim = zb_dimension(knots)
    if dim < 2:
        raise DegenerateSpace("orthogonalization needs at least two basis functions")
    ctx = ctx if ctx is not None else InstrumentationContext()
    b = _Builder(knots, ctx)
    levels: tuple[int, ...] | None = None
    complete = True
    if strategy is Strategy.GS_LEFT_RIGHT:
        b.one_sided(list(range(dim)), done=[])
    elif strategy is Strategy.GS_RIGHT_LEFT:
        b.one_sided(list(range(dim - 1, -1, -1)), done=[])
    elif strategy is Strategy.GS_TWO_SIDED:
        _build_two_sided(b, list(range(dim)), done=[])
    elif strategy is Strategy.SPLINET:
        n = dyadic_levels(knots.g, knots.degree)
        if n is None:
            raise NonDyadicKnots(
                f"g={knots.g} is not dyadic for degree {knots.degree}"
            )
        levels, complete = _build_splinet(b, knots.degree, n, partial_levels)
    else:  # pragma: no cover
        raise ValueError(f"unknown strategy {strategy}")
    phi = b.w
    phi.setflags(write=False)
    return OrthoBasis(
        knots=knots,
        strategy=strategy,
        phi=phi,
        supports=tuple(b.supports),
        ip_count=ctx.count,
        levels=levels,
        fully_orthogonal=complete,
    )


def measured_supports(basis: OrthoBasis) -> np.ndarray:
    """Measured support length of every basis function.

    A knot interval belongs to the support when the per-interval L2 norm of
    the function exceeds a small threshold.
    """
    knots = basis.knots
    npts = knots.degree + 2
    nodes, weights = gauss_nodes(knots, npts)
    vals = basis.design(nodes)  # (n_nodes, dim)
    n_int = knots.g + 1
    sq = (weights[:, None] * vals**2).reshape(n_int, npts, basis.dim).sum(axis=1)
    norms = np.sqrt(np.maximum(sq, 0.0))
    lengths = np.diff(knots.breakpoints)
    return (norms > SUPPORT_NORM_TOL).T @ lengths


def relative_total_support(basis: OrthoBasis) -> float:
    """Total measured support of the basis divided by the domain length."""
    return float(np.sum(measured_supports(basis)) / basis.knots.eta)


def predicted_support(strategy: Strategy, g: int, k: int) -> float:
    """Closed-form relative total support on equispaced dyadic knots."""
    if strategy in (Strategy.GS_LEFT_RIGHT, Strategy.GS_RIGHT_LEFT):
        return g / 2 + k + 1 - 1 / (g + 1)
    if strategy is Strategy.GS_TWO_SIDED:
        return g / 4 + k + 7 / 4 - 2 / (g + 1)
    n = dyadic_levels(g, k)
    if n is None:
        raise NonDyadicKnots(f"g={g} is not dyadic for degree {k}")
    return float((k + 1) * n)


def predicted_ip_count(strategy: Strategy, g: int, k: int) -> int:
    """Closed-form inner-product count on equispaced dyadic knots."""
    if strategy in (Strategy.GS_LEFT_RIGHT, Strategy.GS_RIGHT_LEFT):
        return (k + 1) * g + k * (k - 1) // 2 - 1
    if strategy is Strategy.GS_TWO_SIDED:
        return (k + 1) * (2 * g - 4) - k * (k + 1) // 2
    n = dyadic_levels(g, k)
    if n is None:
        raise NonDyadicKnots(f"g={g} is not dyadic for degree {k}")
    return (5 * k + 4) * (g + k) // 2 - 2 * n * (k + 1) ** 2 - k * (k + 1) // 2
