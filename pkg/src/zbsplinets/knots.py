"""Knot sequences for splines on a bounded interval.

A knot sequence of degree ``k`` on ``[a, b]`` with ``g`` strictly increasing
inner knots is extended with ``k + 1`` coincident copies of each endpoint, so
splines built on it vanish appropriately at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInterval, KnotOutsideInterval, NonIncreasingKnots


@dataclass(frozen=True)
class KnotSequence:
    """Degree, interval and inner knots, plus the derived extended sequence.

    ``extended[j]`` holds the knot with conventional index ``j - k``, i.e. the
    extended sequence runs from index ``-k`` to ``g + k + 1`` and has exactly
    ``g + 2(k + 1)`` entries.
    """

    a: float
    b: float
    degree: int
    inner: np.ndarray
    extended: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        a, b, k = float(self.a), float(self.b), int(self.degree)
        if not a < b:
            raise EmptyInterval(f"need a < b, got [{a}, {b}]")
        if k < 0:
            raise NonIncreasingKnots(f"degree must be nonnegative, got {k}")
        inner = np.asarray(self.inner, dtype=float)
        if inner.ndim != 1:
            raise NonIncreasingKnots("inner knots must be a 1-d sequence")
        if inner.size:
            if np.any(np.diff(inner) <= 0):
                raise NonIncreasingKnots("inner knots must be strictly increasing")
            if inner[0] <= a or inner[-1] >= b:
                raise KnotOutsideInterval(
                    f"inner knots must lie strictly inside ({a}, {b})"
                )
        ext = np.concatenate([np.full(k + 1, a), inner, np.full(k + 1, b)])
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "degree", k)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "extended", ext)
        self.inner.setflags(write=False)
        self.extended.setflags(write=False)

    @property
    def g(self) -> int:
        """Number of inner knots."""
        return int(self.inner.size)

    @property
    def eta(self) -> float:
        """Length of the interval."""
        return self.b - self.a

    @property
    def n_bsplines(self) -> int:
        """Dimension of the unconstrained spline space, ``g + k + 1``."""
        return self.g + self.degree + 1

    def knot(self, i: int) -> float:
        """Knot with conventional index ``i`` in ``-k .. g+k+1``."""
        return float(self.extended[i + self.degree])

    @property
    def breakpoints(self) -> np.ndarray:
        """The ``g + 2`` distinct knots ``a, inner..., b``."""
        return np.concatenate([[self.a], self.inner, [self.b]])

    def same_as(self, other: "KnotSequence") -> bool:
        return (
            self.degree == other.degree
            and self.a == other.a
            and self.b == other.b
            and self.g == other.g
            and bool(np.all(self.inner == other.inner))
        )


def make_knots(
    a: float,
    b: float,
    g: int,
    k: int,
    inner: np.ndarray | list[float] | None = None,
) -> KnotSequence:
    """Build a knot sequence with equispaced or explicitly given inner knots.

    With ``inner=None`` the ``g`` inner knots are placed at
    ``a + i (b - a) / (g + 1)`` for ``i = 1..g``; an explicit list must be
    strictly increasing inside ``(a, b)`` and of length ``g``.
    """
    if g < 0:
        raise NonIncreasingKnots(f"g must be nonnegative, got {g}")
    if inner is None:
        pts = a + np.arange(1, g + 1) * (b - a) / (g + 1)
    else:
        pts = np.asarray(inner, dtype=float)
        if pts.size != g:
            raise NonIncreasingKnots(f"expected {g} inner knots, got {pts.size}")
    return KnotSequence(a, b, k, pts)


def dyadic_inner_count(n_levels: int, k: int) -> int:
    """Inner-knot count compatible with an ``n_levels``-deep dyadic net."""
    return (2**n_levels - 1) * (k + 1) - k


def dyadic_levels(g: int, k: int) -> int | None:
    """Number of dyadic support levels for ``g`` inner knots, or None."""
    blocks, rem = divmod(g + k, k + 1)
    if rem != 0:
        return None
    n = (blocks + 1).bit_length() - 1
    if 2**n - 1 != blocks or n < 1:
        return None
    return n
