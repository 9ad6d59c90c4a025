"""Spline values: coefficients over a named basis on a knot sequence."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .bspline import design_matrix, gauss_nodes
from .errors import DimensionMismatch
from .knots import KnotSequence
from .zbspline import zb_dimension, zb_to_b

if TYPE_CHECKING:
    from .ortho import OrthoBasis


class Basis(enum.Enum):
    B = "b"
    ZB = "zb"
    ORTHO = "ortho"


@dataclass(frozen=True)
class Spline:
    """A spline identified by its coefficients in one of the three bases.

    For the orthogonal basis the defining transform must be supplied via
    ``ortho``.
    """

    knots: KnotSequence
    basis: Basis
    coeffs: np.ndarray
    ortho: "OrthoBasis | None" = None

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)
        expected = (
            self.knots.n_bsplines if self.basis is Basis.B else zb_dimension(self.knots)
        )
        if c.size != expected:
            raise DimensionMismatch(
                f"{self.basis.value} basis needs {expected} coefficients, got {c.size}"
            )
        if self.basis is Basis.ORTHO and self.ortho is None:
            raise DimensionMismatch("orthogonal-basis spline needs its transform")

    def b_coeffs(self) -> np.ndarray:
        """Coefficients in the plain B-spline basis."""
        if self.basis is Basis.B:
            return self.coeffs
        if self.basis is Basis.ZB:
            return zb_to_b(self.knots, self.coeffs)
        assert self.ortho is not None
        return zb_to_b(self.knots, self.ortho.phi.T @ self.coeffs)

    def __call__(self, x: np.ndarray, deriv: int = 0) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        vals = design_matrix(self.knots, xs, deriv) @ self.b_coeffs()
        return vals if np.ndim(x) else vals[0]


def spline_integral(s: Spline) -> float:
    """Integral over the domain by exact per-interval Gauss-Legendre rule."""
    npts = math.ceil((s.knots.degree + 1) / 2) + 1
    nodes, weights = gauss_nodes(s.knots, npts)
    return float(weights @ s(nodes))
