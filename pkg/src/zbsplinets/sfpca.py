"""Simplicial functional PCA on orthonormal-basis coefficients.

With an orthonormal basis, functional PCA of clr-represented densities
reduces to multivariate PCA of the coefficient matrix: principal-component
curves are splines whose coefficients are the eigenvectors of the sample
covariance of the rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ComponentOutOfRange, DimensionMismatch, TooFewObservations
from .ortho import OrthoBasis
from .spline import Spline


@dataclass(frozen=True)
class CoefficientDataset:
    """Observations as rows of coefficients in an orthonormal basis."""

    basis: OrthoBasis
    coeffs: np.ndarray
    ids: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        c = np.atleast_2d(np.asarray(self.coeffs, dtype=float))
        if c.shape[1] != self.basis.dim:
            raise DimensionMismatch(
                f"expected {self.basis.dim} columns, got {c.shape[1]}"
            )
        if self.ids is not None and len(self.ids) != c.shape[0]:
            raise DimensionMismatch("ids must match the number of rows")
        object.__setattr__(self, "coeffs", c)

    @property
    def n_obs(self) -> int:
        return self.coeffs.shape[0]


@dataclass(frozen=True)
class FpcaResult:
    eigenvalues: np.ndarray
    loadings: np.ndarray  # columns are component loading vectors
    explained: np.ndarray
    mean_coeffs: np.ndarray
    basis: OrthoBasis
    breakdown: np.ndarray | None = None  # sparse variant: components that died

    def pc_curve(self, component: int) -> Spline:
        self._check(component)
        return self.basis.spline(self.loadings[:, component])

    def _check(self, component: int) -> None:
        if not 0 <= component < self.loadings.shape[1]:
            raise ComponentOutOfRange(f"component {component} out of range")


def _fix_signs(loadings: np.ndarray) -> np.ndarray:
    out = loadings.copy()
    for c in range(out.shape[1]):
        col = out[:, c]
        if col[np.argmax(np.abs(col))] < 0:
            out[:, c] = -col
    return out


def fpca(data: CoefficientDataset) -> FpcaResult:
    """Eigendecompose the sample covariance of the coefficient rows.

    Eigenvalues descend; each loading's largest-magnitude entry is positive.
    """
    if data.n_obs < 2:
        raise TooFewObservations("need at least two observations")
    mean = data.coeffs.mean(axis=0)
    centered = data.coeffs - mean
    cov = centered.T @ centered / (data.n_obs - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = _fix_signs(eigvecs[:, order])
    total = eigvals.sum()
    explained = eigvals / total if total > 0 else np.zeros_like(eigvals)
    return FpcaResult(
        eigenvalues=eigvals,
        loadings=eigvecs,
        explained=explained,
        mean_coeffs=mean,
        basis=data.basis,
    )


def active_basis(result: FpcaResult, component: int, threshold: float = 0.1) -> np.ndarray:
    """Mask of basis functions whose loading magnitude exceeds the threshold.

    A component that carries no variance has an arbitrary eigendirection, so
    its mask is empty.
    """
    result._check(component)
    if result.eigenvalues[component] <= 1e-14:
        return np.zeros(result.loadings.shape[0], dtype=bool)
    return np.abs(result.loadings[:, component]) > threshold


def sparse_fpca(
    data: CoefficientDataset,
    sparsity: float,
    component_count: int = 1,
    max_iter: int = 500,
    tol: float = 1e-10,
) -> FpcaResult:
    """Sparse loadings by soft-thresholded power iteration with deflation.

    Each component starts from the ordinary PCA loading; iterations alternate
    a data projection with soft-thresholding at ``sparsity`` times the largest
    entry magnitude.  The sparsity knob lives on its own [0, 1] scale: 0
    reproduces ordinary PCA, 1 keeps at most one entry.  Components whose
    loading collapses to zero are reported as broken down with zero explained
    variability.
    """
    if data.n_obs < 2:
        raise TooFewObservations("need at least two observations")
    if not 0 <= sparsity <= 1:
        raise ValueError(f"sparsity must be in [0, 1], got {sparsity}")
    plain = fpca(data)
    centered = data.coeffs - plain.mean_coeffs
    total_var = float(np.sum(centered**2)) / (data.n_obs - 1)
    if total_var == 0:
        zeros = np.zeros((data.basis.dim, component_count))
        return FpcaResult(
            eigenvalues=np.zeros(component_count),
            loadings=zeros,
            explained=np.zeros(component_count),
            mean_coeffs=plain.mean_coeffs,
            basis=data.basis,
            breakdown=np.ones(component_count, dtype=bool),
        )
    p = data.basis.dim
    component_count = min(component_count, p)
    loadings = np.zeros((p, component_count))
    explained = np.zeros(component_count)
    broke = np.zeros(component_count, dtype=bool)
    x = centered.copy()
    for c in range(component_count):
        v = plain.loadings[:, c].copy()
        for _ in range(max_iter):
            scores = x @ v
            nv = x.T @ scores
            nrm = np.linalg.norm(nv)
            if nrm == 0:
                nv = np.zeros_like(v)
            else:
                nv = nv / nrm
                thr = sparsity * np.max(np.abs(nv))
                nv = np.sign(nv) * np.maximum(np.abs(nv) - thr, 0.0)
                nrm = np.linalg.norm(nv)
                if nrm > 0:
                    nv = nv / nrm
            if np.linalg.norm(nv - v) < tol or np.linalg.norm(nv + v) < tol:
                v = nv
                break
            v = nv
        if not np.any(v):
            broke[c] = True
        else:
            if v[np.argmax(np.abs(v))] < 0:
                v = -v
            proj = centered @ v
            explained[c] = float(np.sum(proj**2)) / (data.n_obs - 1) / total_var
            x = x - np.outer(x @ v, v)
        loadings[:, c] = v
    return FpcaResult(
        eigenvalues=explained * total_var,
        loadings=loadings,
        explained=explained,
        mean_coeffs=plain.mean_coeffs,
        basis=data.basis,
        breakdown=broke,
    )
