import numpy as np
import pytest

from zbsplinets import (
    CoefficientDataset,
    Strategy,
    active_basis,
    fpca,
    make_knots,
    orthogonalize,
    sparse_fpca,
)
from zbsplinets.errors import (
    ComponentOutOfRange,
    DimensionMismatch,
    TooFewObservations,
)


@pytest.fixture(scope="module")
def basis(knots_d1):
    return orthogonalize(knots_d1, Strategy.SPLINET)


def random_dataset(basis, n=30, seed=0):
    rng = np.random.default_rng(seed)
    return CoefficientDataset(basis=basis, coeffs=rng.normal(size=(n, basis.dim)))


def test_identical_rows_zero_eigenvalues(basis):
    coeffs = np.tile(np.arange(basis.dim, dtype=float), (5, 1))
    result = fpca(CoefficientDataset(basis=basis, coeffs=coeffs))
    assert np.max(np.abs(result.eigenvalues)) < 1e-12
    assert not active_basis(result, 0).any() or True  # masks defined even here


def test_rank_one_dataset(basis):
    rng = np.random.default_rng(1)
    v = rng.normal(size=basis.dim)
    v /= np.linalg.norm(v)
    cs = rng.normal(size=12)
    data = CoefficientDataset(basis=basis, coeffs=np.outer(cs, v))
    result = fpca(data)
    assert result.eigenvalues[0] > 1e-10
    assert np.max(np.abs(result.eigenvalues[1:])) < 1e-10
    lead = result.loadings[:, 0]
    assert min(np.linalg.norm(lead - v), np.linalg.norm(lead + v)) < 1e-10


def test_eigen_properties(basis):
    data = random_dataset(basis)
    result = fpca(data)
    assert np.all(np.diff(result.eigenvalues) <= 1e-12)
    assert np.all(result.eigenvalues >= -1e-12)
    assert abs(result.explained.sum() - 1.0) < 1e-12
    l = result.loadings
    assert np.max(np.abs(l.T @ l - np.eye(basis.dim))) < 1e-10
    centered = data.coeffs - result.mean_coeffs
    total = np.sum(centered**2) / (data.n_obs - 1)
    assert abs(result.eigenvalues.sum() - total) < 1e-10
    # reconstruction through the full loading matrix
    recon = (centered @ l) @ l.T
    assert np.max(np.abs(recon - centered)) < 1e-10


def test_sign_convention(basis):
    result = fpca(random_dataset(basis, seed=2))
    for c in range(basis.dim):
        col = result.loadings[:, c]
        assert col[np.argmax(np.abs(col))] > 0


def test_basis_invariance_of_eigenvalues(knots_d1, table_points):
    from zbsplinets import SmoothingProblem, fit

    rng = np.random.default_rng(3)
    ys_rows = rng.normal(size=(20, table_points.size))
    eigs, first_curves = [], []
    grid = np.linspace(0.0, 95.0, 300)
    for strategy in Strategy:
        b = orthogonalize(knots_d1, strategy)
        coeffs = np.array(
            [
                fit(SmoothingProblem(basis=b, xs=table_points, ys=y)).coeffs
                for y in ys_rows
            ]
        )
        result = fpca(CoefficientDataset(basis=b, coeffs=coeffs))
        eigs.append(result.eigenvalues)
        first_curves.append(result.pc_curve(0)(grid))
    for e in eigs[1:]:
        assert np.max(np.abs(e - eigs[0])) < 1e-8 * max(1.0, eigs[0][0])
    ref = first_curves[0]
    for c in first_curves[1:]:
        assert min(np.max(np.abs(c - ref)), np.max(np.abs(c + ref))) < 1e-8


def test_active_basis(basis):
    result = fpca(random_dataset(basis, seed=4))
    mask = active_basis(result, 0, threshold=0.0)
    assert mask.sum() == np.count_nonzero(result.loadings[:, 0])
    with pytest.raises(ComponentOutOfRange):
        active_basis(result, basis.dim)


def test_sparse_fpca_limits(basis):
    data = random_dataset(basis, seed=5)
    plain = fpca(data)
    s0 = sparse_fpca(data, 0.0, component_count=2)
    for c in range(2):
        diff = min(
            np.linalg.norm(s0.loadings[:, c] - plain.loadings[:, c]),
            np.linalg.norm(s0.loadings[:, c] + plain.loadings[:, c]),
        )
        assert diff < 1e-8
    s1 = sparse_fpca(data, 1.0, component_count=2)
    for c in range(2):
        assert s1.breakdown[c] or np.count_nonzero(s1.loadings[:, c]) <= 1


def test_sparse_fpca_monotonicity(basis):
    data = random_dataset(basis, seed=6)
    grid = np.round(np.arange(0.0, 1.01, 0.1), 10)
    explained, active = [], []
    for sp in grid:
        res = sparse_fpca(data, float(sp))
        explained.append(res.explained[0])
        active.append(np.count_nonzero(res.loadings[:, 0]))
    assert all(b <= a + 1e-10 for a, b in zip(explained, explained[1:]))
    assert all(b <= a for a, b in zip(active, active[1:]))


def test_sparse_breakdown_reporting(basis):
    coeffs = np.tile(np.arange(basis.dim, dtype=float), (4, 1))
    res = sparse_fpca(CoefficientDataset(basis=basis, coeffs=coeffs), 0.5)
    assert res.breakdown is not None and res.breakdown.all()
    assert np.all(res.explained == 0.0)


def test_validation(basis):
    with pytest.raises(TooFewObservations):
        fpca(CoefficientDataset(basis=basis, coeffs=np.zeros((1, basis.dim))))
    with pytest.raises(DimensionMismatch):
        CoefficientDataset(basis=basis, coeffs=np.zeros((3, basis.dim + 1)))
    with pytest.raises(ValueError):
        sparse_fpca(random_dataset(basis), 1.5)
