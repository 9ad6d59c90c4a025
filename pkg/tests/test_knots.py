import numpy as np
import pytest

from zbsplinets import KnotSequence, dyadic_inner_count, dyadic_levels, make_knots
from zbsplinets.errors import (
    EmptyInterval,
    KnotOutsideInterval,
    NonIncreasingKnots,
)


def test_equispaced_placement_d1():
    ks = make_knots(0.0, 95.0, 7, 2)
    np.testing.assert_allclose(ks.inner, [95.0 * i / 8 for i in range(1, 8)])


def test_equispaced_placement_d2():
    ks = make_knots(0.0, 95.0, 19, 2)
    np.testing.assert_allclose(ks.inner, [95.0 * i / 20 for i in range(1, 20)])


def test_extended_structure():
    ks = make_knots(0.0, 1.0, 3, 2)
    assert ks.extended.size == ks.g + 2 * (ks.degree + 1)
    assert np.all(ks.extended[:3] == 0.0)
    assert np.all(ks.extended[-3:] == 1.0)
    # conventional indexing: knot(i) = extended[i + k]
    assert ks.knot(-2) == 0.0
    assert ks.knot(1) == ks.inner[0]
    assert ks.knot(ks.g + ks.degree + 1) == 1.0


def test_no_inner_knots_degree0():
    ks = make_knots(0.0, 1.0, 0, 0)
    np.testing.assert_array_equal(ks.extended, [0.0, 1.0])


def test_validation_errors():
    with pytest.raises(EmptyInterval):
        KnotSequence(1.0, 1.0, 2, np.array([]))
    with pytest.raises(NonIncreasingKnots):
        KnotSequence(0.0, 1.0, 2, np.array([0.5, 0.5]))
    with pytest.raises(KnotOutsideInterval):
        KnotSequence(0.0, 1.0, 2, np.array([1.5]))
    with pytest.raises(NonIncreasingKnots):
        make_knots(0.0, 1.0, 2, 1, inner=[0.5])


def test_breakpoints_and_eta():
    ks = make_knots(2.0, 7.0, 4, 1)
    assert ks.eta == 5.0
    np.testing.assert_allclose(np.diff(ks.breakpoints), 1.0)
    assert ks.n_bsplines == ks.g + ks.degree + 1


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dyadic_roundtrip(k, n):
    g = dyadic_inner_count(n, k)
    assert g == (2**n - 1) * (k + 1) - k
    assert dyadic_levels(g, k) == n


def test_dyadic_rejects_incompatible():
    assert dyadic_levels(10, 2) is None
    assert dyadic_levels(0, 0) is None
    # k=2: g=19 is dyadic (N=3) but neighbours are not
    assert dyadic_levels(19, 2) == 3
    assert dyadic_levels(18, 2) is None
    assert dyadic_levels(20, 2) is None
