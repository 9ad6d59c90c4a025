import numpy as np
import pytest

from zbsplinets import make_knots


@pytest.fixture(scope="session")
def knots_d1():
    """k=2 with 7 equispaced inner knots on [0, 95]."""
    return make_knots(0.0, 95.0, 7, 2)


@pytest.fixture(scope="session")
def knots_d2():
    """k=2 with 19 equispaced inner knots on [0, 95]."""
    return make_knots(0.0, 95.0, 19, 2)


@pytest.fixture(scope="session")
def table_points():
    """Data abscissae x_i = 2 + 5(i-1), i = 1..19."""
    return np.array([2.0 + 5.0 * i for i in range(19)])
