import numpy as np
import pytest

from momentcoords import shapes


@pytest.fixture
def biunit():
    return shapes.biunit_square()


@pytest.fixture
def quad_convex():
    return shapes.convex_quad()


@pytest.fixture
def quad_nonconvex():
    return shapes.nonconvex_quad()


@pytest.fixture
def cube():
    return shapes.cube()


@pytest.fixture
def hex_tapered():
    return shapes.convex_hex()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
