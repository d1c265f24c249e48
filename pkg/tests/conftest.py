import numpy as np
import pytest

import census
import q_theory
import triangulation


@pytest.fixture
def figure8():
    return census.load_builtin("figure8")


@pytest.fixture
def gieseking():
    return census.load_builtin("gieseking")


@pytest.fixture
def gieseking_cover(gieseking):
    return triangulation.double_cover(gieseking)


@pytest.fixture
def figure8_system(figure8):
    return q_theory.q_matching_system(figure8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
