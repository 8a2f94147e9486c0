import pytest

from engine import fixtures
from engine.graph6 import random_regular
from engine.solvers import Matching


@pytest.fixture
def figure1():
    return fixtures.figure1()


@pytest.fixture
def prism():
    return fixtures.prism()


@pytest.fixture
def prism_matching(prism):
    """a1a2, b2b3: both unmatched vertices (a3, b1) see both ends of an edge"""
    return Matching.from_edges(prism, [(0, 1), (4, 5)])


@pytest.fixture
def k4():
    return fixtures.k4()


@pytest.fixture
def petersen():
    return fixtures.petersen()


@pytest.fixture
def petersen_matching(petersen):
    """Lexicographically first minimum maximal matching of the Petersen graph"""
    return Matching.from_edges(petersen, [(0, 1), (3, 8), (7, 9)])


@pytest.fixture
def k33():
    return fixtures.k33()


@pytest.fixture
def truncated_k4():
    return fixtures.truncate(fixtures.k4())


@pytest.fixture(scope="session")
def random_cubic_sample():
    """Seeded cubic graphs on 8..16 vertices"""
    return [random_regular(n, 3, seed) for seed in range(40) for n in (8, 10, 12, 14, 16)]
