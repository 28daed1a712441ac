import pytest

from toric_em.corpus import corpus_document, corpus_names
from toric_em.polytope import build_polytope


@pytest.fixture(scope="session")
def corpus():
    return {name: corpus_document(name).polytope() for name in corpus_names()}


@pytest.fixture(scope="session")
def seg1():
    return build_polytope([(0,), (1,)], name="seg1")


@pytest.fixture(scope="session")
def seg2():
    return build_polytope([(0,), (2,)], name="seg2")


@pytest.fixture(scope="session")
def tri2():
    return build_polytope([(0, 0), (1, 0), (0, 2)], name="mult2_triangle")


@pytest.fixture(scope="session")
def square():
    return build_polytope([(0, 0), (1, 0), (0, 1), (1, 1)], name="unit_square")


@pytest.fixture(scope="session")
def square2():
    return build_polytope([(0, 0), (2, 0), (0, 2), (2, 2)], name="square2")


@pytest.fixture(scope="session")
def reeve():
    return build_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)], name="reeve2")
