import pytest

from smallcover.coloring import CharacteristicMap
from smallcover.polytope import builtin, default_corpus

E1, E2, E3 = 1, 2, 4


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture(scope="session")
def simplex():
    return builtin("simplex")


@pytest.fixture(scope="session")
def cube():
    return builtin("cube")


@pytest.fixture(scope="session")
def prism5():
    return builtin("prism", 5)


@pytest.fixture(scope="session")
def dodecahedron():
    return builtin("dodecahedron")


@pytest.fixture
def cube_std():
    # opposite facets share a color
    return CharacteristicMap((E1, E1, E2, E2, E3, E3))


@pytest.fixture
def prism5_nonorientable():
    # bottom, top, then sides 0..4
    return CharacteristicMap((E3, E3, E1, E2, E1, E2, E1 | E2))
