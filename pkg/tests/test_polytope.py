import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.errors import (
    BadFace,
    BadFacetId,
    BadIncidence,
    BadParameter,
    DuplicateFacet,
    EulerViolation,
    NotClosed,
    NotSimple,
    SchemaError,
    UnknownBuiltin,
)
from smallcover.polytope import (
    PRISM_BOTTOM,
    PRISM_TOP,
    FaceRef,
    SimplePolytope3,
    builtin,
    default_corpus,
    facets_common_vertex,
    parse_polytope,
    prism_side,
)

TETRA = {"name": "tet", "facets": [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]}
CUBE = {
    "name": "cube",
    "facets": [[0, 2, 3, 1], [4, 5, 7, 6], [0, 1, 5, 4], [2, 6, 7, 3], [0, 4, 6, 2], [1, 3, 7, 5]],
}


def counts(P):
    return P.num_vertices, P.num_edges, P.num_facets


def test_parse_tetrahedron():
    P = parse_polytope(json.dumps(TETRA))
    assert counts(P) == (4, 6, 4)
    assert P.name == "tet"


def test_parse_cube():
    assert counts(parse_polytope(json.dumps(CUBE))) == (8, 12, 6)


def test_duplicate_facet():
    doc = {"facets": CUBE["facets"] + [CUBE["facets"][2]]}
    with pytest.raises(DuplicateFacet):
        parse_polytope(doc)


def test_duplicate_facet_rotated():
    doc = {"facets": CUBE["facets"] + [[1, 5, 4, 0]]}
    with pytest.raises(DuplicateFacet):
        parse_polytope(doc)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[]",
        '{"faces": []}',
        '{"facets": [1, 2]}',
        '{"facets": [[0, 1, 2]], "extra": 1}',
        '{"name": 3, "facets": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}',
        '{"facets": [[0,1],[0,1,3],[0,2,3],[1,2,3]]}',
        '{"facets": [[0,1,1],[0,1,3],[0,2,3],[1,2,3]]}',
        '{"facets": [[0,1,-2],[0,1,3],[0,2,3],[1,2,3]]}',
    ],
)
def test_schema_errors(text):
    with pytest.raises(SchemaError):
        parse_polytope(text)


def test_not_simple():
    # square pyramid: the apex lies in four facets
    doc = {"facets": [[0, 1, 2, 3], [0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]]}
    with pytest.raises(NotSimple):
        parse_polytope(doc)


def test_not_closed():
    # a cube with the top removed leaves the rim edges in one facet
    with pytest.raises((NotClosed, NotSimple)):
        parse_polytope({"facets": CUBE["facets"][:1] + CUBE["facets"][2:]})


def test_not_closed_edge_in_three_facets():
    doc = {"facets": [[0, 1, 2], [0, 1, 3], [0, 1, 4], [0, 2, 3]]}
    with pytest.raises((NotClosed, NotSimple)):
        parse_polytope(doc)


def test_euler_violation():
    # two disjoint tetrahedra: every local check passes, V - E + F = 4
    t2 = [[v + 4 for v in f] for f in TETRA["facets"]]
    with pytest.raises(EulerViolation):
        parse_polytope({"facets": TETRA["facets"] + t2})


def test_wrong_cyclic_order_is_rejected():
    # the bottom square listed as 0,3,2,1 is fine; 0,3,1,2 invents edges 0-3, 1-2
    facets = [list(f) for f in CUBE["facets"]]
    facets[0] = [0, 3, 1, 2]
    with pytest.raises((NotClosed, NotSimple)):
        parse_polytope({"facets": facets})


def hex_torus(m, n, offset):
    """Brick-wall hexagonal torus: 2mn vertices, 3mn edges, mn hexagons."""
    w = 2 * m
    vid = lambda x, y: offset + (y % n) * w + (x % w)
    facets = []
    for y in range(n):
        for x in range(w):
            if (x + y) % 2 == 0:
                facets.append([vid(x, y), vid(x + 1, y), vid(x + 2, y),
                               vid(x + 2, y + 1), vid(x + 1, y + 1), vid(x, y + 1)])
    return facets


def test_bad_incidence_passes_euler():
    # tetrahedron (chi 2) plus a disjoint torus (chi 0): locally simple and
    # closed, V - E + F = 2, yet not a polytope
    facets = TETRA["facets"] + hex_torus(3, 2, offset=4)
    with pytest.raises(BadIncidence):
        parse_polytope({"facets": facets})


def test_builtin_simplex(simplex):
    assert counts(simplex) == (4, 6, 4)
    assert all(len(simplex.adjacency[f]) == 3 for f in range(4))


def test_builtin_prism5(prism5):
    assert counts(prism5) == (10, 15, 7)


def test_builtin_dodecahedron(dodecahedron):
    assert counts(dodecahedron) == (20, 30, 12)
    assert all(len(f) == 5 for f in dodecahedron.facets)


@pytest.mark.parametrize("k", [3, 4, 7, 12])
def test_builtin_prism_counts(k):
    P = builtin("prism", k)
    assert counts(P) == (2 * k, 3 * k, k + 2)


def test_builtin_errors():
    with pytest.raises(UnknownBuiltin):
        builtin("icosahedron")
    with pytest.raises(BadParameter):
        builtin("prism", 2)
    with pytest.raises(BadParameter):
        builtin("prism")


def test_common_vertex_simplex(simplex):
    for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        assert facets_common_vertex(simplex, t) is not None


def test_common_vertex_cube_opposite(cube):
    assert facets_common_vertex(cube, (0, 1, 2)) is None


def test_common_vertex_prism_apex(prism5):
    # side 0 sits over bottom vertices 0, 1; side 1 over 1, 2; the top copy of
    # vertex 1 is 5 + 1
    v = facets_common_vertex(prism5, (prism_side(5, 0), prism_side(5, 1), PRISM_TOP))
    assert v == 6
    assert facets_common_vertex(prism5, (prism_side(5, 0), prism_side(5, 1), PRISM_BOTTOM)) == 1


def test_common_vertex_bad_ids(cube):
    with pytest.raises(BadFacetId):
        facets_common_vertex(cube, (0, 1, 9))
    with pytest.raises(BadFacetId):
        facets_common_vertex(cube, (0, 0, 2))


def test_face_ref_validation(cube):
    FaceRef("polytope").validate(cube)
    FaceRef("edge", (0, 2)).validate(cube)
    FaceRef("vertex", (0, 2, 4)).validate(cube)
    for bad in [FaceRef("edge", (0, 1)), FaceRef("vertex", (0, 1, 2)), FaceRef("facet", ()), FaceRef("edge", (0, 9))]:
        with pytest.raises(BadFace):
            bad.validate(cube)


@pytest.mark.parametrize("P", default_corpus(), ids=lambda P: P.name)
def test_incidence_invariants(P):
    total = sum(len(f) for f in P.facets)
    assert total == 2 * P.num_edges == 3 * P.num_vertices
    for f in range(P.num_facets):
        assert len(P.adjacency[f]) == len(P.facets[f])
    assert P.num_vertices - P.num_edges + P.num_facets == 2


def relabel(P, rng):
    labels = list(P.vertex_labels)
    new = labels[:]
    rng.shuffle(new)
    m = dict(zip(labels, new))
    facets = [[m[v] for v in f] for f in P.facets]
    rng.shuffle(facets)
    return SimplePolytope3(facets, name=P.name)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(default_corpus()), st.integers(0, 2**32))
def test_serialize_round_trip(P, seed):
    Q = relabel(P, random.Random(seed))
    R = parse_polytope(Q.to_json())
    assert {frozenset(f) for f in R.facets} == {frozenset(f) for f in Q.facets}
    assert counts(R) == counts(P)
    doc = json.loads(Q.to_json())
    mins = [min(f) for f in doc["facets"]]
    assert mins == sorted(mins)
