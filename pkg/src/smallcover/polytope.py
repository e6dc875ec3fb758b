"""Combinatorial simple 3-polytopes.

A polytope is given by its facets, each a cyclic list of vertex labels.
Everything else (edges, vertex/facet incidences, facet adjacency) is
derived and validated at construction time.  Internally a vertex is
identified with the sorted triple of facets that meet there; the input
labels are kept only for display and serialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import (
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

Edge = tuple[int, int]  # (u, v) with u < v, vertex labels


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class SimplePolytope3:
    """Validated combinatorial simple 3-polytope; treat as immutable."""

    def __init__(self, facets: Iterable[Iterable[int]], name: str = ""):
        self.name = name
        self.facets: tuple[tuple[int, ...], ...] = tuple(tuple(f) for f in facets)
        self._build()

    def _build(self) -> None:
        facets = self.facets
        if len(facets) < 4:
            raise SchemaError(f"need at least 4 facets, got {len(facets)}")
        seen = {}
        for i, f in enumerate(facets):
            if len(f) < 3:
                raise SchemaError(f"facet {i} has fewer than 3 vertices")
            if len(set(f)) != len(f):
                raise SchemaError(f"facet {i} repeats a vertex")
            for v in f:
                if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                    raise SchemaError(f"facet {i}: vertex ids must be non-negative integers")
            key = frozenset(f)
            if key in seen:
                raise DuplicateFacet(f"facets {seen[key]} and {i} coincide")
            seen[key] = i

        vertex_facets: dict[int, list[int]] = {}
        edge_facets: dict[Edge, list[int]] = {}
        for i, f in enumerate(facets):
            for v in f:
                vertex_facets.setdefault(v, []).append(i)
            for a, b in zip(f, f[1:] + f[:1]):
                edge_facets.setdefault(_edge(a, b), []).append(i)

        for v, fs in sorted(vertex_facets.items()):
            if len(fs) != 3:
                raise NotSimple(f"vertex {v} lies in {len(fs)} facets")
        for e, fs in sorted(edge_facets.items()):
            if len(fs) != 2:
                raise NotClosed(f"edge {e} lies in {len(fs)} facets")

        # cyclic order must agree with the edge structure: a simple vertex
        # has exactly three edges, one per pair of its facets
        degree: dict[int, int] = {}
        for u, v in edge_facets:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        for v, d in sorted(degree.items()):
            if d != 3:
                raise NotSimple(f"vertex {v} has {d} incident edges")

        V, E, F = len(vertex_facets), len(edge_facets), len(facets)
        if V - E + F != 2:
            raise EulerViolation(f"V - E + F = {V} - {E} + {F} = {V - E + F}")

        pair_edge: dict[tuple[int, int], Edge] = {}
        for e, (a, b) in edge_facets.items():
            key = (min(a, b), max(a, b))
            if key in pair_edge:
                raise BadIncidence(f"facets {key} share more than one edge")
            pair_edge[key] = e

        adjacency = [set() for _ in range(F)]
        for a, b in pair_edge:
            adjacency[a].add(b)
            adjacency[b].add(a)
        stack, reached = [0], {0}
        while stack:
            for j in adjacency[stack.pop()]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
        if len(reached) != F:
            raise BadIncidence("facet adjacency graph is disconnected")

        self.vertex_labels: tuple[int, ...] = tuple(sorted(vertex_facets))
        self.vertex_triple: dict[int, tuple[int, int, int]] = {
            v: tuple(sorted(fs)) for v, fs in vertex_facets.items()
        }
        self.triple_vertex: dict[tuple[int, int, int], int] = {
            t: v for v, t in self.vertex_triple.items()
        }
        self.edges: dict[Edge, tuple[int, int]] = {
            e: (min(fs), max(fs)) for e, fs in sorted(edge_facets.items())
        }
        self.facet_pair_edge = pair_edge
        self.adjacency: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adjacency)

    # -- basic counts -------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    def is_simplex(self) -> bool:
        return self.num_facets == 4

    # -- queries ------------------------------------------------------------
    def check_facet(self, f: int) -> None:
        if not isinstance(f, int) or not 0 <= f < self.num_facets:
            raise BadFacetId(f"no facet {f!r} (have {self.num_facets})")

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def shared_edge(self, a: int, b: int) -> Edge | None:
        """The edge F_a ∩ F_b, or None when the facets are disjoint."""
        return self.facet_pair_edge.get((min(a, b), max(a, b)))

    def edge_endpoints_facets(self, e: Edge) -> tuple[int, int]:
        return self.edges[e]

    def facets_containing(self, v: int) -> tuple[int, int, int]:
        return self.vertex_triple[v]

    def __repr__(self) -> str:
        return (
            f"SimplePolytope3({self.name or '?'}: "
            f"V={self.num_vertices}, E={self.num_edges}, F={self.num_facets})"
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplePolytope3) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        facets = sorted(self.facets, key=lambda f: (min(f), sorted(f)))
        out: dict = {"facets": [list(f) for f in facets]}
        if self.name:
            out["name"] = self.name
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def facets_common_vertex(P: SimplePolytope3, triple: Iterable[int]) -> int | None:
    """Vertex label shared by three distinct facets, or None if they do not meet."""
    t = tuple(triple)
    if len(t) != 3 or len(set(t)) != 3:
        raise BadFacetId(f"need three distinct facet ids, got {t}")
    for f in t:
        P.check_facet(f)
    return P.triple_vertex.get(tuple(sorted(t)))


@dataclass(frozen=True)
class FaceRef:
    """A face named by the facets containing it.

    ``kind`` is one of polytope/facet/edge/vertex with 0/1/2/3 ids.
    """

    kind: str
    ids: tuple[int, ...] = ()

    _ARITY = {"polytope": 0, "facet": 1, "edge": 2, "vertex": 3}

    def validate(self, P: SimplePolytope3) -> None:
        if self._ARITY.get(self.kind) != len(self.ids) or len(set(self.ids)) != len(self.ids):
            raise BadFace(f"{self.kind} cannot be named by facets {self.ids}")
        for f in self.ids:
            try:
                P.check_facet(f)
            except BadFacetId as exc:
                raise BadFace(str(exc)) from None
        if self.kind == "edge" and not P.adjacent(*self.ids):
            raise BadFace(f"facets {self.ids} do not meet in an edge")
        if self.kind == "vertex" and facets_common_vertex(P, self.ids) is None:
            raise BadFace(f"facets {self.ids} do not meet in a vertex")


def parse_polytope(text: str | dict) -> SimplePolytope3:
    """Parse the ``{"name": ..., "facets": [[...], ...]}`` document."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict) or "facets" not in doc:
        raise SchemaError('expected an object with a "facets" field')
    unknown = set(doc) - {"name", "facets"}
    if unknown:
        raise SchemaError(f"unexpected fields {sorted(unknown)}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise SchemaError('"name" must be a string')
    facets = doc["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise SchemaError('"facets" must be a list of lists')
    return SimplePolytope3(facets, name=name)


# -- builtin corpus -----------------------------------------------------------

def _simplex() -> list[list[int]]:
    # facet i is opposite vertex i
    return [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]


def _cube() -> list[list[int]]:
    # vertex x + 2y + 4z; facets ordered z=0, z=1, y=0, y=1, x=0, x=1 so that
    # facets 2i and 2i+1 are opposite
    return [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ]


def _prism(k: int) -> list[list[int]]:
    # facet 0 bottom, facet 1 top, facet 2 + i the side over bottom edge (i, i+1)
    bottom = list(range(k))[::-1]
    top = [k + i for i in range(k)]
    sides = [[i, (i + 1) % k, k + (i + 1) % k, k + i] for i in range(k)]
    return [bottom, top] + sides


def _dodecahedron() -> list[list[int]]:
    # layers: top pentagon a_i, ring b_i, ring c_i, bottom pentagon d_i
    a = lambda i: i % 5
    b = lambda i: 5 + i % 5
    c = lambda i: 10 + i % 5
    d = lambda i: 15 + i % 5
    facets = [[a(i) for i in range(5)]]
    facets += [[a(i + 1), a(i), b(i), c(i), b(i + 1)] for i in range(5)]
    facets += [[c(i), d(i), d(i + 1), c(i + 1), b(i + 1)] for i in range(5)]
    facets.append([d(i) for i in range(4, -1, -1)])
    return facets


BUILTINS = ("simplex", "cube", "prism", "dodecahedron")


def builtin(name: str, parameter: int | None = None) -> SimplePolytope3:
    if name == "simplex":
        return SimplePolytope3(_simplex(), name="simplex")
    if name == "cube":
        return SimplePolytope3(_cube(), name="cube")
    if name == "dodecahedron":
        return SimplePolytope3(_dodecahedron(), name="dodecahedron")
    if name == "prism":
        if parameter is None or not isinstance(parameter, int) or parameter < 3:
            raise BadParameter(f"prism needs k >= 3, got {parameter!r}")
        return SimplePolytope3(_prism(parameter), name=f"prism{parameter}")
    raise UnknownBuiltin(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


def prism_side(k: int, i: int) -> int:
    """Facet id of the i-th side (0-based) of ``builtin('prism', k)``."""
    return 2 + i % k


PRISM_BOTTOM, PRISM_TOP = 0, 1


def default_corpus() -> list[SimplePolytope3]:
    corpus = [builtin("simplex"), builtin("cube")]
    corpus += [builtin("prism", k) for k in range(3, 9)]
    corpus.append(builtin("dodecahedron"))
    return corpus
