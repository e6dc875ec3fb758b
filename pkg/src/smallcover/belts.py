"""Belts, prismatic circuits and flagness.

A k-belt is a cyclic sequence of k distinct facets, consecutive ones
adjacent, no three of them sharing a vertex.  For k = 4 we additionally
require the two opposite pairs to be disjoint; 4-cycles that fail only
this are reported by :func:`degenerate_four_cycles`.

A circuit is stored by the facets it runs through and the edges it
crosses between them.  For k <= 4 the traversed facets of a circuit with
k distinct crossed edges are automatically distinct, since two facets
share at most one edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InternalError, SimplexExcluded
from .polytope import Edge, SimplePolytope3


def canonical_cycle(seq) -> tuple:
    """Lexicographically least rotation of ``seq`` or of its reversal."""
    seq = tuple(seq)
    n = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for r in range(n):
            cand = s[r:] + s[:r]
            if best is None or cand < best:
                best = cand
    return best


@dataclass(frozen=True, order=True)
class Belt:
    facet_cycle: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.facet_cycle)

    def __iter__(self):
        return iter(self.facet_cycle)

    def __getitem__(self, i):
        return self.facet_cycle[i]


@dataclass(frozen=True, order=True)
class PrismaticCircuit:
    facet_cycle: tuple[int, ...]
    edge_cycle: tuple[Edge, ...]  # edge_cycle[i] = facet_cycle[i] ∩ facet_cycle[i+1]

    @property
    def k(self) -> int:
        return len(self.facet_cycle)


def _no_three_meet(P: SimplePolytope3, facets) -> bool:
    return all(tuple(sorted(t)) not in P.triple_vertex for t in combinations(facets, 3))


def is_belt(P: SimplePolytope3, cycle) -> bool:
    """Check the belt invariants for a cyclic facet sequence."""
    cycle = tuple(cycle)
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    if not all(P.adjacent(cycle[i], cycle[(i + 1) % k]) for i in range(k)):
        return False
    if not _no_three_meet(P, cycle):
        return False
    if k == 4 and (P.adjacent(cycle[0], cycle[2]) or P.adjacent(cycle[1], cycle[3])):
        return False
    return True


def _facet_cycles(P: SimplePolytope3, k: int, path_ok):
    """Yield each cycle of k distinct pairwise-consecutive-adjacent facets once.

    Cycles are rooted at their smallest facet; ``path_ok`` prunes partial paths.
    """
    adj = P.adjacency
    found = set()
    for root in range(P.num_facets):
        stack = [(root,)]
        while stack:
            path = stack.pop()
            if len(path) == k:
                if root in adj[path[-1]]:
                    c = canonical_cycle(path)
                    if c not in found:
                        found.add(c)
                        yield c
                continue
            for nxt in sorted(adj[path[-1]], reverse=True):
                if nxt > root and nxt not in path:
                    new = path + (nxt,)
                    if path_ok(new):
                        stack.append(new)


def find_belts(P: SimplePolytope3, k: int) -> list[Belt]:
    if k < 3:
        raise ValueError("belts have length at least 3")

    def ok(path):
        # any three facets of a belt avoid a common vertex
        last = path[-1]
        for a, b in combinations(path[:-1], 2):
            if tuple(sorted((a, b, last))) in P.triple_vertex:
                return False
        return True

    return sorted(Belt(c) for c in _facet_cycles(P, k, ok) if is_belt(P, c))


def degenerate_four_cycles(P: SimplePolytope3) -> list[tuple[int, ...]]:
    """4-cycles of facets with no three meeting but an opposite pair adjacent."""
    out = []
    for c in _facet_cycles(P, 4, lambda p: True):
        if _no_three_meet(P, c) and not is_belt(P, c):
            out.append(c)
    return sorted(out)


def _circuit_from_facets(P: SimplePolytope3, cycle) -> PrismaticCircuit | None:
    k = len(cycle)
    edges = []
    for i in range(k):
        e = P.shared_edge(cycle[i], cycle[(i + 1) % k])
        if e is None:
            return None
        edges.append(e)
    endpoints = [v for e in edges for v in e]
    if len(set(endpoints)) != 2 * k:
        return None
    return PrismaticCircuit(tuple(cycle), tuple(edges))


def find_prismatic_circuits(P: SimplePolytope3, k: int) -> list[PrismaticCircuit]:
    """All prismatic k-circuits, k in {3, 4}, one per rotation/reflection class."""
    if k not in (3, 4):
        raise ValueError("prismatic circuits are searched for k = 3, 4 only")
    out = []
    for c in _facet_cycles(P, k, lambda p: True):
        circ = _circuit_from_facets(P, c)
        if circ is not None:
            out.append(circ)
    return sorted(out)


def belt_circuit(P: SimplePolytope3, b: Belt) -> PrismaticCircuit | None:
    """The circuit through the consecutive intersection edges of a belt."""
    return _circuit_from_facets(P, b.facet_cycle)


def circuit_to_belt(P: SimplePolytope3, c: PrismaticCircuit) -> Belt | None:
    cycle = c.facet_cycle
    if is_belt(P, cycle):
        return Belt(canonical_cycle(cycle))
    if c.k == 3:
        raise InternalError(f"prismatic 3-circuit {c} does not bound a 3-belt")
    return None


def is_flag(P: SimplePolytope3) -> bool:
    """Every pairwise-adjacent facet triple has a common vertex.

    Larger pairwise-adjacent facet sets are searched too: one whose triples
    all meet forces P to be the tetrahedron, which is asserted.
    """
    adj = P.adjacency
    flag = True
    cliques3 = []
    for a, b, c in combinations(range(P.num_facets), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            cliques3.append((a, b, c))
            if (a, b, c) not in P.triple_vertex:
                flag = False
    for a, b, c in cliques3:
        for d in adj[a] & adj[b] & adj[c]:
            if d > c:
                quad = (a, b, c, d)
                if all(t in P.triple_vertex for t in combinations(quad, 3)) and not P.is_simplex():
                    raise InternalError(f"facets {quad} pairwise meet at vertices in a non-simplex")
    return flag


@dataclass(frozen=True)
class FlagCheck:
    flag: bool
    no_prismatic_3: bool

    @property
    def agree(self) -> bool:
        return self.flag == self.no_prismatic_3


def proposition_p1_check(P: SimplePolytope3) -> FlagCheck:
    if P.is_simplex():
        raise SimplexExcluded("flagness vs. prismatic 3-circuits is not claimed for the tetrahedron")
    return FlagCheck(flag=is_flag(P), no_prismatic_3=not find_prismatic_circuits(P, 3))


def has_induced_four_cycle(P: SimplePolytope3) -> tuple[int, int, int, int] | None:
    """Direct search for an induced 4-cycle a-b-c-d in the facet adjacency graph."""
    adj = P.adjacency
    n = P.num_facets
    for a in range(n):
        for c in range(a + 1, n):
            if c in adj[a]:
                continue
            common = sorted(adj[a] & adj[c])
            for b, d in combinations(common, 2):
                if d not in adj[b]:
                    return (a, b, c, d)
    return None
