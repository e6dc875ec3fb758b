"""Small covers and their square sections as identification complexes.

Cells are pairs (face, g) with g in Z2^3; (f, g) and (f, g ^ h) are
identified for h in the subgroup attached to f.  The identification is
done literally with a union-find over all pairs, and the topology
(Euler characteristic, components, orientability) is read off the
resulting cell classes.  Nothing here uses the closed-form orientability
criterion from :mod:`smallcover.coloring`; the two are compared in tests.

A note on the square-section gluing: the copy identification along an
edge f_i is read as ``g^-1 h`` lying in the subgroup generated by that
edge's color, i.e. ``h in {g, g * lambda(f_i)}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from networkx.utils import UnionFind

from .belts import Belt
from .coloring import CharacteristicMap, require_valid, span
from .errors import NotAFourBelt, NotClosedManifold, NotClosedSurface
from .polytope import SimplePolytope3

GROUP = tuple(range(8))


@dataclass
class IdentificationComplex:
    """Cell classes per dimension plus top-cell/codim-1 incidences.

    ``cells[d]`` maps each cell (face, g) to the representative of its
    class.  ``sides`` lists, for every top-dimensional copy g and every
    codim-1 face f of the base cell, the class that (f, g) lands in; the
    gluing maps between copies are identities on the base cell.
    ``faces_of`` records which lower cells lie in which codim-1 face, used
    to attribute cells to components.
    """

    dimension: int
    cells: dict[int, dict] = field(default_factory=dict)
    sides: dict = field(default_factory=dict)  # (codim-1 face, g) -> class
    faces_of: dict = field(default_factory=dict)  # face -> lower faces contained in it

    def class_count(self, d: int) -> int:
        return len(set(self.cells[d].values()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * self.class_count(d) for d in self.cells)

    def check_closed(self) -> None:
        """Every codim-1 class must receive exactly two top-cell sides."""
        counts = {}
        for cls in self.sides.values():
            counts[cls] = counts.get(cls, 0) + 1
        bad = {c: n for c, n in counts.items() if n != 2}
        if bad:
            exc = NotClosedManifold if self.dimension == 3 else NotClosedSurface
            raise exc(f"codimension-1 classes with != 2 sides: {sorted(bad.items(), key=repr)[:4]}")

    def top_components(self) -> list[list[int]]:
        """Copies g of the top cell, grouped by connectivity across codim-1 classes."""
        uf = UnionFind()
        by_class = {}
        for (f, g), cls in self.sides.items():
            uf[g]
            by_class.setdefault(cls, []).append(g)
        for gs in by_class.values():
            uf.union(*gs)
        return sorted(sorted(c) for c in uf.to_sets())

    def orientation(self, copies=None) -> dict[int, int] | None:
        """Signs for the top copies making every codim-1 class inherit
        opposite orientations from its two sides, or None if impossible.

        The two sides of a class are the same base face glued by the
        identity, so their induced orientations are opposite exactly when
        the two copies carry opposite signs.
        """
        self.check_closed()
        by_class = {}
        for (f, g), cls in self.sides.items():
            by_class.setdefault(cls, []).append(g)
        nbrs = {}
        for g1, g2 in by_class.values():
            nbrs.setdefault(g1, []).append(g2)
            nbrs.setdefault(g2, []).append(g1)
        copies = sorted(nbrs) if copies is None else copies
        sign = {}
        for start in copies:
            if start in sign:
                continue
            sign[start] = 1
            queue = deque([start])
            while queue:
                g = queue.popleft()
                for h in nbrs[g]:
                    if h == g:
                        return None
                    if h not in sign:
                        sign[h] = -sign[g]
                        queue.append(h)
                    elif sign[h] == sign[g]:
                        return None
        return sign

    def census(self) -> str:
        lines = [f"cells[{d}]={self.class_count(d)}" for d in sorted(self.cells)]
        if self.dimension == 2:
            for comp in surface_report(self).components:
                lines.append(f"chi={comp.chi} orientable={str(comp.orientable).lower()}")
        else:
            lines.append(
                f"chi={self.euler_characteristic()} "
                f"orientable={str(complex_orientable(self)).lower()}"
            )
        return "\n".join(lines)


def _identify(cells_by_dim, subgroup_of):
    """Union-find every (face, g) with (face, g ^ h), h in the face's subgroup."""
    out = {}
    for d, faces in cells_by_dim.items():
        uf = UnionFind()
        for f in faces:
            H = subgroup_of[f]
            for g in GROUP:
                uf.union((f, g), *((f, g ^ h) for h in H))
        out[d] = {x: uf[x] for x in list(uf.parents)}
    return out


def build_manifold_complex(P: SimplePolytope3, lam: CharacteristicMap) -> IdentificationComplex:
    """M = P x Z2^3 / ~ with (p, g) ~ (p, h) iff g^-1 h lies in G_{f(p)}."""
    require_valid(P, lam)
    vertices = [("v", t) for t in sorted(P.vertex_triple.values())]
    edges = [("e", pair) for pair in sorted(P.facet_pair_edge)]
    facets = [("f", (i,)) for i in range(P.num_facets)]
    body = [("P", ())]
    subgroup_of = {face: span(lam[i] for i in face[1]) for face in vertices + edges + facets + body}
    cells = _identify({0: vertices, 1: edges, 2: facets, 3: body}, subgroup_of)
    cx = IdentificationComplex(3, cells)
    for f in facets:
        for g in GROUP:
            cx.sides[(f, g)] = cells[2][(f, g)]
    for f in facets:
        i = f[1][0]
        cx.faces_of[f] = [e for e in edges if i in e[1]] + [v for v in vertices if i in v[1]]
    return cx


def section_complex(edge_colors) -> IdentificationComplex:
    """The square with edges f1..f4 colored ``edge_colors``, 8 copies glued.

    Corner i sits between edges i and i+1.
    """
    edge_colors = tuple(edge_colors)
    if len(edge_colors) != 4:
        raise NotAFourBelt(f"a square has 4 edges, got {len(edge_colors)}")
    edges = [("f", i) for i in range(4)]
    corners = [("c", i) for i in range(4)]
    square = [("F", 0)]
    subgroup_of = {("F", 0): frozenset({0})}
    for i in range(4):
        subgroup_of[("f", i)] = span([edge_colors[i]])
        subgroup_of[("c", i)] = span([edge_colors[i], edge_colors[(i + 1) % 4]])
    cells = _identify({0: corners, 1: edges, 2: square}, subgroup_of)
    cx = IdentificationComplex(2, cells)
    for e in edges:
        for g in GROUP:
            cx.sides[(e, g)] = cells[1][(e, g)]
        i = e[1]
        cx.faces_of[e] = [("c", i), ("c", (i - 1) % 4)]
    return cx


def build_section_surface(b: Belt, lam: CharacteristicMap) -> IdentificationComplex:
    if b.k != 4:
        raise NotAFourBelt(f"belt of length {b.k}")
    return section_complex(tuple(lam[f] for f in b.facet_cycle))


@dataclass(frozen=True)
class SurfaceComponent:
    chi: int
    orientable: bool

    @property
    def name(self) -> str:
        if self.orientable:
            genus, r = divmod(2 - self.chi, 2)
            if r or genus < 0:
                return f"InvalidOrientable(chi={self.chi})"
            return {0: "Sphere", 1: "Torus"}.get(genus, f"OrientableGenus{genus}")
        k = 2 - self.chi
        if k < 1:
            return f"InvalidNonOrientable(chi={self.chi})"
        return {1: "ProjectivePlane", 2: "KleinBottle"}.get(k, f"NonOrientableGenus{k}")


@dataclass(frozen=True)
class SurfaceReport:
    components: tuple[SurfaceComponent, ...]

    @property
    def surface(self) -> str:
        names = sorted({c.name for c in self.components})
        n = len(self.components)
        if n == 1:
            return names[0]
        if n == 2 and len(names) == 1 and names[0] in ("Torus", "KleinBottle"):
            return {"Torus": "TwoTori", "KleinBottle": "TwoKleinBottles"}[names[0]]
        return " + ".join(c.name for c in self.components)

    def to_dict(self) -> dict:
        return {
            "surface": self.surface,
            "components": [
                {"chi": c.chi, "orientable": c.orientable, "name": c.name} for c in self.components
            ],
        }


def surface_report(cx: IdentificationComplex) -> SurfaceReport:
    if cx.dimension != 2:
        raise ValueError("surface_report needs a 2-dimensional complex")
    cx.check_closed()
    comps = []
    for copies in cx.top_components():
        members = set(copies)
        cls2 = {cx.cells[2][x] for x in cx.cells[2] if x[1] in members}
        cls1, cls0 = set(), set()
        for (e, g), c in cx.sides.items():
            if g in members:
                cls1.add(c)
                for corner in cx.faces_of[e]:
                    cls0.add(cx.cells[0][(corner, g)])
        chi = len(cls0) - len(cls1) + len(cls2)
        comps.append(SurfaceComponent(chi, cx.orientation(copies) is not None))
    return SurfaceReport(tuple(comps))


def complex_orientable(cx: IdentificationComplex) -> bool:
    if cx.dimension != 3:
        raise ValueError("complex_orientable needs a 3-dimensional complex")
    return cx.orientation() is not None
