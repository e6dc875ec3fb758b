"""Characteristic maps P's facets -> Z2^3 and the five 4-belt section classes.

Elements of Z2^3 are 3-bit masks (bit i = coefficient of e_{i+1}); the
group law is XOR.  So e1, e2, e3 are 1, 2, 4 and e1e2e3 is 7.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .belts import Belt
from .errors import (
    InvalidColoring,
    MissingFacet,
    NotAFourBelt,
    SchemaError,
    TooLarge,
    UnclassifiableSection,
)
from .polytope import FaceRef, SimplePolytope3

E1, E2, E3 = 1, 2, 4
NONZERO = tuple(range(1, 8))


def fmt(x: int) -> str:
    """Multiplicative name of a mask: 0 -> '1', 5 -> 'e1e3'."""
    if x == 0:
        return "1"
    return "".join(f"e{i + 1}" for i in range(3) if x >> i & 1)


def to_bits(x: int) -> list[int]:
    return [x >> i & 1 for i in range(3)]


def from_bits(bits) -> int:
    if (
        not isinstance(bits, list)
        or len(bits) != 3
        or any(b not in (0, 1) or isinstance(b, bool) for b in bits)
    ):
        raise SchemaError(f"a color is a list of three 0/1 entries, got {bits!r}")
    return bits[0] | bits[1] << 1 | bits[2] << 2


def independent(a: int, b: int, c: int) -> bool:
    return a != 0 and b != 0 and c != 0 and a != b and c not in (a, b, a ^ b)


def span(gens) -> frozenset[int]:
    elems = {0}
    for g in gens:
        elems |= {x ^ g for x in elems}
    return frozenset(elems)


def rank(gens) -> int:
    return len(span(gens)).bit_length() - 1


def _gl3():
    out = []
    for a, b, c in product(NONZERO, repeat=3):
        if independent(a, b, c):
            out.append(tuple(a * (x & 1) ^ b * (x >> 1 & 1) ^ c * (x >> 2 & 1) for x in range(8)))
    return tuple(out)


# each entry is the lookup table x -> A(x) of an invertible 3x3 matrix over Z2
GL3 = _gl3()
assert len(GL3) == 168


@dataclass(frozen=True)
class CharacteristicMap:
    colors: tuple[int, ...]  # facet id -> nonzero mask

    def __getitem__(self, facet: int) -> int:
        return self.colors[facet]

    def __len__(self) -> int:
        return len(self.colors)

    def transformed(self, table) -> "CharacteristicMap":
        return CharacteristicMap(tuple(table[c] for c in self.colors))

    def to_dict(self) -> dict:
        return {"colors": {str(i): to_bits(c) for i, c in enumerate(self.colors)}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def describe(self) -> str:
        return "(" + ", ".join(fmt(c) for c in self.colors) + ")"


def parse_coloring(text: str | dict, num_facets: int | None = None) -> CharacteristicMap:
    doc = json.loads(text) if isinstance(text, (str, bytes)) else text
    if not isinstance(doc, dict) or not isinstance(doc.get("colors"), dict):
        raise SchemaError('expected {"colors": {"<facet index>": [b1, b2, b3]}}')
    colors = {}
    for key, bits in doc["colors"].items():
        if not key.isdigit():
            raise SchemaError(f"facet key {key!r} is not an index")
        colors[int(key)] = from_bits(bits)
    n = num_facets if num_facets is not None else len(colors)
    missing = [i for i in range(n) if i not in colors]
    if missing:
        raise MissingFacet(f"no color for facets {missing}")
    extra = sorted(set(colors) - set(range(n)))
    if extra:
        raise SchemaError(f"colors given for unknown facets {extra}")
    return CharacteristicMap(tuple(colors[i] for i in range(n)))


def validate_coloring(P: SimplePolytope3, lam: CharacteristicMap) -> tuple[bool, int | None]:
    """(ok, first offending vertex label)."""
    if len(lam) != P.num_facets:
        raise MissingFacet(f"coloring covers {len(lam)} of {P.num_facets} facets")
    for c in lam.colors:
        if c not in NONZERO:
            return False, None
    for v in P.vertex_labels:
        a, b, c = P.vertex_triple[v]
        if not independent(lam[a], lam[b], lam[c]):
            return False, v
    return True, None


def require_valid(P: SimplePolytope3, lam: CharacteristicMap) -> None:
    ok, v = validate_coloring(P, lam)
    if not ok:
        where = f"at vertex {v}" if v is not None else "(zero color)"
        raise InvalidColoring(f"coloring {lam.describe()} is not independent {where}")


def basis_canonical(colors) -> tuple[int, ...]:
    return min(tuple(t[c] for c in colors) for t in GL3)


def _facet_order(P: SimplePolytope3) -> list[int]:
    # BFS order so each new facet meets already-colored ones early
    order, seen = [0], {0}
    i = 0
    while i < len(order):
        for j in sorted(P.adjacency[order[i]]):
            if j not in seen:
                seen.add(j)
                order.append(j)
        i += 1
    return order


def iter_colorings(P: SimplePolytope3, max_facets: int = 16):
    """Yield every valid characteristic map (backtracking)."""
    n = P.num_facets
    if n > max_facets:
        raise TooLarge(f"{n} facets exceeds the enumeration guard of {max_facets}")
    order = _facet_order(P)
    pos = {f: i for i, f in enumerate(order)}
    # vertices become checkable once their last facet (in order) is colored
    checks = [[] for _ in range(n)]
    for t in P.vertex_triple.values():
        last = max(t, key=pos.__getitem__)
        checks[pos[last]].append(t)
    earlier_nbrs = [[g for g in P.adjacency[f] if pos[g] < pos[f]] for f in order]
    colors = [0] * n

    def rec(i):
        if i == n:
            yield CharacteristicMap(tuple(colors))
            return
        f = order[i]
        banned = {colors[g] for g in earlier_nbrs[i]}
        for c in NONZERO:
            if c in banned:
                continue
            colors[f] = c
            if all(independent(colors[a], colors[b], colors[d]) for a, b, d in checks[i]):
                yield from rec(i + 1)
        colors[f] = 0

    yield from rec(0)


def enumerate_colorings(
    P: SimplePolytope3, up_to_basis: bool = False, max_facets: int = 16
) -> list[CharacteristicMap]:
    maps = iter_colorings(P, max_facets)
    if up_to_basis:
        reps = {basis_canonical(m.colors) for m in maps}
        return [CharacteristicMap(c) for c in sorted(reps)]
    return sorted(maps, key=lambda m: m.colors)


def first_coloring(P: SimplePolytope3, max_facets: int = 64) -> CharacteristicMap | None:
    return next(iter_colorings(P, max_facets), None)


def orientation_functional(lam: CharacteristicMap) -> int | None:
    """A functional eps (as a mask) with eps·lambda(F) = 1 for every facet, if any."""
    for eps in NONZERO:
        if all(bin(eps & c).count("1") % 2 == 1 for c in lam.colors):
            return eps
    return None


def is_orientable(lam: CharacteristicMap) -> bool:
    return orientation_functional(lam) is not None


@dataclass(frozen=True)
class SubgroupZ2:
    generators: tuple[int, ...]
    elements: frozenset[int]

    @classmethod
    def generated_by(cls, gens) -> "SubgroupZ2":
        gens = tuple(sorted(set(gens)))
        return cls(gens, span(gens))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


def face_subgroup(P: SimplePolytope3, lam: CharacteristicMap, f: FaceRef) -> SubgroupZ2:
    """G_f: generated by the colors of the facets containing ``f``."""
    f.validate(P)
    return SubgroupZ2.generated_by(lam[i] for i in f.ids)


# -- 4-belt sections ------------------------------------------------------

# the five section classes, in order, with the surface each one yields
SECTION_CASES = (
    ((E1, E2, E1, E2), "TwoTori"),
    ((E1, E2, E1, E1 | E2), "TwoKleinBottles"),
    ((E1, E2, E3, E2), "Torus"),
    ((E1, E2, E3, E1 | E2), "KleinBottle"),
    ((E1, E2, E3, 7), "Torus"),
)

# rotations and reflections of a 4-cycle as index orders
DIHEDRAL4 = tuple(
    tuple((r + s * i) % 4 for i in range(4)) for s in (1, -1) for r in range(4)
)


def section_canonical(colors) -> tuple[int, ...]:
    """Least image of a 4-tuple under basis changes x square symmetries."""
    best = None
    for order in DIHEDRAL4:
        seq = [colors[i] for i in order]
        for t in GL3:
            cand = tuple(t[c] for c in seq)
            if best is None or cand < best:
                best = cand
    return best


_CANONICAL_TO_CASE = {section_canonical(t): i for i, (t, _) in enumerate(SECTION_CASES)}
assert len(_CANONICAL_TO_CASE) == 5


@dataclass(frozen=True)
class SectionClass:
    case: int  # 0..4, index into SECTION_CASES
    canonical_tuple: tuple[int, ...]
    surface: str
    rank: int

    @classmethod
    def from_case(cls, case: int) -> "SectionClass":
        t, surface = SECTION_CASES[case]
        return cls(case, t, surface, rank(t))

    def describe(self) -> str:
        return "(" + ", ".join(fmt(c) for c in self.canonical_tuple) + ")"

    def to_dict(self) -> dict:
        return {
            "case": self.case + 1,
            "tuple": [fmt(c) for c in self.canonical_tuple],
            "surface": self.surface,
            "rank": self.rank,
        }


ALL_SECTION_CLASSES = tuple(SectionClass.from_case(i) for i in range(5))


def classify_section_tuple(colors) -> SectionClass:
    colors = tuple(colors)
    if len(colors) != 4:
        raise NotAFourBelt(f"a square section has 4 edges, got {len(colors)}")
    for i in range(4):
        if colors[i] == colors[(i + 1) % 4] or colors[i] not in NONZERO:
            raise InvalidColoring(f"adjacent belt facets need distinct nonzero colors: {colors}")
    case = _CANONICAL_TO_CASE.get(section_canonical(colors))
    if case is None:
        raise UnclassifiableSection(f"restriction {tuple(map(fmt, colors))} fits none of the 5 cases")
    return SectionClass.from_case(case)


def classify_belt_section(lam: CharacteristicMap, b: Belt) -> SectionClass:
    if b.k != 4:
        raise NotAFourBelt(f"belt of length {b.k}")
    return classify_section_tuple(tuple(lam[f] for f in b.facet_cycle))


def normalize_section(colors) -> tuple[SectionClass, tuple[int, ...], tuple[int, ...]]:
    """Find (class, order, table) with table[colors[order[i]]] == canonical_tuple[i]."""
    cls = classify_section_tuple(colors)
    for order in DIHEDRAL4:
        for t in GL3:
            if tuple(t[colors[i]] for i in order) == cls.canonical_tuple:
                return cls, order, t
    raise UnclassifiableSection(f"no transform reaches {cls.describe()}")
