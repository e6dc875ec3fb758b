"""Right-angled Coxeter groups and the maps around a 4-belt section.

Words are tuples of 0-based generator indices.  Every generator is an
involution, so the inverse of a word is its reversal.

The normal form of an element is its shortlex-least geodesic word with
generators ordered by index.  :func:`reduce` computes it by cancelling
letters that can be shuffled together through commuting neighbours and
then extracting the least available letter greedily.

:class:`TitsRepresentation` gives an independent, exact handle on group
elements: the geometric representation of a Coxeter group is faithful,
and for a right-angled group its matrices are integral.  It backs the
Cayley-graph oracle used in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .belts import Belt, find_belts, has_induced_four_cycle
from .coloring import (
    E1,
    E3,
    CharacteristicMap,
    SectionClass,
    fmt,
    require_valid,
    span,
)
from .errors import (
    BadGenerator,
    BadIndex,
    BadVertex,
    InternalError,
    NotAFourBelt,
    OracleOverflow,
)
from .polytope import SimplePolytope3

Word = tuple[int, ...]


@dataclass(frozen=True)
class RacgPresentation:
    n: int
    commuting: frozenset[frozenset[int]]
    name: str = ""

    def __post_init__(self):
        for pair in self.commuting:
            if len(pair) != 2 or not all(0 <= i < self.n for i in pair):
                raise BadGenerator(f"bad commuting pair {sorted(pair)}")
        nb = [set() for _ in range(self.n)]
        for a, b in (tuple(p) for p in self.commuting):
            nb[a].add(b)
            nb[b].add(a)
        object.__setattr__(self, "_nbrs", tuple(frozenset(s) for s in nb))

    @classmethod
    def from_pairs(cls, n: int, pairs, name: str = "") -> "RacgPresentation":
        return cls(n, frozenset(frozenset(p) for p in pairs if p[0] != p[1]), name)

    def commute(self, a: int, b: int) -> bool:
        return b in self._nbrs[a]

    def neighbours(self, a: int) -> frozenset[int]:
        return self._nbrs[a]

    def check(self, w) -> Word:
        w = tuple(w)
        for x in w:
            if not isinstance(x, int) or not 0 <= x < self.n:
                raise BadGenerator(f"generator {x!r} out of range 0..{self.n - 1}")
        return w

    def to_dict(self) -> dict:
        return {
            "generators": self.n,
            "commuting": sorted([min(p) + 1, max(p) + 1] for p in self.commuting),
        }


def presentation_from_polytope(P: SimplePolytope3) -> RacgPresentation:
    """W_P: one involution t_F per facet, t_F t_F' = t_F' t_F when F meets F'."""
    return RacgPresentation.from_pairs(P.num_facets, list(P.facet_pair_edge), name=P.name)


def square_presentation() -> RacgPresentation:
    """W_F for the square section: s_i commutes with s_{i +- 1} (indices mod 4)."""
    return RacgPresentation.from_pairs(4, [(0, 1), (1, 2), (2, 3), (3, 0)], name="square")


def parse_presentation(doc: dict) -> RacgPresentation:
    """``{"generators": n, "commuting": [[i, j], ...]}`` with 1-based generators."""
    n = doc.get("generators")
    pairs = doc.get("commuting", [])
    if not isinstance(n, int) or n < 1 or not isinstance(pairs, list):
        raise BadGenerator('expected {"generators": n, "commuting": [[i, j], ...]}')
    out = []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2 or not all(isinstance(x, int) for x in p):
            raise BadGenerator(f"bad commuting pair {p!r}")
        if not all(1 <= x <= n for x in p) or p[0] == p[1]:
            raise BadGenerator(f"commuting pair {p} out of range 1..{n}")
        out.append((p[0] - 1, p[1] - 1))
    return RacgPresentation.from_pairs(n, out, name=doc.get("name", ""))


def parse_word(text: str, W: RacgPresentation) -> Word:
    """Whitespace-separated 1-based generator indices; ``#k`` names facet k (0-based)."""
    out = []
    for tok in text.split():
        try:
            x = int(tok[1:]) if tok.startswith("#") else int(tok) - 1
        except ValueError:
            raise BadGenerator(f"cannot read generator {tok!r}") from None
        out.append(x)
    return W.check(out)


def format_word(w: Word) -> str:
    return " ".join(str(x + 1) for x in w)


def inverse(w: Word) -> Word:
    return tuple(reversed(w))


def _cancel(W: RacgPresentation, w: Word) -> list[int]:
    out: list[int] = []
    for x in w:
        # slide x leftwards past letters it commutes with; cancel on meeting x
        j = len(out) - 1
        while j >= 0 and out[j] != x and W.commute(out[j], x):
            j -= 1
        if j >= 0 and out[j] == x:
            del out[j]
        else:
            out.append(x)
    return out


def _lex_least(W: RacgPresentation, w: list[int]) -> Word:
    rest = list(w)
    out = []
    while rest:
        best = None
        for pos, x in enumerate(rest):
            if all(W.commute(y, x) for y in rest[:pos]) and (best is None or x < rest[best]):
                best = pos
        out.append(rest.pop(best))
    return tuple(out)


def reduce(W: RacgPresentation, w) -> Word:
    return _lex_least(W, _cancel(W, W.check(w)))


def multiply(W: RacgPresentation, *words) -> Word:
    return reduce(W, tuple(x for w in words for x in w))


def equal(W: RacgPresentation, w1, w2) -> bool:
    return not _cancel(W, W.check(w1) + inverse(W.check(w2)))


def is_identity(W: RacgPresentation, w) -> bool:
    return not _cancel(W, W.check(w))


def power(w: Word, n: int) -> Word:
    return w * n if n >= 0 else inverse(w) * (-n)


# -- independent oracle -----------------------------------------------------

class TitsRepresentation:
    """Faithful integer representation sigma_s(v) = v - 2 B(e_s, v) e_s.

    B(e_s, e_t) is 1 on the diagonal, 0 for commuting pairs and -1 for
    free pairs (cos(pi/m) with m = 2 or infinity).
    """

    def __init__(self, W: RacgPresentation):
        self.W = W
        n = W.n
        self.free = [[t for t in range(n) if t != s and not W.commute(s, t)] for s in range(n)]
        self.identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def act(self, s: int, m):
        """sigma_s * m (row operation on row s)."""
        rows = list(m)
        row = [-x for x in rows[s]]
        for t in self.free[s]:
            row = [a + 2 * b for a, b in zip(row, rows[t])]
        rows[s] = tuple(row)
        return tuple(rows)

    def element(self, w) -> tuple:
        m = self.identity
        for s in reversed(self.W.check(w)):
            m = self.act(s, m)
        return m

    def equal(self, w1, w2) -> bool:
        return self.element(w1) == self.element(w2)


@dataclass
class CayleyBall:
    """Elements within ``radius`` of 1, keyed by their Tits matrix.

    ``words`` maps each element to its shortlex-least geodesic; elements are
    discovered level by level with generators tried in increasing order.
    """

    W: RacgPresentation
    radius: int | None = None
    cap: int = 10**6
    words: dict = field(default_factory=dict)
    complete: bool = False

    def __post_init__(self):
        rep = self.rep = TitsRepresentation(self.W)
        self.words = {rep.identity: ()}
        level = [(rep.identity, ())]
        depth = 0
        while level and (self.radius is None or depth < self.radius):
            nxt = []
            for m, w in level:  # level is in lexicographic order of words
                for s in range(self.W.n):
                    # right multiplication: element(w s) = element(w) * sigma_s
                    m2 = self._right(m, s)
                    if m2 not in self.words:
                        self.words[m2] = w + (s,)
                        nxt.append((m2, w + (s,)))
                        if len(self.words) > self.cap:
                            raise OracleOverflow(f"more than {self.cap} elements")
            level = nxt
            depth += 1
        self.complete = not level

    def _right(self, m, s):
        # m * sigma_s: col_s <- -col_s, col_t <- col_t + 2 col_s for free t
        free = self.rep.free[s]
        rows = []
        for row in m:
            r = list(row)
            r[s] = -row[s]
            for t in free:
                r[t] = row[t] + 2 * row[s]
            rows.append(tuple(r))
        return tuple(rows)

    def __len__(self) -> int:
        return len(self.words)

    def normal_form(self, w) -> Word | None:
        """Shortlex geodesic of w's element, or None if outside the ball."""
        return self.words.get(self.rep.element(w))


# -- phi, sections and lifts for a square section ------------------------------

def phi(colors, w) -> int:
    """Image in Z2^3 of a word under s_i -> colors[i]."""
    out = 0
    for x in w:
        out ^= colors[x]
    return out


def _check_edge_index(i: int) -> int:
    if i not in (1, 2, 3, 4):
        raise BadIndex(f"edge index must be 1..4, got {i!r}")
    return i - 1


def section_group(cls: SectionClass) -> frozenset[int]:
    """The group the section is defined on: <e1, e2> or all of Z2^3."""
    return span(cls.canonical_tuple)


def gamma_section(cls: SectionClass) -> dict[int, Word]:
    """gamma_F as a table g -> word in W_F.

    gamma(e1) = s1, gamma(e2) = s2 and, in rank 3, gamma(e3) = s1 s3 s1,
    extended as gamma(e3^c e1^a e2^b) = gamma(e3)^c s1^a s2^b.  Putting the
    e3 factor first makes the copies glued along f1 and f2 and the killed
    f3-crossings of the section's presentation map to 1.
    """
    W = square_presentation()
    out = {}
    for g in section_group(cls):
        a, b, c = g & 1, g >> 1 & 1, g >> 2 & 1
        w = (0, 2, 0) * c + (0,) * a + (1,) * b
        out[g] = reduce(W, w)
    return out


def psi_generator(cls: SectionClass, i: int, g: int) -> Word:
    """S_{i,g} = gamma(g) s_i gamma(g * lambda(f_i))^-1, reduced in W_F."""
    k = _check_edge_index(i)
    gamma = gamma_section(cls)
    lam_i = cls.canonical_tuple[k]
    if g not in gamma:
        raise BadIndex(f"{fmt(g)} is outside the section group")
    return reduce(square_presentation(), gamma[g] + (k,) + inverse(gamma[g ^ lam_i]))


# A relator is a tuple of (generator key, exponent) pairs.

@dataclass
class Presentation:
    generators: list
    relators: dict[str, list] = field(default_factory=dict)  # family -> relators


def section_pi1_presentation(cls: SectionClass) -> Presentation:
    """pi_1(M_F, p0) on generators beta_{i,g} (keys (i, g), i = 1..4)."""
    group = sorted(section_group(cls))
    lam = dict(zip((1, 2, 3, 4), cls.canonical_tuple))
    gens = [(i, g) for i in (1, 2, 3, 4) for g in group]
    pres = Presentation(gens)
    pres.relators["involution"] = [
        (((i, g), 1), ((i, g ^ lam[i]), 1)) for i, g in gens
    ]
    comm = []
    for i in (1, 2, 3, 4):
        for j in (1, 2, 3, 4):
            if j in (i % 4 + 1, (i - 2) % 4 + 1):
                for g in group:
                    comm.append((
                        ((i, g), 1), ((j, g ^ lam[i]), 1),
                        ((i, g ^ lam[j]), -1), ((j, g), -1),
                    ))
    pres.relators["commutation"] = comm
    killed = [(((i, g), 1),) for i in (1, 2) for g in group]
    if cls.rank == 3:
        killed += [(((3, g), 1),) for g in (E1, E1 | 2, E1 | E3, 7)]
    pres.relators["basepoint"] = killed
    return pres


def apply_to_relator(W: RacgPresentation, image, relator) -> Word:
    word = ()
    for key, e in relator:
        w = image(key)
        word += w if e == 1 else inverse(w)
    return reduce(W, word)


@dataclass
class SequenceReport:
    section: SectionClass
    failures: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_exact_sequences(cls: SectionClass) -> SequenceReport:
    """Check phi_F gamma_F = id, S_{i,g} in ker phi_F and psi_F(relators) = 1."""
    W = square_presentation()
    colors = cls.canonical_tuple
    rep = SequenceReport(cls)
    gamma = gamma_section(cls)
    for g, w in sorted(gamma.items()):
        if phi(colors, w) != g:
            rep.failures.append(("splitting", fmt(g), format_word(w)))
    rep.checked["splitting"] = len(gamma)
    n = 0
    for i in (1, 2, 3, 4):
        for g in sorted(gamma):
            S = psi_generator(cls, i, g)
            n += 1
            if phi(colors, S) != 0:
                rep.failures.append(("kernel", (i, fmt(g)), format_word(S)))
    rep.checked["kernel"] = n
    pres = section_pi1_presentation(cls)
    for family, rels in pres.relators.items():
        for r in rels:
            img = apply_to_relator(W, lambda key: psi_generator(cls, *key), r)
            if img:
                rep.failures.append((family, r, format_word(img)))
        rep.checked[family] = len(rels)
    return rep


# -- pi_1(M) and the maps of the commutative square -------------------------

def base_vertex(P: SimplePolytope3) -> int:
    """The vertex whose facet triple is lexicographically least."""
    return P.triple_vertex[min(P.triple_vertex)]


def pi1_presentation(P: SimplePolytope3, lam: CharacteristicMap, v: int | None = None) -> Presentation:
    """pi_1(M, v) on generators alpha_{F,g} (keys (F, g))."""
    require_valid(P, lam)
    if v is None:
        v = base_vertex(P)
    if v not in P.vertex_triple:
        raise BadVertex(f"no vertex {v!r}")
    gens = [(F, g) for F in range(P.num_facets) for g in range(8)]
    pres = Presentation(gens)
    pres.relators["involution"] = [(((F, g), 1), ((F, g ^ lam[F]), 1)) for F, g in gens]
    comm = []
    for F in range(P.num_facets):
        for F2 in sorted(P.adjacency[F]):
            for g in range(8):
                comm.append((
                    ((F, g), 1), ((F2, g ^ lam[F]), 1),
                    ((F, g ^ lam[F2]), -1), ((F2, g), -1),
                ))
    pres.relators["commutation"] = comm
    pres.relators["basepoint"] = [(((F, g), 1),) for F in P.vertex_triple[v] for g in range(8)]
    return pres


def polytope_section(P: SimplePolytope3, lam: CharacteristicMap, v: int | None = None) -> dict[int, Word]:
    """gamma: Z2^3 -> W_P over the basis of colors at v, t_F for those facets.

    The three facets at v pairwise commute, so this is a homomorphism.
    """
    if v is None:
        v = base_vertex(P)
    facets = P.vertex_triple[v]
    cols = [lam[F] for F in facets]
    W = presentation_from_polytope(P)
    out = {}
    for bits in range(8):
        g = 0
        w = []
        for k in range(3):
            if bits >> k & 1:
                g ^= cols[k]
                w.append(facets[k])
        out[g] = reduce(W, w)
    return out


def psi_alpha(P: SimplePolytope3, lam: CharacteristicMap, key, v: int | None = None) -> Word:
    """psi(alpha_{F,g}) = gamma(g) t_F gamma(g * lambda(F))^-1 in W_P."""
    F, g = key
    gamma = polytope_section(P, lam, v)
    return reduce(presentation_from_polytope(P), gamma[g] + (F,) + inverse(gamma[g ^ lam[F]]))


def verify_psi_homomorphism(P: SimplePolytope3, lam: CharacteristicMap, v: int | None = None) -> list:
    """Relators of pi_1(M, v) whose psi-image is not trivial in W_P."""
    W = presentation_from_polytope(P)
    gamma = polytope_section(P, lam, v)
    cache = {}

    def image(key):
        if key not in cache:
            F, g = key
            cache[key] = reduce(W, gamma[g] + (F,) + inverse(gamma[g ^ lam[F]]))
        return cache[key]

    bad = []
    for family, rels in pi1_presentation(P, lam, v).relators.items():
        for r in rels:
            if apply_to_relator(W, image, r):
                bad.append((family, r))
    return bad


def i_star(cls: SectionClass, i: int, g: int, belt: Belt) -> tuple:
    """Image of beta_{i,g} as a product of alpha-generators ((F, g), exponent)."""
    k = _check_edge_index(i)
    if belt.k != 4:
        raise NotAFourBelt(f"belt of length {belt.k}")
    if g not in section_group(cls):
        raise BadIndex(f"{fmt(g)} is outside the section group")
    F = belt[k]
    if cls.rank == 3 and i == 3:
        lam1, lam3 = cls.canonical_tuple[0], cls.canonical_tuple[2]
        return (((F, g ^ lam3 ^ lam1), 1), ((F, g), 1))
    return (((F, g), 1),)


def j_star(belt: Belt, w) -> Word:
    """s_i -> t_{F_i}, letter by letter."""
    if belt.k != 4:
        raise NotAFourBelt(f"belt of length {belt.k}")
    return tuple(belt[x] for x in w)


@dataclass
class DiagramReport:
    section: SectionClass
    belt: Belt
    base_vertex: int
    agree: list = field(default_factory=list)
    disagree: list = field(default_factory=list)  # (i, g, j_*psi_F word, psi i_* word)

    @property
    def commutes(self) -> bool:
        return not self.disagree


def normalized_belt(P: SimplePolytope3, lam: CharacteristicMap, belt: Belt):
    """Reorder the belt and change basis so lambda restricts to a canonical tuple.

    Returns (class, reordered belt, transformed coloring).
    """
    from .coloring import normalize_section

    cls, order, table = normalize_section(tuple(lam[f] for f in belt.facet_cycle))
    return cls, Belt(tuple(belt[i] for i in order)), lam.transformed(table)


def diagram_check(
    P: SimplePolytope3, lam: CharacteristicMap, belt: Belt, v: int | None = None
) -> DiagramReport:
    """Compare j_* psi_F and psi i_* on every generator beta_{i,g}.

    Disagreements are reported, not corrected.
    """
    require_valid(P, lam)
    cls, b, lam2 = normalized_belt(P, lam, belt)
    if v is None:
        v = base_vertex(P)
    W = presentation_from_polytope(P)
    gamma = polytope_section(P, lam2, v)
    rep = DiagramReport(cls, b, v)
    for i in (1, 2, 3, 4):
        for g in sorted(section_group(cls)):
            lhs = reduce(W, j_star(b, psi_generator(cls, i, g)))
            word = ()
            for (F, h), e in i_star(cls, i, g, b):
                piece = gamma[h] + (F,) + inverse(gamma[h ^ lam2[F]])
                word += piece if e == 1 else inverse(piece)
            rhs = reduce(W, word)
            (rep.agree if lhs == rhs else rep.disagree).append(
                (i, fmt(g), format_word(lhs), format_word(rhs))
            )
    return rep


# -- Z^2 witnesses -----------------------------------------------------------

@dataclass
class Z2Witness:
    belt: Belt
    x: Word
    y: Word
    commute: bool
    x_powers_nontrivial: bool
    y_powers_nontrivial: bool
    box_trivial_only_at_origin: bool
    power_bound: int
    box: int

    @property
    def verified(self) -> bool:
        return (
            self.commute
            and self.x_powers_nontrivial
            and self.y_powers_nontrivial
            and self.box_trivial_only_at_origin
        )

    def to_dict(self) -> dict:
        return {
            "belt": list(self.belt.facet_cycle),
            "x": [self.belt[0], self.belt[2]],
            "y": [self.belt[1], self.belt[3]],
            "verified": self.verified,
        }


def z2_witness(P: SimplePolytope3, belt: Belt, power_bound: int = 16, box: int = 4) -> Z2Witness:
    """x = t_{F1} t_{F3}, y = t_{F2} t_{F4}, checked for free commutation."""
    from .belts import is_belt

    if belt.k != 4 or not is_belt(P, belt.facet_cycle):
        raise NotAFourBelt(f"{belt.facet_cycle} is not a 4-belt of {P.name or 'P'}")
    W = presentation_from_polytope(P)
    F1, F2, F3, F4 = belt.facet_cycle
    x, y = (F1, F3), (F2, F4)
    commute = equal(W, x + y, y + x)
    xp = all(not is_identity(W, power(x, n)) for n in range(1, power_bound + 1))
    yp = all(not is_identity(W, power(y, n)) for n in range(1, power_bound + 1))
    box_ok = all(
        (a, b) == (0, 0) or not is_identity(W, power(x, a) + power(y, b))
        for a in range(-box, box + 1)
        for b in range(-box, box + 1)
    )
    return Z2Witness(belt, x, y, commute, xp, yp, box_ok, power_bound, box)


def has_z2_subgroup(P: SimplePolytope3) -> tuple[bool, Z2Witness | None]:
    """W_P contains Z^2 iff P has a 4-belt; cross-checked by an induced 4-cycle search."""
    belts = find_belts(P, 4)
    induced = has_induced_four_cycle(P)
    if bool(belts) != (induced is not None):
        raise InternalError(f"belt search ({len(belts)}) and induced 4-cycle search ({induced}) disagree")
    if not belts:
        return False, None
    return True, z2_witness(P, belts[0])


def kernel_words(W: RacgPresentation, colors, max_len: int):
    """Distinct nonempty normal forms of length <= max_len lying in ker phi."""
    ball = CayleyBall(W, radius=max_len)
    return sorted(
        (w for w in ball.words.values() if w and phi(colors, w) == 0),
        key=lambda w: (len(w), w),
    )
