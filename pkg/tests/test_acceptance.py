"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` (the lines are printed
even without ``-s``).
"""

import random
import time
from itertools import product

import pytest

from conftest import E1, E2, E3
from oracles import brute_belts, brute_prismatic_circuits
from smallcover.belts import (
    find_belts,
    find_prismatic_circuits,
    has_induced_four_cycle,
    is_flag,
)
from smallcover.classify import classify
from smallcover.coloring import ALL_SECTION_CLASSES, CharacteristicMap, enumerate_colorings, is_orientable
from smallcover.complex import build_manifold_complex, complex_orientable, section_complex, surface_report
from smallcover.polytope import builtin, default_corpus
from smallcover.racg import (
    CayleyBall,
    TitsRepresentation,
    equal,
    presentation_from_polytope,
    reduce,
    square_presentation,
    verify_exact_sequences,
    z2_witness,
)

CORPUS = default_corpus()

# the named prism(5) colorings: bottom, top, then sides 0..4
PRISM5_NAMED = {
    "sides e1,e2,e1,e2,e1e2 caps e3": CharacteristicMap((E3, E3, E1, E2, E1, E2, E1 | E2)),
    "sides e1,e2,e1,e2,e3 caps e1e2e3": CharacteristicMap((7, 7, E1, E2, E1, E2, E3)),
    "sides e1,e2,e1,e2,e1e2e3 caps e3": CharacteristicMap((E3, E3, E1, E2, E1, E2, 7)),
}


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail, seconds):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail} ({seconds:.2f}s)")

    return emit


def test_criterion_1_belts_and_circuits(report):
    t0 = time.perf_counter()
    mismatches = []
    for P in CORPUS:
        for k in (3, 4, 5):
            if {b.facet_cycle for b in find_belts(P, k)} != brute_belts(P, k):
                mismatches.append((P.name, "belts", k))
        for k in (3, 4):
            found = {c.facet_cycle for c in find_prismatic_circuits(P, k)}
            if found != brute_prismatic_circuits(P, k):
                mismatches.append((P.name, "circuits", k))
    counts = {
        "cube 4-belts": len(find_belts(builtin("cube"), 4)),
        "prism5 4-belts": len(find_belts(builtin("prism", 5), 4)),
        "dodecahedron P3": len(find_prismatic_circuits(builtin("dodecahedron"), 3)),
        "dodecahedron P4": len(find_prismatic_circuits(builtin("dodecahedron"), 4)),
        "prism3 P3": len(find_prismatic_circuits(builtin("prism", 3), 3)),
    }
    expected = {"cube 4-belts": 3, "prism5 4-belts": 5, "dodecahedron P3": 0, "dodecahedron P4": 0, "prism3 P3": 1}
    dt = time.perf_counter() - t0
    ok = not mismatches and counts == expected and dt < 10
    report(1, ok, f"oracle mismatches={len(mismatches)}, counts={counts}", dt)
    assert ok, (mismatches, counts, dt)


def test_criterion_2_five_sections(report):
    t0 = time.perf_counter()
    expected = [
        ("TwoTori", [(0, True), (0, True)]),
        ("TwoKleinBottles", [(0, False), (0, False)]),
        ("Torus", [(0, True)]),
        ("KleinBottle", [(0, False)]),
        ("Torus", [(0, True)]),
    ]
    got = []
    for cls in ALL_SECTION_CLASSES:
        rep = surface_report(section_complex(cls.canonical_tuple))
        got.append((rep.surface, [(c.chi, c.orientable) for c in rep.components]))
    dt = time.perf_counter() - t0
    ok = got == expected
    report(2, ok, "surfaces " + ", ".join(s for s, _ in got), dt)
    assert ok, got


def test_criterion_3_exact_sequences(report):
    t0 = time.perf_counter()
    reps = [verify_exact_sequences(cls) for cls in ALL_SECTION_CLASSES]
    checked = sum(sum(r.checked.values()) for r in reps)
    failures = sum(len(r.failures) for r in reps)
    dt = time.perf_counter() - t0
    ok = failures == 0
    report(3, ok, f"5 classes, {checked} checks, {failures} failures", dt)
    assert ok, [r.failures[:3] for r in reps]


def _word_problem(W, rng):
    """(single-word mismatches, exhaustive pair mismatches, random pair mismatches, pairs checked)."""
    ball = CayleyBall(W, radius=6)
    tits = TitsRepresentation(W)
    by_len = {k: list(product(range(W.n), repeat=k)) for k in range(7)}
    single = sum(reduce(W, w) != ball.normal_form(w) for k in by_len for w in by_len[k])
    # all pairs of words of length <= 6 at once: normal forms and matrices
    # must induce the same partition
    nf_to_elem, elem_to_nf = {}, {}
    for k in by_len:
        for w in by_len[k]:
            nf, m = reduce(W, w), tits.element(w)
            single += nf_to_elem.setdefault(nf, m) != m
            single += elem_to_nf.setdefault(m, nf) != nf
    # every pair whose combined length is at most 6
    elem = {w: tits.element(w) for k in by_len for w in by_len[k]}
    pairs = bad_pairs = 0
    for a in range(7):
        for b in range(7 - a):
            for u in by_len[a]:
                for v in by_len[b]:
                    pairs += 1
                    bad_pairs += equal(W, u, v) != (elem[u] == elem[v])
    bad_random = 0
    for _ in range(1000):
        u = tuple(rng.randrange(W.n) for _ in range(rng.randint(0, 8)))
        v = tuple(rng.randrange(W.n) for _ in range(rng.randint(0, 8)))
        if rng.random() < 0.25:  # make sure equal pairs occur
            v = tuple(reversed(u)) if rng.random() < 0.5 else reduce(W, u)
        bad_random += equal(W, u, v) != tits.equal(u, v)
    return single, bad_pairs, bad_random, pairs


def test_criterion_4_word_problem(report):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    results = {}
    for name, W in (
        ("W_F", square_presentation()),
        ("W_simplex", presentation_from_polytope(builtin("simplex"))),
        ("W_prism3", presentation_from_polytope(builtin("prism", 3))),
    ):
        results[name] = _word_problem(W, rng)
    simplex_order = len(CayleyBall(presentation_from_polytope(builtin("simplex"))))
    dt = time.perf_counter() - t0
    bad = sum(sum(r[:3]) for r in results.values())
    pairs = sum(r[3] for r in results.values())
    ok = bad == 0 and simplex_order == 16 and dt < 60
    report(4, ok, f"all words <= 6 partition-checked, {pairs} pairs via equal + 3000 random, {bad} mismatches, |W_simplex|={simplex_order}", dt)
    assert ok, (results, simplex_order, dt)


def test_criterion_5_z2_witnesses(report):
    t0 = time.perf_counter()
    total, failed = 0, []
    for P in CORPUS:
        for b in find_belts(P, 4):
            total += 1
            if not z2_witness(P, b, power_bound=16, box=4).verified:
                failed.append((P.name, b.facet_cycle))
    dt = time.perf_counter() - t0
    ok = total > 0 and not failed
    report(5, ok, f"{total} belts, {len(failed)} unverified witnesses", dt)
    assert ok, failed


def test_criterion_6_induced_four_cycles(report):
    t0 = time.perf_counter()
    bad = [P.name for P in CORPUS if (has_induced_four_cycle(P) is not None) != bool(find_belts(P, 4))]
    dt = time.perf_counter() - t0
    ok = not bad
    report(6, ok, f"{len(CORPUS)} polytopes, disagreements {bad}", dt)
    assert ok, bad


def _orientability_cases():
    cases = [(builtin("simplex"), m) for m in enumerate_colorings(builtin("simplex"))]
    cases += [(builtin("cube"), m) for m in enumerate_colorings(builtin("cube"))]
    cases += [(builtin("prism", 5), m) for m in PRISM5_NAMED.values()]
    return cases


@pytest.fixture(scope="module")
def orientability_run():
    t0 = time.perf_counter()
    rows = []
    for P, lam in _orientability_cases():
        cx = build_manifold_complex(P, lam)
        rows.append((P.name, lam, is_orientable(lam), complex_orientable(cx), cx.euler_characteristic()))
    return rows, time.perf_counter() - t0


def test_criterion_7_orientability(report, orientability_run):
    rows, dt = orientability_run
    bad = [(n, lam.describe()) for n, lam, a, b, _ in rows if a != b]
    per = {}
    for n, *_ in rows:
        per[n] = per.get(n, 0) + 1
    ok = not bad and per == {"simplex": 168, "cube": 4200, "prism5": 3} and dt < 120
    report(7, ok, f"colorings {per}, disagreements {len(bad)}", dt)
    assert ok, (bad[:5], per, dt)


def test_criterion_8_euler_characteristic(report, orientability_run):
    t0 = time.perf_counter()
    rows, _ = orientability_run
    bad = [(n, lam.describe(), chi) for n, lam, _, _, chi in rows if chi != 0]
    dt = time.perf_counter() - t0
    ok = not bad
    report(8, ok, f"{len(rows)} complexes, nonzero chi {len(bad)}", dt)
    assert ok, bad[:5]


def test_criterion_9_flag_iff_no_prismatic_3(report):
    t0 = time.perf_counter()
    rows = []
    for P in CORPUS:
        if P.is_simplex():
            continue
        flag = is_flag(P)  # facet-triple check
        no_p3 = not find_prismatic_circuits(P, 3)  # edge-crossing search
        rows.append((P.name, flag, no_p3))
    bad = [r for r in rows if r[1] != r[2]]
    dt = time.perf_counter() - t0
    ok = not bad and len(rows) == len(CORPUS) - 1
    report(9, ok, f"{len(rows)} polytopes, disagreements {bad}", dt)
    assert ok, bad


def test_criterion_10_andreev(report):
    t0 = time.perf_counter()
    verdicts, errors = {}, []
    for P in CORPUS:
        try:
            verdicts[P.name] = classify(P)["verdicts"]["hyperbolic_realizable"]
        except AssertionError as exc:  # consistency assertions raise InternalError
            errors.append((P.name, str(exc)))
    expected = {P.name: P.name == "dodecahedron" for P in CORPUS}
    dt = time.perf_counter() - t0
    ok = not errors and verdicts == expected
    realizable = sorted(n for n, v in verdicts.items() if v)
    report(10, ok, f"realizable {realizable}, assertion breaches {len(errors)}", dt)
    assert ok, (verdicts, errors)
