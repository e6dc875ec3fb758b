"""Full pipeline: circuits, belts and the verdicts built on them."""

from __future__ import annotations

import json

from . import belts as _belts
from .coloring import (
    CharacteristicMap,
    classify_belt_section,
    is_orientable,
    require_valid,
    to_bits,
)
from .complex import build_manifold_complex, build_section_surface, complex_orientable, surface_report
from .errors import InternalError, SimplexExcluded
from .polytope import SimplePolytope3
from .racg import has_z2_subgroup, z2_witness

EXCLUDED = "excluded: P=Δ³"


def dumps(report: dict) -> str:
    """Canonical JSON text for reports (stable under load/dump round trips)."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _circuit_dict(c) -> dict:
    return {"facets": list(c.facet_cycle), "edges": [list(e) for e in c.edge_cycle]}


def coloring_block(P: SimplePolytope3, lam: CharacteristicMap, belts4=None) -> dict:
    require_valid(P, lam)
    if belts4 is None:
        belts4 = _belts.find_belts(P, 4)
    cx = build_manifold_complex(P, lam)
    chi = cx.euler_characteristic()
    orientable = is_orientable(lam)
    if complex_orientable(cx) != orientable:
        raise InternalError(f"orientability criteria disagree for {lam.describe()}")
    sections = []
    for b in belts4:
        cls = classify_belt_section(lam, b)
        rep = surface_report(build_section_surface(b, lam))
        if rep.surface != cls.surface:
            raise InternalError(
                f"belt {b.facet_cycle}: predicted {cls.surface}, complex gives {rep.surface}"
            )
        sections.append({
            "belt": list(b.facet_cycle),
            "class": cls.to_dict(),
            "surface_report": rep.to_dict(),
        })
    witnesses = [z2_witness(P, b).verified for b in belts4]
    return {
        "colors": [to_bits(c) for c in lam.colors],
        "orientable": orientable,
        "euler_characteristic": chi,
        "components": len(cx.top_components()),
        "sections": sections,
        "z2_witness_verified": all(witnesses) if witnesses else None,
    }


def classify(P: SimplePolytope3, colorings=()) -> dict:
    """Classification report; ``colorings`` is an iterable of characteristic maps."""
    simplex = P.is_simplex()
    p3 = _belts.find_prismatic_circuits(P, 3)
    p4 = _belts.find_prismatic_circuits(P, 4)
    b4 = _belts.find_belts(P, 4)
    flag = _belts.is_flag(P)
    atoroidal = not b4
    has_z2, _ = has_z2_subgroup(P)
    if has_z2 == atoroidal:
        raise InternalError("Z^2 subgroup search disagrees with the belt search")

    realizable = (not simplex) and not p3 and not p4
    verdicts = {
        "flag": flag,
        "atoroidal": atoroidal,
        "aspherical": EXCLUDED if simplex else flag,
        "hyperbolic_realizable": realizable,
        # the realizability criterion itself, which does not speak about the simplex
        "andreev": EXCLUDED if simplex else realizable,
    }
    if simplex:
        verdicts["flag_iff_no_prismatic_3"] = EXCLUDED
    else:
        chk = _belts.proposition_p1_check(P)
        if not chk.agree:
            raise InternalError(f"flagness and prismatic 3-circuits disagree on {P.name}")
        verdicts["flag_iff_no_prismatic_3"] = True
    if realizable and not (verdicts["atoroidal"] and verdicts["aspherical"] is True):
        raise InternalError("hyperbolic realizability without atoroidal and aspherical")

    report = {
        "polytope": {
            "name": P.name,
            "V": P.num_vertices,
            "E": P.num_edges,
            "F": P.num_facets,
            "is_simplex": simplex,
        },
        "circuits": {
            "prismatic_3": {"count": len(p3), "list": [_circuit_dict(c) for c in p3]},
            "prismatic_4": {"count": len(p4), "list": [_circuit_dict(c) for c in p4]},
        },
        "belts": {
            "belts_4": {"count": len(b4), "list": [list(b.facet_cycle) for b in b4]},
            "degenerate_4_cycles": [list(c) for c in _belts.degenerate_four_cycles(P)],
        },
        "verdicts": verdicts,
        "colorings": [coloring_block(P, lam, b4) for lam in colorings],
    }
    return report


# -- theorem suite --------------------------------------------------------------

def run_theorem_suite(corpus) -> list[dict]:
    """Per polytope: (a) 4-belts give verified Z^2 witnesses, (b) induced
    4-cycles match 4-belts, (c) with no prismatic 3-circuit, prismatic
    4-circuits exist iff 4-belts do, (d) flag iff no prismatic 3-circuit."""
    rows = []

    def row(P, name, status, detail=""):
        rows.append({"polytope": P.name, "assertion": name, "status": status, "detail": detail})

    for P in corpus:
        b4 = _belts.find_belts(P, 4)
        bad = [b.facet_cycle for b in b4 if not z2_witness(P, b).verified]
        row(P, "a_belt_gives_z2", "fail" if bad else "pass", f"{len(b4)} belts" + (f", failed {bad}" if bad else ""))

        induced = _belts.has_induced_four_cycle(P)
        row(P, "b_induced_4_cycle", "pass" if (induced is not None) == bool(b4) else "fail", str(induced))

        p3 = _belts.find_prismatic_circuits(P, 3)
        if p3:
            row(P, "c_circuit_implies_belt", "skipped", f"{len(p3)} prismatic 3-circuits")
        else:
            p4 = _belts.find_prismatic_circuits(P, 4)
            missing = [c.facet_cycle for c in p4 if _belts.circuit_to_belt(P, c) is None]
            ok = bool(p4) == bool(b4) and not missing
            row(P, "c_circuit_implies_belt", "pass" if ok else "fail", f"{len(p4)} circuits, {len(b4)} belts")

        try:
            chk = _belts.proposition_p1_check(P)
        except SimplexExcluded:
            row(P, "d_flag_iff_no_prismatic_3", "skipped", "tetrahedron")
        else:
            row(P, "d_flag_iff_no_prismatic_3", "pass" if chk.agree else "fail", f"flag={chk.flag}")
    return rows
