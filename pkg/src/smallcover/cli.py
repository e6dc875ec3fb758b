"""Command line interface.

JSON goes to stdout; ``--pretty`` adds a short human summary on stderr.
Exit codes: 0 success, 1 bad input, 2 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import belts as _belts
from .classify import classify, dumps
from .coloring import (
    classify_belt_section,
    enumerate_colorings,
    first_coloring,
    parse_coloring,
    require_valid,
    to_bits,
)
from .complex import build_section_surface, surface_report
from .errors import InputError, InternalError, NotAFourBelt, SchemaError
from .polytope import builtin, parse_polytope
from .racg import (
    equal,
    format_word,
    parse_presentation,
    parse_word,
    presentation_from_polytope,
    reduce,
    square_presentation,
)


def _read_doc(source: str):
    """A JSON file path, or ``builtin:<name>[:<k>]``."""
    if source.startswith("builtin:"):
        parts = source.split(":")[1:]
        if parts[0] == "square":
            return "square"
        param = None
        if len(parts) > 1:
            try:
                param = int(parts[1])
            except ValueError:
                raise SchemaError(f"bad builtin parameter {parts[1]!r}") from None
        return builtin(parts[0], param)
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source} is not JSON: {exc}") from None


def _polytope(source):
    doc = _read_doc(source)
    if isinstance(doc, dict):
        return parse_polytope(doc)
    if doc == "square":
        raise SchemaError("the square is a presentation, not a polytope")
    return doc


def _presentation(source):
    doc = _read_doc(source)
    if doc == "square":
        return square_presentation()
    if isinstance(doc, dict) and "generators" in doc:
        return parse_presentation(doc)
    P = parse_polytope(doc) if isinstance(doc, dict) else doc
    return presentation_from_polytope(P)


def _colorings(args, P):
    if args.coloring:
        doc = _read_doc(args.coloring)
        lam = parse_coloring(doc, P.num_facets)
        require_valid(P, lam)
        return [lam]
    mode = args.colorings
    if mode == "all":
        return enumerate_colorings(P, up_to_basis=False, max_facets=args.max_facets)
    if mode == "first":
        lam = first_coloring(P, max_facets=max(args.max_facets, P.num_facets))
        return [lam] if lam else []
    return []


def cmd_validate(args):
    P = _polytope(args.input)
    return {"valid": True, "name": P.name, "V": P.num_vertices, "E": P.num_edges, "F": P.num_facets}


def cmd_belts(args):
    P = _polytope(args.input)
    return {"belts": [list(b.facet_cycle) for b in _belts.find_belts(P, args.k)]}


def cmd_circuits(args):
    P = _polytope(args.input)
    cs = _belts.find_prismatic_circuits(P, args.k)
    return {
        "circuits": [
            {"facets": list(c.facet_cycle), "edges": [list(e) for e in c.edge_cycle]} for c in cs
        ]
    }


def cmd_colorings(args):
    P = _polytope(args.input)
    maps = enumerate_colorings(P, up_to_basis=args.up_to_basis, max_facets=args.max_facets)
    return {"count": len(maps), "colorings": [[to_bits(c) for c in m.colors] for m in maps]}


def cmd_classify(args):
    P = _polytope(args.input)
    return classify(P, _colorings(args, P))


def cmd_section(args):
    P = _polytope(args.input)
    lams = _colorings(args, P)
    if args.belt:
        cycle = tuple(int(x) for x in args.belt.split())
        for f in cycle:
            P.check_facet(f)
        if len(cycle) != 4 or not _belts.is_belt(P, cycle):
            raise NotAFourBelt(f"{list(cycle)} is not a 4-belt")
        belts = [_belts.Belt(cycle)]
    else:
        belts = _belts.find_belts(P, 4)
    out = []
    for lam in lams:
        for b in belts:
            cls = classify_belt_section(lam, b)
            rep = surface_report(build_section_surface(b, lam))
            out.append({
                "colors": [to_bits(c) for c in lam.colors],
                "belt": list(b.facet_cycle),
                "class": cls.to_dict(),
                "surface_report": rep.to_dict(),
                "agree": rep.surface == cls.surface,
            })
    return {"sections": out}


def cmd_reduce(args):
    W = _presentation(args.input)
    return {"normal_form": format_word(reduce(W, parse_word(args.word, W)))}


def cmd_equal(args):
    W = _presentation(args.input)
    return {"equal": equal(W, parse_word(args.word, W), parse_word(args.word2, W))}


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors: exit 1 with a JSON error object
    def error(self, message):
        print(dumps({"error": "UsageError", "message": message}))
        self.exit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smallcover", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--input", required=True, help="JSON path or builtin:<name>[:<k>]")
        sp.add_argument("--pretty", action="store_true")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "parse and validate a polytope")
    add("belts", cmd_belts, "list k-belts").add_argument("--k", type=int, default=4)
    add("circuits", cmd_circuits, "list prismatic k-circuits").add_argument(
        "--k", type=int, default=4, choices=(3, 4)
    )
    sp = add("colorings", cmd_colorings, "enumerate characteristic maps")
    sp.add_argument("--up-to-basis", action="store_true")
    sp.add_argument("--max-facets", type=int, default=16)
    for name, func, help in (
        ("classify", cmd_classify, "full classification report"),
        ("section", cmd_section, "classify 4-belt sections"),
    ):
        sp = add(name, func, help)
        sp.add_argument("--coloring", help="coloring JSON path")
        sp.add_argument("--colorings", choices=("all", "first", "none"), default=None)
        sp.add_argument("--max-facets", type=int, default=16)
        if name == "section":
            sp.add_argument("--belt", help='facet ids, e.g. "2 4 3 5"')
    add("racg-reduce", cmd_reduce, "normal form of a word").add_argument("--word", required=True)
    sp = add("racg-equal", cmd_equal, "compare two words")
    sp.add_argument("--word", required=True)
    sp.add_argument("--word2", required=True)
    return p


def _summary(command, result) -> str:
    if command == "classify":
        v = result["verdicts"]
        poly = result["polytope"]
        return (
            f"{poly['name'] or 'P'}: V={poly['V']} E={poly['E']} F={poly['F']}; "
            f"4-belts={result['belts']['belts_4']['count']}; "
            + ", ".join(f"{k}={v[k]}" for k in sorted(v))
        )
    return json.dumps(result, sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "colorings", None) is None and hasattr(args, "colorings"):
        args.colorings = "first" if args.command == "section" else "none"
    try:
        result = args.func(args)
    except InternalError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    except InputError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1
    print(dumps(result))
    if args.pretty:
        print(_summary(args.command, result), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
