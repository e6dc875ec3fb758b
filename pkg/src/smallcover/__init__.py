"""Small covers over simple 3-polytopes: belts, circuits, sections and Coxeter groups."""

from .belts import Belt, PrismaticCircuit, find_belts, find_prismatic_circuits, is_flag
from .classify import classify, run_theorem_suite
from .coloring import CharacteristicMap, enumerate_colorings, is_orientable, validate_coloring
from .polytope import SimplePolytope3, builtin, parse_polytope

__all__ = [
    "Belt",
    "CharacteristicMap",
    "PrismaticCircuit",
    "SimplePolytope3",
    "builtin",
    "classify",
    "enumerate_colorings",
    "find_belts",
    "find_prismatic_circuits",
    "is_flag",
    "is_orientable",
    "parse_polytope",
    "run_theorem_suite",
    "validate_coloring",
]
