"""Exception hierarchy.

``InputError`` subclasses describe bad user input (CLI exit code 1).
``InternalError`` subclasses signal a broken invariant, i.e. a bug
(CLI exit code 2).
"""


class SmallCoverError(Exception):
    pass


class InputError(SmallCoverError, ValueError):
    pass


class InternalError(SmallCoverError, AssertionError):
    pass


# polytope parsing / queries
class SchemaError(InputError):
    pass


class NotSimple(InputError):
    pass


class NotClosed(InputError):
    pass


class EulerViolation(InputError):
    pass


class DuplicateFacet(InputError):
    pass


class BadIncidence(InputError):
    """Two facets share more than one edge, or the facet graph is disconnected."""


class UnknownBuiltin(InputError):
    pass


class BadParameter(InputError):
    pass


class BadFacetId(InputError):
    pass


class BadFace(InputError):
    pass


# belts
class SimplexExcluded(InputError):
    """The requested statement is not claimed for the tetrahedron."""


class NotAFourBelt(InputError):
    pass


# colorings
class MissingFacet(InputError):
    pass


class InvalidColoring(InputError):
    pass


class TooLarge(InputError):
    pass


class UnclassifiableSection(InternalError):
    pass


# complexes
class NotClosedSurface(InternalError):
    pass


class NotClosedManifold(InternalError):
    pass


# coxeter groups
class BadGenerator(InputError):
    pass


class BadIndex(InputError):
    pass


class BadVertex(InputError):
    pass


class OracleOverflow(SmallCoverError):
    """The Cayley-graph enumeration hit its element cap."""
