"""Exception hierarchy shared by all modules."""


class PachnerError(Exception):
    """Base class for every error raised by this package."""


class InconsistentGluing(PachnerError):
    """Two proposed gluings of the same facets are not mutually inverse."""


class FacetSelfGluing(PachnerError):
    """A facet was glued to itself."""


class IndexOutOfRange(PachnerError, IndexError):
    """A tetrahedron, facet or skeleton index is out of range."""


class NotClosed(PachnerError):
    """The operation needs every facet to be glued."""


class InvalidEdge(PachnerError):
    """The triangulation has an edge identified with itself in reverse."""


class IneligibleSite(PachnerError):
    """A move site is not eligible on the given triangulation."""


class WouldCreateInvalid(IneligibleSite):
    """Formally applying the move would change the validity classification."""


class MalformedSignature(PachnerError, ValueError):
    """A signature string cannot be decoded."""


class SeedMismatch(PachnerError):
    """Search seeds differ in size or material-vertex count."""


class IneligibleSeed(PachnerError):
    """A search seed is not a closed pseudo-manifold triangulation."""


class NoEligibleMove(PachnerError):
    """A random walk cannot continue within its size cap."""


class ParseError(PachnerError, ValueError):
    """A text input (gluing table, sequence, case file) is malformed."""
