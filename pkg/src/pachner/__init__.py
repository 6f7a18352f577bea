"""Generalized 3-manifold triangulations, elementary moves, isomorphism
signatures and move-connectivity searches."""

from .errors import (
    FacetSelfGluing,
    IndexOutOfRange,
    InconsistentGluing,
    IneligibleSeed,
    IneligibleSite,
    InvalidEdge,
    MalformedSignature,
    NoEligibleMove,
    NotClosed,
    PachnerError,
    ParseError,
    SeedMismatch,
    WouldCreateInvalid,
)
from .kernel import (
    Gluing,
    Skeleton,
    Triangulation,
    ValidityReport,
    VertexLink,
    build,
    compute_skeleton,
    disjoint_union,
    format_gluing_table,
    parse_gluing_table,
    validate,
    vertex_links,
    z2_homology_ranks,
)
from .moves import (
    MoveKind,
    MoveSequence,
    MoveSite,
    SequenceClass,
    apply,
    check_sequence,
    classify_sequence,
    enumerate_moves,
    inverse_site,
    successors,
    verify_sequence,
)
from . import fixtures
from .perm import Perm4
from .search import (
    SearchConfig,
    SearchResult,
    Strategy,
    StrategyComparison,
    compare_strategies,
    connect,
    scramble,
)
from .signature import decode, encode, is_isomorphic

__version__ = "0.1.0"

__all__ = [
    "FacetSelfGluing",
    "Gluing",
    "InconsistentGluing",
    "IndexOutOfRange",
    "IneligibleSeed",
    "IneligibleSite",
    "InvalidEdge",
    "MalformedSignature",
    "MoveKind",
    "MoveSequence",
    "MoveSite",
    "NoEligibleMove",
    "NotClosed",
    "PachnerError",
    "ParseError",
    "Perm4",
    "SearchConfig",
    "SearchResult",
    "SeedMismatch",
    "SequenceClass",
    "Skeleton",
    "Strategy",
    "StrategyComparison",
    "Triangulation",
    "ValidityReport",
    "VertexLink",
    "WouldCreateInvalid",
    "apply",
    "build",
    "check_sequence",
    "classify_sequence",
    "compare_strategies",
    "compute_skeleton",
    "connect",
    "decode",
    "disjoint_union",
    "encode",
    "enumerate_moves",
    "fixtures",
    "format_gluing_table",
    "inverse_site",
    "is_isomorphic",
    "parse_gluing_table",
    "scramble",
    "successors",
    "validate",
    "verify_sequence",
    "vertex_links",
    "z2_homology_ranks",
]
