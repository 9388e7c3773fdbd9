"""Exact rational tools for polymatroid extensions, amalgams and cone projections."""

from .core import (
    GroundSet,
    GroundSetError,
    LinFunctional,
    RankVector,
    classify,
    cond,
    info_expr,
    ingleton,
    is_polymatroid,
    restrict,
)
from .construct import (
    ExcessFunction,
    SubspaceArrangement,
    excess_conditions,
    extend_by_excess,
    modular_decomposition,
    rank_from_subspaces,
    rho,
    tighten,
    tighten_all,
    tighten_set,
)
from .cone import FacetMatrix, gamma_facets, restricted_rows
from .glue import Certificate, ExtensionPair, PairError, has_adhesive, has_amalgam, verify
from .io import ParseError, parse_polymatroid, format_polymatroid
from .polyproj import extreme_rays, facet_filter, project

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ExcessFunction",
    "ExtensionPair",
    "FacetMatrix",
    "GroundSet",
    "GroundSetError",
    "LinFunctional",
    "PairError",
    "ParseError",
    "RankVector",
    "SubspaceArrangement",
    "classify",
    "cond",
    "excess_conditions",
    "extend_by_excess",
    "extreme_rays",
    "facet_filter",
    "format_polymatroid",
    "gamma_facets",
    "has_adhesive",
    "has_amalgam",
    "info_expr",
    "ingleton",
    "is_polymatroid",
    "modular_decomposition",
    "parse_polymatroid",
    "project",
    "rank_from_subspaces",
    "restrict",
    "restricted_rows",
    "rho",
    "tighten",
    "tighten_all",
    "tighten_set",
    "verify",
]
