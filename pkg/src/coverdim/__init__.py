"""Poset dimension and clique subdivisions in cover graphs."""

__version__ = "0.1.0"

from .dimension import (  # noqa: E402
    chi,
    dim_exact,
    dim_star_exact,
    is_reversible,
    largest_standard_example,
)
from .extractor import ExtractParams, extract, paper_constants  # noqa: E402
from .generators import kelly, standard_example  # noqa: E402
from .kernels import BACKEND  # noqa: E402
from .kk import KKParams, kk_extract  # noqa: E402
from .minor import SubdivisionCertificate, UGraph, find_clique_subdivision, verify_subdivision  # noqa: E402
from .poset import Poset, min_max_reduction, parse_poset, poset_from_cover  # noqa: E402
from .unfolding import select_support, unfold  # noqa: E402

__all__ = [
    "BACKEND",
    "ExtractParams",
    "KKParams",
    "Poset",
    "SubdivisionCertificate",
    "UGraph",
    "chi",
    "dim_exact",
    "dim_star_exact",
    "extract",
    "find_clique_subdivision",
    "is_reversible",
    "kelly",
    "kk_extract",
    "largest_standard_example",
    "min_max_reduction",
    "paper_constants",
    "parse_poset",
    "poset_from_cover",
    "select_support",
    "standard_example",
    "unfold",
    "verify_subdivision",
]
