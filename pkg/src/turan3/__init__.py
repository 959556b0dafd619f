"""Exact small Turan numbers of 3-uniform hypergraphs."""

from .core import Hypergraph, ParseError, HypergraphError, decode, encode, make, read_h3, write_h3
from .iso import CanonicalForm, are_isomorphic, automorphism_count, canonical_form
from .patterns import Embedding, Pattern, build_pattern, find_embedding, is_free, parse_family
from .search import (
    SearchError,
    SearchProblem,
    SearchResult,
    certify,
    conditional_turan,
    extremal_search,
    second_order,
    turan,
)

__version__ = "0.1.0"
