"""Finite ordered amalgamation classes, their graph reducts, and finite forcing conditions."""

from .amalgam import (
    BlockDecomposition,
    InterlaceType,
    edgeless_amalgam,
    interlaces,
    make_interlace,
    one_edge_amalgam,
)
from .embedding import Membership, Verdict, class_membership, subgraph_embed, weak_embed
from .enumeration import Catalog, catalog_stats, enumerate_levels, next_level
from .forcing import Condition, delta_amalgamate, extends, is_condition, sample_chain
from .interlace import TupleGraph, interlace_graph, shift_graph
from .invariants import (
    Graph,
    GraphReduct,
    chromatic_number,
    girth,
    is_bipartite,
    marker_hom_check,
    odd_girth,
    reduct,
)
from .structures import (
    Structure,
    base_structure,
    induced_substructure,
    marker_tuple,
    structures_equal,
    validate,
)

__all__ = [
    "BlockDecomposition", "Catalog", "Condition", "Graph", "GraphReduct", "InterlaceType",
    "Membership", "Structure", "TupleGraph", "Verdict", "base_structure", "catalog_stats",
    "chromatic_number", "class_membership", "delta_amalgamate", "edgeless_amalgam",
    "enumerate_levels", "extends", "girth", "induced_substructure", "interlace_graph",
    "interlaces", "is_bipartite", "is_condition", "make_interlace", "marker_hom_check",
    "marker_tuple", "next_level", "odd_girth", "one_edge_amalgam", "reduct", "sample_chain",
    "shift_graph", "structures_equal", "subgraph_embed", "validate", "weak_embed",
]
