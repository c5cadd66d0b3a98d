"""Exact pebbling numbers, extremal constructions and theorem censuses for digraphs."""

from .canon import canonical_form, canonical_graph, enumerate_digraphs
from .constructions import (
    build_layered,
    build_mixed2,
    bound_construction_certified,
    bound_dboundsharp_statement,
    bound_dboundupper,
    verify_bounds,
)
from .digraph import (
    Digraph,
    DigraphError,
    distance_matrix,
    is_oriented,
    parse_digraph,
    serialize_digraph,
    strong_connectivity,
    strong_diameter,
)
from .pebbling import (
    BudgetExceeded,
    NotStronglyConnected,
    classify,
    is_solvable,
    max_unsolvable,
    pebbling_number,
    pebbling_number_rooted,
    profile,
    verify_two3no2,
)

__version__ = "0.1.0"
