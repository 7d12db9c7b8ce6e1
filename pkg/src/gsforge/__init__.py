"""gsforge: prepare any small graph state with the fewest CZ gates / time steps.

The pipeline classifies a target graph's local-complementation orbit, picks an
optimal class representative (minimum edges and/or minimum chromatic index),
schedules its CZ gates into parallel layers via proper edge coloring, derives
the single-qubit Clifford correction layer, and verifies the result against a
stabilizer tableau oracle.
"""

from .errors import (
    CapabilityError,
    GraphFormatError,
    GsForgeError,
    IntegrityError,
    ResourceBudgetError,
    VerificationError,
)
from .graphs import (
    Graph,
    VertexPermutation,
    canonical_form,
    complete_graph,
    cycle_graph,
    empty_graph,
    find_isomorphism,
    from_edges,
    generate_connected_graphs,
    is_bipartite,
    is_connected,
    local_complement,
    max_degree,
    neighborhood,
    parse_edge_list,
    parse_graph6,
    path_graph,
    star_graph,
    write_graph6,
)

__all__ = [
    "CapabilityError",
    "Graph",
    "GraphFormatError",
    "GsForgeError",
    "IntegrityError",
    "ResourceBudgetError",
    "VerificationError",
    "VertexPermutation",
    "canonical_form",
    "complete_graph",
    "cycle_graph",
    "empty_graph",
    "find_isomorphism",
    "from_edges",
    "generate_connected_graphs",
    "is_bipartite",
    "is_connected",
    "local_complement",
    "max_degree",
    "neighborhood",
    "parse_edge_list",
    "parse_graph6",
    "path_graph",
    "star_graph",
    "write_graph6",
]

__version__ = "0.1.0"
