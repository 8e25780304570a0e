"""Exact toolkit for the metric dimension of graphs with one extra edge.

Submodules: `graphs` (representation, generators, BFS apsp), `solver`
(resolving sets, exact metric dimension), `perturb` (single-edge distance
calculus and general-graph bounds), `grid2d` (2-D closed forms, resolving-set
constructors, conjecture harness), `griddim` (d-dimensional bounds),
`distribution` (random-edge MD distribution), `cli`.
"""

from .graphs import (
    DisconnectedGraphError,
    DistanceMatrix,
    EdgeListFormatError,
    Graph,
    add_edge,
    apsp,
    grid,
    grid_apsp,
    gstar,
    induced_subgraph,
    parse_edge_list,
    format_edge_list,
    ring,
)
from .solver import KMaxExceededError, MdResult, forced_pairs, is_resolving, metric_dimension, resolves
from .perturb import (
    ExtraEdge,
    GainProfile,
    RegionPartition,
    augmented_apsp,
    augmented_distance,
    augment_matrix,
    gain,
    gain_profile,
    region_partition,
    special_region,
)
from .grid2d import GridEdgeConfig, canonicalize, conjecture_predict, conjecture_verify, exact_md
from .griddim import DimGridConfig, md_lower_bound, resolving_set_2d_plus_2
from .distribution import fraction_cbar, md_distribution, q_enumerate

__version__ = "0.1.0"
