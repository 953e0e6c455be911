"""Interference-aware multicast (Steiner) trees for wireless mesh networks.

Builds multicast trees that jointly minimize total edge length and the size
of the tree's closed neighborhood, a proxy for wireless interference.
"""

from .errors import (
    BudgetExceededError,
    ConfigError,
    GraphFormatError,
    MeshcastError,
    UnknownFunctionError,
    UnknownNodeError,
    UnreachableError,
)
from .graph import (
    Graph,
    MulticastRequest,
    Path,
    dump_graph,
    generate_unit_disk,
    load_graph,
    load_graph_file,
    neighbors,
    save_graph_file,
    shortest_distance,
)
from .interference import (
    PropertyReport,
    VicinalRelation,
    check_monotone,
    check_submodular,
    closed_neighborhood,
    interference,
    vicinal_compare,
)
from .oracle import (
    ParetoPoint,
    enumerate_pareto_front,
    exhaustive_min_interference_sp,
    verify_tree_against_front,
)
from .paths import (
    PathResult,
    PathSolverConfig,
    greedy_interference_path,
    lexicographic_shortest_path,
    min_interference_shortest_path,
    shortest_dag,
)
from .steiner import (
    MetricClosure,
    SteinerTreeResult,
    kmb_expand,
    metric_closure,
    minimum_spanning_tree,
    prune_non_terminal_leaves,
    spt_baseline,
    st_baseline,
    terminals_of,
    tssr,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ConfigError",
    "Graph",
    "GraphFormatError",
    "MeshcastError",
    "MetricClosure",
    "MulticastRequest",
    "ParetoPoint",
    "Path",
    "PathResult",
    "PathSolverConfig",
    "PropertyReport",
    "SteinerTreeResult",
    "UnknownFunctionError",
    "UnknownNodeError",
    "UnreachableError",
    "VicinalRelation",
    "check_monotone",
    "check_submodular",
    "closed_neighborhood",
    "dump_graph",
    "enumerate_pareto_front",
    "exhaustive_min_interference_sp",
    "generate_unit_disk",
    "greedy_interference_path",
    "interference",
    "kmb_expand",
    "lexicographic_shortest_path",
    "load_graph",
    "load_graph_file",
    "metric_closure",
    "min_interference_shortest_path",
    "minimum_spanning_tree",
    "neighbors",
    "prune_non_terminal_leaves",
    "save_graph_file",
    "shortest_dag",
    "shortest_distance",
    "spt_baseline",
    "st_baseline",
    "terminals_of",
    "tssr",
    "verify_tree_against_front",
]
