"""Community detection by modularity density maximization.

Exact rational partition metrics, reproducible benchmark instances, an
exact MILP export (Fortet + McCormick linearization, LP file format), and
in-process solvers (exhaustive, branch-and-bound, multi-start local
search), all sharing the weak community constraint.
"""

from .errors import InfeasiblePartition, InputError, MdnetError, SolverError
from .generators import (
    CanonicalPartition,
    NamedInstance,
    gen_clique_star,
    gen_fig2,
    instance,
    zachary,
)
from .graph import Graph, Partition, canonicalize, load_edge_list, load_partition
from .metrics import (
    CommunityReport,
    CommunityStats,
    community_density,
    community_stats,
    full_report,
    modularity,
    modularity_density,
    weak_condition,
)
from .milp import (
    AlphaBounds,
    LinearModel,
    alpha_bounds,
    build_model,
    emit_lp,
    evaluate_assignment,
    induced_solution,
    variable_metadata,
)
from .solver import (
    SolveResult,
    SolverConfig,
    enumerate_partitions,
    solve,
    solve_branch_and_bound,
    solve_exhaustive,
    solve_local_search,
)
from .state import SearchState, delta_relocate

__version__ = "1.0.0"

__all__ = [
    "AlphaBounds",
    "CanonicalPartition",
    "CommunityReport",
    "CommunityStats",
    "Graph",
    "InfeasiblePartition",
    "InputError",
    "LinearModel",
    "MdnetError",
    "NamedInstance",
    "Partition",
    "SearchState",
    "SolveResult",
    "SolverConfig",
    "SolverError",
    "alpha_bounds",
    "build_model",
    "canonicalize",
    "community_density",
    "community_stats",
    "delta_relocate",
    "emit_lp",
    "enumerate_partitions",
    "evaluate_assignment",
    "full_report",
    "gen_clique_star",
    "gen_fig2",
    "induced_solution",
    "instance",
    "load_edge_list",
    "load_partition",
    "modularity",
    "modularity_density",
    "solve",
    "solve_branch_and_bound",
    "solve_exhaustive",
    "solve_local_search",
    "variable_metadata",
    "weak_condition",
    "zachary",
    "__version__",
]
