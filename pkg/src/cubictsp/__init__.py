"""Graph-TSP approximation for cubic and subcubic graphs.

Main entry points: :func:`solve_ms` (matching-based, bridgeless subcubic,
scales to thousands of vertices), :func:`solve_matchcomb` (convex
combination of perfect matchings, small simple cubic graphs),
:func:`solve_with_bridges` and the oracles in :mod:`cubictsp.bounds`.
"""

from .bounds import fk_opt_formula, held_karp_opt, held_karp_tour, ser_value, solve_exact
from .bridges import bridge_lower_bound, decompose, solve_with_bridges
from .errors import (
    BridgeError,
    BudgetExceededError,
    DegreeError,
    DisconnectedGraphError,
    EulerianError,
    GraphError,
    InvalidGraphError,
    NoPerfectMatchingError,
    PreconditionError,
)
from .families import FamilySpec, gen_family
from .graph import EulerianSubgraph, Multigraph, Tour, find_bridges
from .graphio import format_graph, parse_graph, read_graph, write_graph
from .matchcomb import solve_matchcomb
from .matching import PerfectMatching, enumerate_perfect_matchings, min_weight_perfect_matching
from .ms import solve_ms
from .report import SolveReport
from .verify import verify_report

__version__ = "0.1.0"

__all__ = [
    "BridgeError", "BudgetExceededError", "DegreeError", "DisconnectedGraphError", "EulerianError",
    "EulerianSubgraph", "FamilySpec", "GraphError", "InvalidGraphError", "Multigraph",
    "NoPerfectMatchingError", "PerfectMatching", "PreconditionError", "SolveReport", "Tour",
    "bridge_lower_bound", "decompose", "enumerate_perfect_matchings", "find_bridges", "fk_opt_formula",
    "format_graph", "gen_family", "held_karp_opt", "held_karp_tour", "min_weight_perfect_matching",
    "parse_graph", "read_graph", "ser_value", "solve_exact", "solve_matchcomb", "solve_ms",
    "solve_with_bridges", "verify_report", "write_graph",
]
