"""Size Ramsey numbers of stars versus cliques."""

from .arrowing import ArrowDecision, TwoColouring, arrows, brute_force_arrows, verify_colouring
from .extremal import compute_rhat, compute_rhat_star, erdos_graph, extremal_candidate
from .formulas import audit_inequalities, ramsey_star_clique, rhat_star
from .graph import Graph, from_graph6, to_graph6

__all__ = [
    "ArrowDecision",
    "Graph",
    "TwoColouring",
    "arrows",
    "audit_inequalities",
    "brute_force_arrows",
    "compute_rhat",
    "compute_rhat_star",
    "erdos_graph",
    "extremal_candidate",
    "from_graph6",
    "ramsey_star_clique",
    "rhat_star",
    "to_graph6",
    "verify_colouring",
]
