"""Approximation pipeline and exact oracles for 2-edge-connected dominating sets."""
from .errors import CapExceededError, CertificateError, InfeasibleError, ParseError, TecdsError
from .graph import Graph, dominates, parse_graph, two_edge_connectivity, two_edge_disjoint_paths
from .pipeline import SolutionCertificate, minimalize_2ecc, solve_2ecds, solve_dominating_subtree
from .subtree import DSInstance, covered_forest, is_feasible_ds
from .trees import SpanningTree, bfs_tree, low_stretch_tree, measure_stretch, tree_path

__all__ = [
    "CapExceededError",
    "CertificateError",
    "DSInstance",
    "Graph",
    "InfeasibleError",
    "ParseError",
    "SolutionCertificate",
    "SpanningTree",
    "TecdsError",
    "bfs_tree",
    "covered_forest",
    "dominates",
    "is_feasible_ds",
    "low_stretch_tree",
    "measure_stretch",
    "minimalize_2ecc",
    "parse_graph",
    "solve_2ecds",
    "solve_dominating_subtree",
    "tree_path",
    "two_edge_connectivity",
    "two_edge_disjoint_paths",
]
