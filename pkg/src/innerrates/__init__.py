"""Exact invariants and polar exploration on dual resolution graphs."""

from .blowup import BlowupSite, BlowupState, blow_up, legal_sites, parse_site
from .cycles import chi_cycle, is_rational, is_topological, laufer_min_cycle
from .exact_linalg import determinant, is_negative_definite, solve_linear
from .exploration import ExplorationResult, explore, generate_famille, michel_system
from .graph import Arrow, Edge, ResolutionGraph, Vertex, intersection_matrix, validate
from .invariants import (a_subgraph, chi_prime, curvature_constant, edge_lengths, hironaka, inner_rates,
                         laplacian, laplacian_divisors, multiplicities)

__all__ = [
    "Arrow", "BlowupSite", "BlowupState", "Edge", "ExplorationResult", "ResolutionGraph", "Vertex",
    "a_subgraph", "blow_up", "chi_cycle", "chi_prime", "curvature_constant", "determinant", "edge_lengths",
    "explore", "generate_famille", "hironaka", "inner_rates", "intersection_matrix", "is_negative_definite",
    "is_rational", "is_topological", "laplacian", "laplacian_divisors", "laufer_min_cycle", "legal_sites",
    "michel_system", "multiplicities", "parse_site", "solve_linear", "validate",
]
