"""Cycles supported on the exceptional divisor.

A cycle is a list of integer coefficients in graph vertex order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exact_linalg import is_negative_definite
from .graph import ResolutionGraph, intersection_matrix


class NotEffective(ValueError):
    pass


def pair(graph: ResolutionGraph, D1: Sequence[int], D2: Sequence[int]) -> int:
    n = len(graph)
    if len(D1) != n or len(D2) != n:
        raise ValueError(f"cycles must have length {n}")
    M = intersection_matrix(graph)
    return int(sum(D1[i] * M[i][j] * D2[j] for i in range(n) for j in range(n) if D1[i] and D2[j]))


def canonical_pairings(graph: ResolutionGraph) -> list[int]:
    """``K . E_v`` for each vertex, from adjunction."""
    return [-v.self_int + 2 * v.genus - 2 for v in graph.vertices]


def chi_cycle(graph: ResolutionGraph, D: Sequence[int]) -> Fraction:
    """Euler characteristic ``-(D.D + K.D) / 2``."""
    KD = sum(d * k for d, k in zip(D, canonical_pairings(graph)))
    return Fraction(-(pair(graph, D, D) + KD), 2)


def _pairings_with_basis(M, Z) -> list:
    return [sum(M[v][j] * Z[j] for j in range(len(Z))) for v in range(len(Z))]


def laufer_min_cycle(graph: ResolutionGraph) -> list[int]:
    """Laufer's algorithm: start from the reduced cycle and add E_v while Z.E_v > 0.

    Ties go to the lowest vertex index.  Terminates on negative definite
    graphs since Z stays below every topological cycle.
    """
    M = intersection_matrix(graph)
    if not is_negative_definite(M):
        raise ValueError("Laufer's algorithm needs a negative definite intersection matrix")
    n = len(graph)
    Z = [1] * n
    while True:
        p = _pairings_with_basis(M, Z)
        v = next((i for i in range(n) if p[i] > 0), None)
        if v is None:
            return Z
        Z[v] += 1


def is_topological(graph: ResolutionGraph, D: Sequence[int]) -> bool:
    if any(d < 0 for d in D):
        raise NotEffective("cycle has a negative coefficient")
    M = intersection_matrix(graph)
    return all(p <= 0 for p in _pairings_with_basis(M, list(D)))


def is_rational(graph: ResolutionGraph) -> bool:
    """Whether the minimal cycle has Euler characteristic 1.

    When this holds every topological cycle is the compact part of the
    divisor of some function (Artin); nothing here constructs such functions.
    """
    return chi_cycle(graph, laufer_min_cycle(graph)) == 1
