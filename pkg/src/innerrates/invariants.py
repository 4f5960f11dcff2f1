"""Multiplicities, inner rates, Hironaka quotients and the objects built on them.

Vectors are indexed in graph vertex order.  ``f`` is the function whose
Milnor-fiber metric defines the rates and ``g`` the second coordinate of the
finite morphism ``(g, f)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_linalg import mat_vec, solve_linear
from .graph import Arrow, ResolutionGraph, connected_components, intersection_matrix, valencies


class NoArrows(ValueError):
    pass


@dataclass(frozen=True)
class FunctionData:
    """Multiplicities ``m_v(h)`` of one function along the exceptional curves."""

    kind: str
    arrows: tuple[Arrow, ...]
    weights: tuple[int, ...]
    m: tuple[Fraction, ...]

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.m)

    @property
    def positive(self) -> bool:
        return all(x > 0 for x in self.m)

    @property
    def flags(self) -> list[str]:
        out = []
        if not self.integral:
            out.append("NonIntegral")
        if not self.positive:
            out.append("NonPositive")
        return out


@dataclass(frozen=True)
class InnerRateData:
    a: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.a)

    @property
    def positive(self) -> bool:
        return all(x > 0 for x in self.a)


@dataclass(frozen=True)
class SkeletonData:
    h: tuple[Fraction, ...]
    A_vertices: frozenset[str]
    A_edges: frozenset[int]
    zones: tuple[tuple[str, ...], ...]
    singletons: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=())


def multiplicities(graph: ResolutionGraph, kind: str) -> FunctionData:
    """Solve ``M m = -w`` for the orders of vanishing of one function."""
    if kind not in ("f", "g"):
        raise ValueError(f"kind must be 'f' or 'g', not {kind!r}")
    arrows = tuple(a for a in graph.arrows if a.kind == kind)
    if not arrows:
        raise NoArrows(f"graph has no {kind}-arrows")
    w = graph.arrow_weights(kind)
    m = solve_linear(intersection_matrix(graph), [-x for x in w])
    return FunctionData(kind, arrows, tuple(w), tuple(m))


def k_vector(graph: ResolutionGraph) -> list[Fraction]:
    return [Fraction(val + 2 * v.genus - 2) for val, v in zip(valencies(graph), graph.vertices)]


def inner_rates(graph: ResolutionGraph, f_data: FunctionData, P: Sequence[int]) -> InnerRateData:
    """Inner rates from the linear system ``M a = K + F - P`` with ``a_v = m_v(f) q_v``."""
    if len(P) != len(graph):
        raise ValueError(f"P has length {len(P)}, expected {len(graph)}")
    if any(p < 0 for p in P):
        raise ValueError("P entries must be nonnegative")
    K = k_vector(graph)
    rhs = [k + fw - p for k, fw, p in zip(K, f_data.weights, P)]
    a = solve_linear(intersection_matrix(graph), rhs)
    q = [x / m for x, m in zip(a, f_data.m)]
    return InnerRateData(tuple(a), tuple(q))


def hironaka(f_data: FunctionData, g_data: FunctionData) -> list[Fraction]:
    return [mg / mf for mg, mf in zip(g_data.m, f_data.m)]


def edge_lengths(graph: ResolutionGraph, f_data: FunctionData) -> dict[int, Fraction]:
    """Length of every edge (keyed by its index in ``graph.edges``)."""
    m = f_data.m
    return {i: 1 / (m[graph.index(e.u)] * m[graph.index(e.v)]) for i, e in enumerate(graph.edges)}


def laplacian(graph: ResolutionGraph, f_data: FunctionData, values: Sequence) -> list[Fraction]:
    """Sum of outgoing slopes of the piecewise-linear extension of ``values``."""
    if len(values) != len(graph):
        raise ValueError(f"values has length {len(values)}, expected {len(graph)}")
    vals = [Fraction(x) for x in values]
    lengths = edge_lengths(graph, f_data)
    out = [Fraction(0)] * len(graph)
    for i, e in enumerate(graph.edges):
        a, b = graph.index(e.u), graph.index(e.v)
        if a == b:
            continue
        slope = (vals[b] - vals[a]) / lengths[i]
        out[a] += slope
        out[b] -= slope
    return out


def laplacian_divisors(graph: ResolutionGraph, f_data: FunctionData, g_data: FunctionData,
                       P: Sequence[int]) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """The canonical, f- and polar divisors on the metric graph, as vertex vectors."""
    mf, mg = f_data.m, g_data.m
    K = k_vector(graph)
    K_div = [m * k for m, k in zip(mf, K)]
    F_div = [(a + b) * w for a, b, w in zip(mf, mg, f_data.weights)]
    P_div = [m * p for m, p in zip(mf, P)]
    return K_div, F_div, P_div


def chi_prime(graph: ResolutionGraph, f_data: FunctionData, g_data: FunctionData) -> list[int]:
    return [2 - 2 * v.genus - val - fw - gw
            for v, val, fw, gw in zip(graph.vertices, valencies(graph), f_data.weights, g_data.weights)]


def _increasing_orientation(graph: ResolutionGraph, values: Sequence[Fraction]) -> list[tuple[int, int, int]]:
    """Edges oriented towards the strictly larger value: (edge index, tail, head)."""
    out = []
    for i, e in enumerate(graph.edges):
        a, b = graph.index(e.u), graph.index(e.v)
        if values[a] < values[b]:
            out.append((i, a, b))
        elif values[b] < values[a]:
            out.append((i, b, a))
    return out


def _reach(n: int, arcs: Iterable[tuple[int, int]], sources: Iterable[int]) -> set[int]:
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        succ[a].append(b)
    seen = set(sources)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for y in succ[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def monotone_reach(graph: ResolutionGraph, q: Sequence, f_nodes: Iterable[str]) -> set[str]:
    """Vertices reachable from an f-node along strictly increasing q."""
    arcs = [(a, b) for _, a, b in _increasing_orientation(graph, q)]
    reached = _reach(len(graph), arcs, [graph.index(v) for v in f_nodes])
    return {graph.vertices[i].id for i in reached}


def a_subgraph(graph: ResolutionGraph, f_data: FunctionData, g_data: FunctionData) -> SkeletonData:
    """The union of strictly h-increasing f-node to g-node paths, and the zones around it.

    Orienting each edge towards the larger Hironaka quotient gives a DAG; a
    vertex or edge lies on an increasing f-to-g path iff it is forward
    reachable from an f-node and backward reachable from a g-node.
    """
    f_nodes = {a.vertex for a in f_data.arrows}
    g_nodes = {a.vertex for a in g_data.arrows}
    if not f_nodes or not g_nodes:
        raise NoArrows("need both f- and g-arrows")
    n = len(graph)
    h = hironaka(f_data, g_data)
    oriented = _increasing_orientation(graph, h)
    fwd = _reach(n, [(a, b) for _, a, b in oriented], [graph.index(v) for v in f_nodes])
    bwd = _reach(n, [(b, a) for _, a, b in oriented], [graph.index(v) for v in g_nodes])
    A_idx = fwd & bwd
    A_edges = frozenset(i for i, a, b in oriented if a in fwd and b in bwd)
    ids = graph.ids

    # closure of the complement: open non-A edges bring their endpoints back in
    closure_vertices = [ids[i] for i in range(n) if i not in A_idx]
    closure_edges = []
    for i, e in enumerate(graph.edges):
        if i not in A_edges and e.u != e.v:
            closure_edges.append(e.endpoints)
            closure_vertices.extend(e.endpoints)
    zones = []
    for comp in connected_components(closure_vertices, closure_edges):
        members = set(comp)
        zones.append(tuple(v for v in ids if v in members))
    zones.sort(key=lambda z: graph.index(z[0]))
    covered = {v for z in zones for v in z}
    singletons = tuple(v for v in ids if v not in covered)

    warnings = []
    for z in zones:
        if len({h[graph.index(v)] for v in z}) > 1:
            warnings.append(f"Hironaka quotient is not constant on zone {{{', '.join(z)}}}")
    return SkeletonData(tuple(h), frozenset(ids[i] for i in A_idx), A_edges, tuple(zones), singletons,
                        tuple(warnings))


def curvature_constant(graph: ResolutionGraph, f_data: FunctionData, q: Sequence, v: str) -> Fraction:
    """Closed-form constant ``C_f`` of the curvature concentrating on ``E_v``."""
    i = graph.index(v)
    M = intersection_matrix(graph)
    a = [m * Fraction(x) for m, x in zip(f_data.m, q)]
    val = valencies(graph)[i]
    vert = graph.vertices[i]
    pairing = sum((M[i][j] * a[j] for j in range(len(graph))), Fraction(0))
    return f_data.m[i] * (2 * vert.genus - 2 + val + f_data.weights[i] - pairing)


def laufer_residual(graph: ResolutionGraph, data: FunctionData) -> list[Fraction]:
    """``M m + w``; identically zero for a genuine multiplicity vector."""
    return [x + w for x, w in zip(mat_vec(intersection_matrix(graph), data.m), data.weights)]
