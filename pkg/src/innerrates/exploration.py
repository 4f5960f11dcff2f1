"""Polar exploration: all P-vectors compatible with a fixed (graph, F, G) datum.

Michel's zone relations give a finite outer enumeration; each candidate is
then run through the inner-rate conditions (integral positive solution of the
rate system, rates equal Hironaka quotients where they must, and every vertex
reachable from an f-node along strictly increasing rates).  The conditions
are necessary ones, so the output is the *admissible* set, not a proof that
each vector is realized by a morphism.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterator, Sequence

from .exact_linalg import SingularMatrix, format_vector, solve_linear
from .graph import Arrow, Edge, ResolutionGraph, Vertex, intersection_matrix
from .invariants import (FunctionData, SkeletonData, a_subgraph, chi_prime, k_vector, monotone_reach,
                         multiplicities)

FILTERS = ("non_integral_a", "non_positive_q", "hironaka_mismatch", "monotone_fail")


class Infeasible(ValueError):
    pass


class NonIntegralMultiplicities(ValueError):
    pass


class BadParameter(ValueError):
    pass


@dataclass(frozen=True)
class ZoneEquation:
    vertices: tuple[str, ...]
    coefficients: tuple[int, ...]
    rhs: int

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*P[{v}]" for c, v in zip(self.coefficients, self.vertices))
        return f"{terms} = {self.rhs}"


@dataclass(frozen=True)
class MichelSystem:
    ids: tuple[str, ...]
    forced: dict[str, int]
    zones: tuple[ZoneEquation, ...]

    def satisfied_by(self, P: Sequence[int]) -> bool:
        idx = {v: i for i, v in enumerate(self.ids)}
        if any(P[idx[v]] != val for v, val in self.forced.items()):
            return False
        return all(sum(c * P[idx[v]] for c, v in zip(z.coefficients, z.vertices)) == z.rhs for z in self.zones)


@dataclass
class ExplorationResult:
    ids: list[str]
    admissible: list[tuple[tuple[int, ...], tuple[Fraction, ...], tuple[Fraction, ...]]]
    rejected_counts: dict[str, int]
    michel_count: int
    system: MichelSystem | None = None
    skeleton: SkeletonData | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def vectors(self) -> list[tuple[int, ...]]:
        return [P for P, _, _ in self.admissible]

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.ids),
            "michel_count": self.michel_count,
            "admissible": [{"P": list(P), "q": format_vector(q), "a": format_vector(a)}
                           for P, q, a in self.admissible],
            "rejected": {k: self.rejected_counts[k] for k in FILTERS},
        }


def michel_system(graph: ResolutionGraph, f_data: FunctionData, g_data: FunctionData,
                  skeleton: SkeletonData) -> MichelSystem:
    """Forced values at singleton vertices and one weighted-sum equation per zone."""
    chi = chi_prime(graph, f_data, g_data)
    forced = {}
    for v in skeleton.singletons:
        val = -chi[graph.index(v)]
        if val < 0:
            raise Infeasible(f"singleton relation forces P[{v}] = {val} < 0")
        forced[v] = val
    zones = []
    for z in skeleton.zones:
        coeffs = [f_data.m[graph.index(v)] for v in z]
        if any(c.denominator != 1 or c <= 0 for c in coeffs):
            raise NonIntegralMultiplicities("zone coefficients must be positive integers")
        rhs = -sum(c * chi[graph.index(v)] for c, v in zip(coeffs, z))
        if rhs < 0:
            raise Infeasible(f"zone {{{', '.join(z)}}} has negative budget {rhs}")
        zones.append(ZoneEquation(tuple(z), tuple(int(c) for c in coeffs), int(rhs)))
    return MichelSystem(tuple(graph.ids), forced, tuple(zones))


def enumerate_candidates(system: MichelSystem) -> Iterator[tuple[int, ...]]:
    """Every nonnegative integer P meeting all forced values and zone equations.

    Zone variables are assigned by backtracking in vertex order; a variable
    shared by several equations is bounded by all of them.  Output is in
    lexicographic order of the P-vectors.
    """
    ids = system.ids
    idx = {v: i for i, v in enumerate(ids)}
    coef: dict[str, list[tuple[int, int]]] = {}
    for e, z in enumerate(system.zones):
        for c, v in zip(z.coefficients, z.vertices):
            coef.setdefault(v, []).append((e, c))
    free = sorted((v for v in coef if v not in system.forced), key=idx.__getitem__)
    budget = [z.rhs for z in system.zones]
    for v, val in system.forced.items():
        for e, c in coef.get(v, ()):
            budget[e] -= c * val
    if any(b < 0 for b in budget):
        return
    # last position at which each equation still has an unassigned variable
    last = [-1] * len(budget)
    for pos, v in enumerate(free):
        for e, _ in coef[v]:
            last[e] = pos
    if any(b != 0 for e, b in enumerate(budget) if last[e] == -1):
        return
    P = [0] * len(ids)
    for v, val in system.forced.items():
        P[idx[v]] = val

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == len(free):
            yield tuple(P)
            return
        v = free[pos]
        bound = min(budget[e] // c for e, c in coef[v])
        for x in range(bound + 1):
            for e, c in coef[v]:
                budget[e] -= c * x
            if all(budget[e] == 0 for e, _ in coef[v] if last[e] == pos):
                P[idx[v]] = x
                yield from rec(pos + 1)
            for e, c in coef[v]:
                budget[e] += c * x
        P[idx[v]] = 0

    yield from rec(0)


@dataclass(frozen=True)
class _FilterContext:
    graph: ResolutionGraph
    M: tuple
    base: tuple[Fraction, ...]
    m_f: tuple[Fraction, ...]
    h: tuple[Fraction, ...]
    pinned: tuple[int, ...]
    f_nodes: frozenset[str]


def _make_context(graph, f_data, g_data, skeleton) -> _FilterContext:
    M = tuple(tuple(row) for row in intersection_matrix(graph))
    base = tuple(k + w for k, w in zip(k_vector(graph), f_data.weights))
    arrow_vertices = {a.vertex for a in f_data.arrows} | {a.vertex for a in g_data.arrows}
    pinned = tuple(i for i, v in enumerate(graph.ids) if v in skeleton.A_vertices or v in arrow_vertices)
    return _FilterContext(graph, M, base, f_data.m, skeleton.h, pinned,
                          frozenset(a.vertex for a in f_data.arrows))


def check_candidate(ctx: _FilterContext, P: Sequence[int]):
    """Return ``(None, q, a)`` if P passes every filter, else ``(filter_name, None, None)``."""
    try:
        a = solve_linear(ctx.M, [b - p for b, p in zip(ctx.base, P)])
    except SingularMatrix:
        return "non_integral_a", None, None
    if any(x.denominator != 1 for x in a):
        return "non_integral_a", None, None
    q = [x / m for x, m in zip(a, ctx.m_f)]
    if any(x <= 0 for x in q):
        return "non_positive_q", None, None
    if any(q[i] != ctx.h[i] for i in ctx.pinned):
        return "hironaka_mismatch", None, None
    if len(monotone_reach(ctx.graph, q, ctx.f_nodes)) != len(ctx.graph):
        return "monotone_fail", None, None
    return None, tuple(q), tuple(a)


def _check_chunk(ctx: _FilterContext, chunk: list[tuple[int, ...]]):
    return [(P, *check_candidate(ctx, P)) for P in chunk]


def _chunks(it, size):
    it = iter(it)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def prepare(graph: ResolutionGraph):
    """Multiplicities, skeleton and Michel system for an f/g-arrowed graph."""
    graph = graph.without_polar()
    f_data = multiplicities(graph, "f")
    g_data = multiplicities(graph, "g")
    for d in (f_data, g_data):
        if d.flags:
            raise NonIntegralMultiplicities(f"m_{d.kind} is not a positive integer vector ({', '.join(d.flags)})")
    skeleton = a_subgraph(graph, f_data, g_data)
    system = michel_system(graph, f_data, g_data, skeleton)
    return graph, f_data, g_data, skeleton, system


def explore(graph: ResolutionGraph, workers: int | None = None, chunk_size: int = 256) -> ExplorationResult:
    """Enumerate admissible P-vectors.  Polar arrows in ``graph`` are ignored.

    With ``workers > 1`` candidates are checked in a process pool; the result
    is identical to the serial run.
    """
    graph, f_data, g_data, skeleton, system = prepare(graph)
    ctx = _make_context(graph, f_data, g_data, skeleton)
    counts = dict.fromkeys(FILTERS, 0)
    admissible = []
    total = 0

    def consume(results):
        nonlocal total
        for P, reason, q, a in results:
            total += 1
            if reason is None:
                admissible.append((P, q, a))
            else:
                counts[reason] += 1

    candidates = enumerate_candidates(system)
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_check_chunk, ctx, c) for c in _chunks(candidates, chunk_size)]
            for fut in futures:
                consume(fut.result())
    else:
        for chunk in _chunks(candidates, chunk_size):
            consume(_check_chunk(ctx, chunk))
    admissible.sort(key=lambda t: t[0])
    return ExplorationResult(graph.ids, admissible, counts, total, system, skeleton, list(skeleton.warnings))


def generate_famille(n: int) -> ResolutionGraph:
    """The graph family Gamma_n with its f- and g-arrows, for n >= 2.

    Vertex order: v1..v_{4n}, w_{2n}, w_{2n+1}, w_2, w_1.  The f- and
    g-arrows at v1 are emitted as nine and six curvette branches.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise BadParameter(f"n must be an integer >= 2, got {n!r}")
    chain = [f"v{k}" for k in range(1, 4 * n + 1)]
    selfs = {v: -2 for v in chain}
    selfs["v3"] = -3
    tail = [f"w{2 * n}", f"w{2 * n + 1}", "w2", "w1"]
    selfs.update({f"w{2 * n}": -2, f"w{2 * n + 1}": -2, "w2": -n - 1, "w1": -2})
    vertices = [Vertex(v, selfs[v], 0) for v in chain + tail]
    edges = [Edge(a, b) for a, b in zip(chain, chain[1:])]
    top = chain[-1]
    edges += [Edge(top, f"w{2 * n}"), Edge(top, f"w{2 * n + 1}"), Edge(f"w{2 * n + 1}", "w2"), Edge("w2", "w1")]
    arrows = [Arrow("g", "v1", 1)] * 6 + [Arrow("f", "v1", 1)] * 9 + [Arrow("g", "v3", 1)]
    return ResolutionGraph(vertices, edges, arrows)
