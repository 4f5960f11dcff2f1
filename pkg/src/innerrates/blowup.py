"""Point blowups acting on a resolution graph together with its (m_f, m_g, q) data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_linalg import mat_vec
from .graph import Arrow, Edge, ResolutionGraph, Vertex, intersection_matrix
from .invariants import inner_rates, k_vector, multiplicities

SITE_KINDS = ("free", "f", "g", "polar", "edge")


class UnknownSite(ValueError):
    pass


class InconsistentState(ValueError):
    pass


@dataclass(frozen=True)
class BlowupSite:
    """Where to blow up.

    ``kind`` is one of ``free``, ``f``, ``g``, ``polar`` (a smooth point of
    ``E_vertex``, possibly on the ``index``-th branch of that strict
    transform) or ``edge`` (the ``index``-th double point between ``vertex``
    and ``other``).
    """

    kind: str
    vertex: str
    index: int = 0
    other: str | None = None

    def __str__(self) -> str:
        if self.kind == "free":
            return f"free:{self.vertex}"
        if self.kind == "edge":
            return f"edge:{self.vertex}-{self.other}#{self.index}"
        return f"{self.kind}:{self.vertex}#{self.index}"


def parse_site(text: str, graph: ResolutionGraph | None = None) -> BlowupSite:
    """Parse ``free:v3``, ``f:v3#0``, ``g:v1#0``, ``polar:v4#1`` or ``edge:v2-v5#0``."""
    kind, sep, rest = text.partition(":")
    if not sep or kind not in SITE_KINDS or not rest:
        raise UnknownSite(f"bad site {text!r}; expected one of {', '.join(k + ':...' for k in SITE_KINDS)}")
    if kind == "free":
        return BlowupSite("free", rest)
    body, _, idx = rest.rpartition("#") if "#" in rest else (rest, "", "0")
    try:
        index = int(idx)
    except ValueError:
        raise UnknownSite(f"bad branch index in {text!r}") from None
    if kind != "edge":
        return BlowupSite(kind, body, index)
    splits = [(body[:i], body[i + 1:]) for i, c in enumerate(body) if c == "-"]
    if graph is not None:
        ids = set(graph.ids)
        splits = [s for s in splits if s[0] in ids and s[1] in ids] or splits
    if not splits:
        raise UnknownSite(f"edge site needs two vertex ids joined by '-': {text!r}")
    u, v = splits[0]
    return BlowupSite("edge", u, index, v)


@dataclass(frozen=True)
class BlowupState:
    graph: ResolutionGraph
    m_f: tuple[Fraction, ...]
    m_g: tuple[Fraction, ...]
    q: tuple[Fraction, ...]

    @classmethod
    def from_graph(cls, graph: ResolutionGraph) -> "BlowupState":
        """Multiplicities from the arrows and rates from the polar arrows."""
        f_data = multiplicities(graph, "f")
        g_data = multiplicities(graph, "g")
        rates = inner_rates(graph, f_data, graph.arrow_weights("polar"))
        return cls(graph, f_data.m, g_data.m, rates.q)

    def check(self) -> None:
        """Raise InconsistentState unless both Laufer systems and the rate system hold
        and q equals m(g)/m(f) on every vertex carrying an f- or g-arrow."""
        g = self.graph
        M = intersection_matrix(g)
        for name, m in (("f", self.m_f), ("g", self.m_g)):
            w = g.arrow_weights(name)
            if any(x + y != 0 for x, y in zip(mat_vec(M, m), w)):
                raise InconsistentState(f"m_{name} does not satisfy M m + w = 0")
        a = [m * x for m, x in zip(self.m_f, self.q)]
        rhs = [k + fw - p for k, fw, p in zip(k_vector(g), g.arrow_weights("f"), g.arrow_weights("polar"))]
        if mat_vec(M, a) != rhs:
            raise InconsistentState("q does not satisfy M a = K + F - P")
        for v in g.nodes("f") | g.nodes("g"):
            i = g.index(v)
            if self.q[i] != self.m_g[i] / self.m_f[i]:
                raise InconsistentState(f"q at {v} differs from m(g)/m(f) on an arrow vertex")


def _fresh_id(graph: ResolutionGraph) -> str:
    ids = set(graph.ids)
    k = 1
    while f"b{k}" in ids:
        k += 1
    return f"b{k}"


def legal_sites(graph: ResolutionGraph) -> list[BlowupSite]:
    """Every site the blowup rules apply to: free points, curvette f/g branches,
    polar branches and double points."""
    sites = [BlowupSite("free", v) for v in graph.ids]
    for kind in ("f", "g", "polar"):
        for v in graph.ids:
            for k, a in enumerate(graph.branches(kind, v)):
                if kind == "polar" or a.weight == 1:
                    sites.append(BlowupSite(kind, v, k))
    seen = set()
    for e in graph.edges:
        key = frozenset(e.endpoints)
        if e.u == e.v or key in seen:
            continue
        seen.add(key)
        for k in range(len(graph.edges_between(e.u, e.v))):
            sites.append(BlowupSite("edge", e.u, k, e.v))
    return sites


def blow_up(state: BlowupState, site: BlowupSite, check: bool = True) -> BlowupState:
    """Blow up one point; the new exceptional curve is appended as the last vertex."""
    if check:
        state.check()
    g = state.graph
    if site.kind not in SITE_KINDS:
        raise UnknownSite(f"unknown site kind {site.kind!r}")
    if site.vertex not in g.ids or (site.kind == "edge" and site.other not in g.ids):
        raise UnknownSite(f"no such vertex in site {site}")
    w = _fresh_id(g)
    i = g.index(site.vertex)
    mf, mg, q = list(state.m_f), list(state.m_g), list(state.q)
    vertices = list(g.vertices)
    edges = list(g.edges)
    arrows = list(g.arrows)

    def lower(j):
        vertices[j] = Vertex(vertices[j].id, vertices[j].self_int - 1, vertices[j].genus)

    if site.kind == "edge":
        j = g.index(site.other)
        parallel = g.edges_between(site.vertex, site.other)
        if not 0 <= site.index < len(parallel):
            raise UnknownSite(f"no double point {site}")
        del edges[parallel[site.index]]
        edges += [Edge(site.vertex, w), Edge(w, site.other)]
        lower(i)
        lower(j)
        new_mf, new_mg = mf[i] + mf[j], mg[i] + mg[j]
        new_q = (q[i] * mf[i] + q[j] * mf[j]) / (mf[i] + mf[j])
    else:
        lower(i)
        edges.append(Edge(site.vertex, w))
        if site.kind == "free":
            new_mf, new_mg = mf[i], mg[i]
            new_q = q[i] + Fraction(1) / mf[i]
        else:
            positions = [p for p, a in enumerate(arrows) if a.kind == site.kind and a.vertex == site.vertex]
            if not 0 <= site.index < len(positions):
                raise UnknownSite(f"no branch {site}")
            branch = arrows[positions[site.index]]
            k = branch.weight
            arrows[positions[site.index]] = Arrow(branch.kind, w, k)
            if site.kind in ("f", "g"):
                if k != 1:
                    raise InconsistentState(
                        f"{site.kind}-branch at {site.vertex} has weight {k}; "
                        "strict transforms of f and g must be curvettes")
            if site.kind == "g":
                new_mf, new_mg = mf[i], mg[i] + k
                new_q = q[i] + Fraction(k) / mf[i]
            elif site.kind == "f":
                new_mf, new_mg = mf[i] + k, mg[i]
                new_q = mf[i] * q[i] / (mf[i] + k)
            else:
                new_mf, new_mg = mf[i], mg[i]
                new_q = q[i] + Fraction(1 + k) / mf[i]
    vertices.append(Vertex(w, -1, 0))
    graph = ResolutionGraph(vertices, edges, arrows)
    return BlowupState(graph, tuple(mf) + (new_mf,), tuple(mg) + (new_mg,), tuple(q) + (new_q,))
