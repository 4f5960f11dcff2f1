"""Weighted dual resolution graphs with strict-transform arrows.

A graph file is JSON::

    {
      "vertices": [{"id": "v1", "self_int": -2, "genus": 0}, ...],
      "edges":    [["v1", "v2"], ...],
      "arrows":   [{"kind": "f", "vertex": "v6", "weight": 1}, ...]
    }

Repeated ``(kind, vertex)`` arrow entries are separate branches of the same
strict transform.  They are summed for all intersection-number work and kept
apart for blowups, which act on a single branch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable

from .exact_linalg import is_negative_definite

ARROW_KINDS = ("f", "g", "polar")


class GraphFormatError(ValueError):
    pass


class UnknownVertex(KeyError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    self_int: int
    genus: int = 0


@dataclass(frozen=True)
class Edge:
    u: str
    v: str

    @property
    def endpoints(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, w: str) -> str:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class Arrow:
    kind: str
    vertex: str
    weight: int = 1


@dataclass(frozen=True)
class ResolutionGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        index: dict[str, int] = {}
        for i, vert in enumerate(self.vertices):
            if vert.id in index:
                raise GraphFormatError(f"duplicate vertex id {vert.id!r}")
            index[vert.id] = i
        for e in self.edges:
            for w in e.endpoints:
                if w not in index:
                    raise UnknownVertex(w)
        for a in self.arrows:
            if a.vertex not in index:
                raise UnknownVertex(a.vertex)
            if a.kind not in ARROW_KINDS:
                raise GraphFormatError(f"unknown arrow kind {a.kind!r}")
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def vertex(self, v: str) -> Vertex:
        return self.vertices[self.index(v)]

    def arrow_weights(self, kind: str) -> list[int]:
        """Aggregated intersection numbers of one strict transform, per vertex."""
        w = [0] * len(self.vertices)
        for a in self.arrows:
            if a.kind == kind:
                w[self._index[a.vertex]] += a.weight
        return w

    def branches(self, kind: str, v: str) -> list[Arrow]:
        self.index(v)
        return [a for a in self.arrows if a.kind == kind and a.vertex == v]

    def nodes(self, kind: str) -> set[str]:
        return {a.vertex for a in self.arrows if a.kind == kind}

    def has_arrows(self, kind: str) -> bool:
        return any(a.kind == kind for a in self.arrows)

    def neighbors(self, v: str) -> list[str]:
        """Neighbors of ``v``, repeated once per parallel edge."""
        self.index(v)
        out = []
        for e in self.edges:
            if e.u == e.v:
                continue
            if e.u == v:
                out.append(e.v)
            elif e.v == v:
                out.append(e.u)
        return out

    def edges_between(self, u: str, v: str) -> list[int]:
        """Indices (into ``edges``) of the parallel edges joining u and v."""
        self.index(u)
        self.index(v)
        return [i for i, e in enumerate(self.edges) if {e.u, e.v} == {u, v} and u != v]

    def with_polar(self, P: Iterable[int]) -> "ResolutionGraph":
        """Copy with polar arrows replaced by one branch per nonzero entry of P."""
        arrows = [a for a in self.arrows if a.kind != "polar"]
        arrows += [Arrow("polar", v.id, int(p)) for v, p in zip(self.vertices, P) if p]
        return ResolutionGraph(self.vertices, self.edges, arrows)

    def without_polar(self) -> "ResolutionGraph":
        return ResolutionGraph(self.vertices, self.edges, [a for a in self.arrows if a.kind != "polar"])

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v.id, "self_int": v.self_int, "genus": v.genus} for v in self.vertices],
            "edges": [[e.u, e.v] for e in self.edges],
            "arrows": [{"kind": a.kind, "vertex": a.vertex, "weight": a.weight} for a in self.arrows],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "ResolutionGraph":
        if not isinstance(data, dict):
            raise GraphFormatError("graph file must be a JSON object")
        _reject_unknown(data, {"vertices", "edges", "arrows"}, "graph")
        if "vertices" not in data:
            raise GraphFormatError("missing 'vertices'")
        vertices = []
        for item in data["vertices"]:
            if not isinstance(item, dict):
                raise GraphFormatError(f"vertex entry must be an object: {item!r}")
            _reject_unknown(item, {"id", "self_int", "genus"}, "vertex")
            if "id" not in item or "self_int" not in item:
                raise GraphFormatError(f"vertex needs 'id' and 'self_int': {item!r}")
            vid = item["id"]
            if not isinstance(vid, str) or not vid:
                raise GraphFormatError(f"vertex id must be a non-empty string: {vid!r}")
            vertices.append(Vertex(vid, _int(item["self_int"], "self_int"), _int(item.get("genus", 0), "genus")))
        edges = []
        for item in data.get("edges", []):
            if not isinstance(item, list) or len(item) != 2 or not all(isinstance(x, str) for x in item):
                raise GraphFormatError(f"edge must be a pair of vertex ids: {item!r}")
            edges.append(Edge(item[0], item[1]))
        arrows = []
        for item in data.get("arrows", []):
            if not isinstance(item, dict):
                raise GraphFormatError(f"arrow entry must be an object: {item!r}")
            _reject_unknown(item, {"kind", "vertex", "weight"}, "arrow")
            if item.get("kind") not in ARROW_KINDS:
                raise GraphFormatError(f"arrow kind must be one of {ARROW_KINDS}: {item!r}")
            if "vertex" not in item:
                raise GraphFormatError(f"arrow needs a 'vertex': {item!r}")
            arrows.append(Arrow(item["kind"], item["vertex"], _int(item.get("weight", 1), "weight")))
        try:
            return cls(vertices, edges, arrows)
        except UnknownVertex as exc:
            raise GraphFormatError(f"reference to unknown vertex {exc.args[0]!r}") from None

    @classmethod
    def loads(cls, text: str) -> "ResolutionGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, fp: IO[str]) -> "ResolutionGraph":
        return cls.loads(fp.read())


def _reject_unknown(obj: dict, allowed: set, what: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise GraphFormatError(f"unknown {what} key(s): {', '.join(extra)}")


def _int(x, name: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise GraphFormatError(f"{name} must be an integer, got {x!r}")
    return x


def intersection_matrix(graph: ResolutionGraph) -> list[list[Fraction]]:
    n = len(graph)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(graph.vertices):
        M[i][i] = Fraction(v.self_int)
    for e in graph.edges:
        i, j = graph.index(e.u), graph.index(e.v)
        if i != j:
            M[i][j] += 1
            M[j][i] += 1
    return M


def valency(graph: ResolutionGraph, v: str) -> int:
    return len(graph.neighbors(v))


def valencies(graph: ResolutionGraph) -> list[int]:
    val = [0] * len(graph)
    for e in graph.edges:
        if e.u != e.v:
            val[graph.index(e.u)] += 1
            val[graph.index(e.v)] += 1
    return val


def connected_components(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> list[list[str]]:
    """Components of the graph on ``vertices``; order follows first appearance."""
    verts = list(dict.fromkeys(vertices))
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in edges:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[rw] = ru
    groups: dict[str, list[str]] = {}
    for v in verts:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


@dataclass
class ValidationReport:
    problems: list[tuple[str, str]] = field(default_factory=list)

    def add(self, code: str, detail: str) -> None:
        self.problems.append((code, detail))

    @property
    def codes(self) -> list[str]:
        return [c for c, _ in self.problems]

    def __contains__(self, code: str) -> bool:
        return code in self.codes

    def __bool__(self) -> bool:
        return bool(self.problems)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(graph: ResolutionGraph) -> ValidationReport:
    report = ValidationReport()
    if not graph.vertices:
        report.add("Empty", "graph has no vertices")
        return report
    for e in graph.edges:
        if e.u == e.v:
            report.add("SelfLoop", f"edge {e.u}-{e.v}")
    for v in graph.vertices:
        if v.self_int >= 0:
            report.add("NonNegativeSelfIntersection", f"{v.id} has self-intersection {v.self_int}")
        if v.genus < 0:
            report.add("NegativeGenus", f"{v.id} has genus {v.genus}")
    for a in graph.arrows:
        if a.weight < 1:
            report.add("NonPositiveArrowWeight", f"{a.kind} arrow at {a.vertex} has weight {a.weight}")
    comps = connected_components(graph.ids, [e.endpoints for e in graph.edges])
    if len(comps) > 1:
        report.add("Disconnected", f"{len(comps)} connected components")
    if not is_negative_definite(intersection_matrix(graph)):
        report.add("NotNegativeDefinite", "intersection matrix is not negative definite")
    return report
