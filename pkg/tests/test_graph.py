import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from innerrates.graph import (Arrow, Edge, GraphFormatError, ResolutionGraph, UnknownVertex, Vertex,
                              connected_components, intersection_matrix, validate, valencies)
from oracles import plane_graph, raw_matrix, with_curvettes


def chain(*selfs, arrows=()):
    vs = [Vertex(f"v{i + 1}", s) for i, s in enumerate(selfs)]
    es = [Edge(a.id, b.id) for a, b in zip(vs, vs[1:])]
    return ResolutionGraph(vs, es, list(arrows))


def test_roundtrip_bundled(examples):
    for g in examples.values():
        again = ResolutionGraph.loads(g.dumps())
        assert again == g
        assert again.dumps() == g.dumps()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 9))
def test_roundtrip_random(seed, n):
    rng = random.Random(seed)
    g = with_curvettes(plane_graph(rng, n), rng, rng.randint(1, 4), rng.randint(1, 4))
    assert ResolutionGraph.loads(g.dumps()) == g
    assert intersection_matrix(g) == raw_matrix(g)


def test_plane_graphs_are_valid():
    rng = random.Random(5)
    for _ in range(40):
        assert validate(plane_graph(rng, rng.randint(1, 10))).ok


def test_genus_defaults_to_zero():
    g = ResolutionGraph.loads('{"vertices": [{"id": "a", "self_int": -1}]}')
    assert g.vertices[0].genus == 0
    assert g.edges == () and g.arrows == ()


@pytest.mark.parametrize("text", [
    "[]",
    "{not json",
    '{"vertices": [{"id": "a", "self_int": -1, "color": 1}]}',
    '{"vertices": [{"id": "a", "self_int": -1.0}]}',
    '{"vertices": [{"id": "a", "self_int": true}]}',
    '{"vertices": [{"id": "a", "self_int": -1}, {"id": "a", "self_int": -2}]}',
    '{"vertices": [{"id": "a", "self_int": -1}], "edges": [["a", "b"]]}',
    '{"vertices": [{"id": "a", "self_int": -1}], "arrows": [{"kind": "h", "vertex": "a"}]}',
    '{"vertices": [{"id": "a", "self_int": -1}], "arrows": [{"kind": "f", "vertex": "z"}]}',
    '{"vertices": [{"id": "a", "self_int": -1}], "extra": 1}',
    '{"vertices": [{"self_int": -1}]}',
])
def test_malformed_files(text):
    with pytest.raises(GraphFormatError):
        ResolutionGraph.loads(text)


def test_unknown_vertex_lookup():
    g = chain(-2, -2)
    with pytest.raises(UnknownVertex):
        g.index("zz")


def test_validate_codes():
    assert "NonNegativeSelfIntersection" in validate(chain(-2, 0))
    assert "NotNegativeDefinite" in validate(chain(-1, -1))
    assert "NegativeGenus" in validate(ResolutionGraph([Vertex("a", -2, -1)]))
    assert "NonPositiveArrowWeight" in validate(chain(-2, arrows=[Arrow("f", "v1", 0)]))
    two = ResolutionGraph([Vertex("a", -2), Vertex("b", -2)])
    assert "Disconnected" in validate(two)
    loop = ResolutionGraph([Vertex("a", -4)], [Edge("a", "a")])
    assert "SelfLoop" in validate(loop)
    assert "Empty" in validate(ResolutionGraph([]))


def test_repeated_arrows_are_branches():
    g = chain(-2, -2, arrows=[Arrow("f", "v1"), Arrow("f", "v1"), Arrow("g", "v2", 3)])
    assert validate(g).ok
    assert g.arrow_weights("f") == [2, 0]
    assert len(g.branches("f", "v1")) == 2


def test_parallel_edges_and_valency():
    g = ResolutionGraph([Vertex("a", -3), Vertex("b", -3)], [Edge("a", "b"), Edge("b", "a")])
    assert g.edges_between("a", "b") == [0, 1]
    assert g.neighbors("a") == ["b", "b"]
    assert valencies(g) == [2, 2]
    assert intersection_matrix(g) == [[-3, 2], [2, -3]]


def test_connected_components_order():
    comps = connected_components(["c", "a", "b", "d"], [("a", "b"), ("d", "c")])
    assert comps == [["c", "d"], ["a", "b"]]


def test_with_polar_replaces_polar_arrows(examples):
    g = examples["example35"]
    h = g.with_polar([1, 0, 0, 0, 0, 3])
    assert h.arrow_weights("polar") == [1, 0, 0, 0, 0, 3]
    assert h.arrow_weights("f") == g.arrow_weights("f")
    assert not g.without_polar().has_arrows("polar")


def test_dumps_is_stable_json(examples):
    text = examples["example1"].dumps()
    assert json.loads(text)["vertices"][0] == {"id": "v1", "self_int": -2, "genus": 0}
