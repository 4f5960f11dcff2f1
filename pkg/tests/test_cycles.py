import itertools

import pytest

from innerrates.cycles import NotEffective, chi_cycle, is_rational, is_topological, laufer_min_cycle, pair
from innerrates.exploration import generate_famille
from innerrates.graph import Edge, ResolutionGraph, Vertex, validate
from innerrates.invariants import multiplicities
from oracles import brute_min_cycle, raw_matrix


def chain(*selfs, genus=0):
    vs = [Vertex(f"v{i + 1}", s, genus) for i, s in enumerate(selfs)]
    return ResolutionGraph(vs, [Edge(a.id, b.id) for a, b in zip(vs, vs[1:])])


def two_layer_cycle(G, n):
    """1 on v1..v3, w_{2n}, w2, w1 and 2 on v4..v_{4n}, w_{2n+1}: has chi = 1 but is not topological."""
    coeff = {v: 1 for v in G.ids}
    for k in range(4, 4 * n + 1):
        coeff[f"v{k}"] = 2
    coeff[f"w{2 * n + 1}"] = 2
    return [coeff[v] for v in G.ids]


def test_trivial_pairings_and_chi():
    g = chain(-2)
    assert pair(g, [1], [1]) == -2
    assert pair(g, [0], [1]) == 0
    assert chi_cycle(g, [0]) == 0
    assert chi_cycle(g, [1]) == 1
    assert laufer_min_cycle(g) == [1]
    assert is_rational(g)
    assert laufer_min_cycle(chain(-2, -2, -2)) == [1, 1, 1]


def test_elliptic_vertex_not_rational():
    g = chain(-1, genus=1)
    assert chi_cycle(g, [1]) == 0
    assert not is_rational(g)


def test_is_topological():
    g = chain(-2, -2)
    assert not is_topological(g, [1, 0])
    assert is_topological(g, [1, 1])
    with pytest.raises(NotEffective):
        is_topological(g, [-1, 1])


def test_not_definite_rejected():
    with pytest.raises(ValueError):
        laufer_min_cycle(chain(-1, -1))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_famille_min_cycle(n):
    G = generate_famille(n)
    Z = laufer_min_cycle(G)
    assert is_topological(G, Z)
    # computed cycle: 1,1,1 on v1..v3, then k-2 on v_k up to v_{4n}, then 2n-1, 2n, 2, 1 on the w's
    expect = [1, 1, 1] + list(range(2, 4 * n - 1)) + [2 * n - 1, 2 * n, 2, 1]
    assert Z == expect
    assert chi_cycle(G, Z) == 2 - n
    assert pair(G, Z, [1] + [0] * (len(G) - 1)) == -1
    # the two-layer cycle fails at v_{4n}: it pairs to +1 there
    two_layer = two_layer_cycle(G, n)
    assert chi_cycle(G, two_layer) == 1
    assert not is_topological(G, two_layer)
    assert pair(G, two_layer, [int(v == f"v{4 * n}") for v in G.ids]) == 1


def test_function_cycles_are_topological():
    for n in (2, 3):
        G = generate_famille(n)
        for kind in ("f", "g"):
            m = [int(x) for x in multiplicities(G, kind).m]
            assert is_topological(G, m)
            assert all(Z <= x for Z, x in zip(laufer_min_cycle(G), m))


def _canonical(selfs, edges):
    n = len(selfs)
    return min(
        (tuple(selfs[p[i]] for i in range(n)),
         tuple(sorted(tuple(sorted((inv[a], inv[b]))) for a, b in edges)))
        for p in itertools.permutations(range(n))
        for inv in [{p[i]: i for i in range(n)}]
    )


def small_graphs():
    """Every connected graph on at most 4 vertices, up to isomorphism, with
    self-intersections in [-4, -1] and a negative definite intersection matrix."""
    seen = set()
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            for selfs in itertools.product(range(-4, 0), repeat=n):
                key = _canonical(selfs, edges)
                if key in seen:
                    continue
                seen.add(key)
                vs = [Vertex(f"x{i}", s) for i, s in enumerate(selfs)]
                g = ResolutionGraph(vs, [Edge(f"x{a}", f"x{b}") for a, b in edges])
                if validate(g).ok:
                    yield g


def test_laufer_matches_brute_force():
    count = 0
    for g in small_graphs():
        Z = laufer_min_cycle(g)
        if max(Z) <= 6:
            assert Z == brute_min_cycle(raw_matrix(g), 6), g
        count += 1
    assert count > 100
