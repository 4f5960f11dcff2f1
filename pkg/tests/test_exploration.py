import random

import pytest

from innerrates.exploration import (FILTERS, BadParameter, Infeasible, MichelSystem, NonIntegralMultiplicities,
                                    ZoneEquation, enumerate_candidates, explore, generate_famille, michel_system,
                                    _make_context, check_candidate, prepare)
from innerrates.invariants import SkeletonData, a_subgraph, inner_rates, monotone_reach, multiplicities
from innerrates.graph import Arrow, ResolutionGraph, Vertex
from oracles import brute_explore, brute_zone_solutions, partition_count, plane_graph, with_curvettes

PATRICIO = {(0, 0, 0, 2, 0, 0), (0, 0, 2, 1, 0, 0), (0, 0, 4, 0, 0, 0)}


def test_patricio(examples):
    res = explore(examples["patricio"])
    assert set(res.vectors) == PATRICIO
    assert res.michel_count == 3
    assert res.system.forced == {"v1": 0, "v2": 0, "v5": 0}
    (z,) = res.system.zones
    assert dict(zip(z.vertices, z.coefficients)) == {"v3": 12, "v4": 24, "v6": 60}
    assert z.rhs == 48


def test_polar_arrows_ignored(examples):
    assert explore(examples["example35"]).vectors == explore(examples["patricio"]).vectors


def test_single_vertex():
    g = ResolutionGraph([Vertex("v", -1)], [], [Arrow("f", "v"), Arrow("g", "v")])
    res = explore(g)
    assert res.vectors == [(0,)]
    assert res.admissible[0][1] == (1,)


def test_enumerate_zero_budget():
    system = MichelSystem(("a", "b"), {}, (ZoneEquation(("a", "b"), (2, 3), 0),))
    assert list(enumerate_candidates(system)) == [(0, 0)]


def test_enumerate_shared_variables():
    system = MichelSystem(("a", "b", "c"), {"c": 1},
                          (ZoneEquation(("a", "b"), (1, 2), 4), ZoneEquation(("b", "c"), (1, 1), 2)))
    assert list(enumerate_candidates(system)) == [(2, 1, 1)]
    system = MichelSystem(("a", "b"), {}, (ZoneEquation(("a",), (2,), 3),))
    assert list(enumerate_candidates(system)) == []


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_famille_michel_system(n):
    G = generate_famille(n)
    _, _, _, _, system = prepare(G)
    assert system.forced == {"v1": 14, "v2": 0}
    (z,) = system.zones
    expect = {f"v{k}": k for k in range(3, 4 * n + 1)}
    expect.update({f"w{2 * n}": 2 * n, f"w{2 * n + 1}": 2 * n + 1, "w2": 2, "w1": 1})
    assert dict(zip(z.vertices, z.coefficients)) == expect
    assert z.rhs == 2 * n + 2
    count = sum(1 for _ in enumerate_candidates(system))
    assert count == partition_count(z.coefficients, z.rhs) == len(brute_zone_solutions(z.coefficients, z.rhs))
    assert count == [14, 25, 45, 80, 138][n - 2]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_famille_reduced_count_is_partition_number(n):
    """With the w_{2n}, w_{2n+1} entries at zero the outer count is p(2n+2)."""
    G = generate_famille(n)
    _, _, _, _, system = prepare(G)
    i, j = G.index(f"w{2 * n}"), G.index(f"w{2 * n + 1}")
    reduced = sum(1 for P in enumerate_candidates(system) if P[i] == P[j] == 0)
    assert reduced == partition_count(range(1, 2 * n + 3), 2 * n + 2)
    if n == 2:
        assert reduced == 11


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_famille_admissible(n):
    G = generate_famille(n)
    res = explore(G)
    tails = {P[-4:] for P in res.vectors}
    assert tails == {(0, 1, 0, 1)} | {(0, 0, k, 2 * n + 2 - 2 * k) for k in range(n + 2)}
    assert len(res.vectors) == n + 3
    for P in res.vectors:
        assert P[0] == 14 and all(p == 0 for p in P[1:4 * n])
    assert sum(res.rejected_counts.values()) + len(res.vectors) == res.michel_count


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_famille_excluded_tails_fail_integrality(n):
    """(1,0,1,0) and (1,0,0,2) meet Michel's relation but give a half-integer rate numerator."""
    graph, f, g, sk, system = prepare(generate_famille(n))
    ctx = _make_context(graph, f, g, sk)
    for tail in ((1, 0, 1, 0), (1, 0, 0, 2)):
        P = (14,) + (0,) * (4 * n - 1) + tail
        assert system.satisfied_by(P)
        assert check_candidate(ctx, P)[0] == "non_integral_a"


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_monotone_strictness(n):
    """Any Michel candidate with weight on v3..v_{4n} fails positivity or monotonicity."""
    graph, f, g, sk, system = prepare(generate_famille(n))
    for P in enumerate_candidates(system):
        if any(P[k] for k in range(2, 4 * n)):
            q = inner_rates(graph, f, P).q
            bad = any(x <= 0 for x in q) or monotone_reach(graph, q, {"v1"}) != set(graph.ids)
            assert bad, P


def test_generate_famille_shape():
    G = generate_famille(2)
    assert len(G) == 12 and len(G.edges) == 11
    assert G.arrow_weights("f")[0] == 9 and G.arrow_weights("g")[0] == 6 and G.arrow_weights("g")[2] == 1
    for bad in (1, 0, 2.0, "3", True):
        with pytest.raises(BadParameter):
            generate_famille(bad)


def test_infeasible_guards(examples):
    g = examples["patricio"]
    f, gg = multiplicities(g, "f"), multiplicities(g, "g")
    sk = a_subgraph(g, f, gg)
    # a leaf declared a singleton would be forced to P = -1
    fake = SkeletonData(sk.h, sk.A_vertices | {"v3"}, sk.A_edges, (("v4", "v6"),), sk.singletons + ("v3",))
    with pytest.raises(Infeasible, match="v3"):
        michel_system(g, f, gg, fake)
    # a zone made of the leaf alone has budget -12
    fake = SkeletonData(sk.h, sk.A_vertices, sk.A_edges, (("v3",),), sk.singletons)
    with pytest.raises(Infeasible, match="budget"):
        michel_system(g, f, gg, fake)


def test_nonintegral_multiplicities():
    g = ResolutionGraph([Vertex("a", -2)], [], [Arrow("f", "a"), Arrow("g", "a")])
    with pytest.raises(NonIntegralMultiplicities):
        explore(g)


def test_parallel_matches_serial():
    G = generate_famille(4)
    a, b = explore(G), explore(G, workers=2, chunk_size=7)
    assert a.to_dict() == b.to_dict()


def random_cases(seed, wanted):
    rng = random.Random(seed)
    out = []
    while len(out) < wanted:
        n = rng.randint(1, 8)
        g = with_curvettes(plane_graph(rng, n), rng, rng.randint(1, 3), rng.randint(1, 3))
        try:
            system = prepare(g)[4]
        except Infeasible:
            continue
        budgets = [z.rhs for z in system.zones]
        bound = max(budgets + list(system.forced.values()) + [0])
        if max(budgets + [0]) > 20 or (bound + 1) ** n > 2_000_000:
            continue
        out.append((g, bound))
    return out


@pytest.mark.parametrize("seed", [1, 2])
def test_oracle_equivalence(seed):
    for g, bound in random_cases(seed, 12):
        assert explore(g).vectors == brute_explore(g, bound)


def test_filter_names():
    assert FILTERS == ("non_integral_a", "non_positive_q", "hironaka_mismatch", "monotone_fail")


@pytest.mark.parametrize("name", ["patricio", "famille2", "example1"])
def test_admissible_satisfy_michel(examples, name):
    res = explore(examples[name])
    assert res.vectors
    assert all(res.system.satisfied_by(P) for P in res.vectors)


def test_deterministic_order(examples):
    a, b = explore(examples["famille2"]), explore(examples["famille2"])
    assert a.to_dict() == b.to_dict()
    assert a.vectors == sorted(a.vectors)
