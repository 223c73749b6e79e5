import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _util import G3_ARCS, g3, graphs, orderings, random_consistent, random_ordering
from twapsp.consistency import dpc, dpc_update_count, p3c
from twapsp.generators import gen_chordal
from twapsp.graph import INF, NegativeCycleError, from_edges, has_negative_cycle, oracle_apsp
from twapsp.ordering import Heuristic, VertexOrdering, is_chordal, order_vertices, triangulate


def test_dpc_g3_adds_relaxed_edge():
    dg = dpc(g3(), VertexOrdering.identity(3))
    g = dg.graph
    assert dg.fill_edges(g3()) == frozenset({(1, 2)})
    assert g.weight(1, 2) == 5 and g.weight(2, 1) == 5
    assert dg.updates == 2


def test_dpc_g3_negative_variant():
    fine = from_edges(3, G3_ARCS + [(2, 1, -3)])
    dpc(fine, VertexOrdering.identity(3))
    bad = from_edges(3, G3_ARCS + [(2, 1, -6)])
    assert has_negative_cycle(bad)
    with pytest.raises(NegativeCycleError):
        dpc(bad, VertexOrdering.identity(3))


def test_dpc_two_vertex_negative_cycle():
    g = from_edges(2, [(1, 2, 1), (2, 1, -2)])
    with pytest.raises(NegativeCycleError):
        dpc(g, VertexOrdering.identity(2))


def test_dpc_perfect_ordering_adds_nothing():
    g = gen_chordal(50, 4, 3)
    d = order_vertices(g, Heuristic.MCS)
    dg = dpc(g, d)
    assert not dg.fill_edges(g)
    assert np.all(dg.graph.w[g.adj] <= g.w[g.adj])


def test_p3c_g3_arcs_are_distances():
    pg = p3c(g3(), VertexOrdering.identity(3))
    g = pg.graph
    want = {(1, 2): 5, (2, 1): 5, (1, 3): 2, (3, 1): 4, (2, 3): 1, (3, 2): 3}
    assert {k: g.weight(*k) for k in want} == want


def test_p3c_single_edge_unchanged():
    g = from_edges(2, [(1, 2, 4), (2, 1, -1)])
    pg = p3c(g, VertexOrdering.identity(2))
    assert pg.graph == g


def test_dpc_does_not_touch_input():
    g = g3()
    before = g.w.copy()
    dpc(g, VertexOrdering.identity(3))
    assert np.array_equal(g.w, before)


@given(graphs(max_n=5))
def test_dpc_detects_exactly_negative_cycles(g):
    d = VertexOrdering.identity(g.n)
    try:
        dpc(g, d)
        found = False
    except NegativeCycleError:
        found = True
    assert found == has_negative_cycle(g)


@given(st.data())
def test_dpc_invariants(data):
    g = data.draw(graphs(max_n=7))
    d = data.draw(orderings(g.n))
    try:
        dg = dpc(g, d)
    except NegativeCycleError:
        assert has_negative_cycle(g)
        return
    out = dg.graph
    assert is_chordal(out)
    assert dg.fill_edges(g) == triangulate(g, d).fill_edges
    assert np.all(out.w[g.adj] <= g.w[g.adj])
    assert dg.updates == dpc_update_count(dg.adj)
    # the two lowest positions carry exact distances
    if g.n >= 2:
        a, b = d.order[0], d.order[1]
        dist = oracle_apsp(g)
        if out.has_edge(a, b):
            assert out.weight(a, b) == dist[a - 1, b - 1]
            assert out.weight(b, a) == dist[b - 1, a - 1]


@given(st.data())
def test_dpc_bounds_paths_through_higher_vertices(data):
    """w(i->j) <= any i->j path whose interior lies above both endpoints."""
    g = data.draw(graphs(max_n=6))
    d = data.draw(orderings(g.n))
    try:
        out = dpc(g, d)
    except NegativeCycleError:
        return
    pos = d.positions()
    for i in range(1, g.n + 1):
        for j in range(1, g.n + 1):
            if i == j:
                continue
            keep = [v for v in range(1, g.n + 1) if v in (i, j) or pos[v - 1] > max(pos[i - 1], pos[j - 1])]
            sub = g.induced(keep)
            best = oracle_apsp(sub)[keep.index(i), keep.index(j)]
            if best < INF:
                assert out.graph.weight(i, j) <= best


@pytest.mark.parametrize("seed", range(100))
def test_p3c_arcs_match_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 61))
    g = random_consistent(rng, n, float(rng.uniform(0.05, 0.3)))
    d = order_vertices(g, list(Heuristic)[seed % len(Heuristic)], seed=seed)
    pg = p3c(g, d).graph
    dist = oracle_apsp(g)
    live = pg.adj
    assert np.array_equal(pg.w[live], dist[live])


@given(st.integers(2, 25), st.integers(0, 2**32 - 1))
def test_p3c_is_idempotent(n, seed):
    rng = np.random.default_rng(seed)
    g = random_consistent(rng, n, 0.3)
    d = random_ordering(rng, n)
    once = p3c(g, d).graph
    twice = p3c(once, d)
    assert twice.graph == once
