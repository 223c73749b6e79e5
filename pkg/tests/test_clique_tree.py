import networkx as nx
import numpy as np
import pytest

from _util import cycle, to_nx, undirected
from twapsp.clique_tree import (
    CliqueTree, NotChordalError, build_clique_tree, check_separators, separator_stats,
    validate_clique_tree,
)
from twapsp.generators import gen_chordal, gen_chordal_bounded_sep, gen_diamonds
from twapsp.ordering import Heuristic, VertexOrdering, order_vertices, triangulate

TWO_TRIANGLES = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]


def _tree(g):
    return build_clique_tree(g, order_vertices(g, Heuristic.MCS))


def test_triangle_single_node():
    t = _tree(undirected(3, [(1, 2), (1, 3), (2, 3)]))
    assert t.nodes == (frozenset({1, 2, 3}),) and t.edges == ()
    assert separator_stats(t).s_d == 0


def test_two_triangles_share_separator():
    g = undirected(4, TWO_TRIANGLES)
    t = _tree(g)
    assert set(t.nodes) == {frozenset({1, 2, 3}), frozenset({2, 3, 4})}
    assert len(t.edges) == 1 and t.edges[0][2] == frozenset({2, 3})
    st = separator_stats(t)
    assert (st.s_d, st.median, st.histogram) == (2, 2.0, {2: 1})
    assert validate_clique_tree(t, g) is None


def test_path_tree():
    g = undirected(3, [(1, 2), (2, 3)])
    t = build_clique_tree(g, VertexOrdering.identity(3))
    assert set(t.nodes) == {frozenset({1, 2}), frozenset({2, 3})}
    assert t.edges[0][2] == frozenset({2})


def test_root_holds_top_vertex():
    g = undirected(4, TWO_TRIANGLES)
    d = VertexOrdering((1, 2, 3, 4))
    t = build_clique_tree(g, d)
    assert 4 in t.nodes[t.root]


def test_forest_for_disconnected_graph():
    g = undirected(6, [(1, 2), (2, 3), (4, 5)])
    t = _tree(g)
    assert len(t.roots) == 3
    assert validate_clique_tree(t, g) is None


def test_not_chordal_raises():
    with pytest.raises(NotChordalError):
        build_clique_tree(cycle(4), VertexOrdering.identity(4))


def test_violation_non_maximal_clique():
    g = undirected(4, TWO_TRIANGLES)
    bad = CliqueTree(
        (frozenset({1, 2}), frozenset({1, 2, 3}), frozenset({2, 3, 4})),
        ((0, 1, frozenset({1, 2})), (1, 2, frozenset({2, 3}))),
        (0,),
    )
    v = validate_clique_tree(bad, g)
    assert v is not None and v.prop == "Property 2"


def test_violation_incoherent_tree():
    g = undirected(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    # {2,3} and {1,2} both hold 2 but are not adjacent in this chain
    bad = CliqueTree(
        (frozenset({1, 2}), frozenset({4, 5}), frozenset({3, 4}), frozenset({2, 3})),
        ((0, 1, frozenset()), (1, 2, frozenset({4})), (2, 3, frozenset({3}))),
        (0,),
    )
    v = validate_clique_tree(bad, g)
    assert v is not None and v.prop == "Property 3"


def test_violation_missing_vertex():
    g = undirected(3, [(1, 2)])
    bad = CliqueTree((frozenset({1, 2}),), (), (0,))
    v = validate_clique_tree(bad, g)
    assert v is not None


def test_diamonds_separator_size_two():
    g = gen_diamonds(10, 3, 1)
    d = order_vertices(g, Heuristic.MIN_DEGREE)
    tree = build_clique_tree(triangulate(g, d).filled_graph(g), d)
    assert separator_stats(tree).s_d == 2


@pytest.mark.parametrize("seed", range(25))
def test_generated_chordal_trees_valid(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 120))
    if seed % 2:
        g = gen_chordal(n, int(rng.integers(1, min(n - 1, 12) + 1)), seed)
    else:
        w = int(rng.integers(2, 10))
        g = gen_chordal_bounded_sep(max(n, w + 1), w, int(rng.integers(1, w + 1)), seed)
    t = _tree(g)
    assert validate_clique_tree(t, g) is None
    assert len(t.nodes) <= g.n
    w_d = triangulate(g, order_vertices(g, Heuristic.MCS)).induced_width
    assert separator_stats(t).s_d <= w_d
    cliques = {frozenset(c) for c in nx.find_cliques(to_nx(g).to_undirected())}
    assert set(t.nodes) == cliques


def test_separator_check_catches_wrong_tree():
    # path 1-2-3-4 with the tree edges wired as {1,2}-{3,4}-{2,3}
    g = undirected(4, [(1, 2), (2, 3), (3, 4)])
    bad = CliqueTree(
        (frozenset({1, 2}), frozenset({3, 4}), frozenset({2, 3})),
        ((0, 1, frozenset()), (1, 2, frozenset({3}))),
        (0,),
    )
    assert check_separators(bad, g) is not None
