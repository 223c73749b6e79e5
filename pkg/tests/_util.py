import itertools

import networkx as nx
import numpy as np

from twapsp import apsp
from twapsp.generators import assign_weights
from twapsp.graph import INF, Graph, NegativeCycleError, from_edges
from twapsp.heaps import HeapKind
from twapsp.ordering import VertexOrdering

G3_ARCS = [(1, 3, 2), (3, 1, 4), (2, 3, 1), (3, 2, 3)]
G3_DIST = np.array([[0, 5, 2], [5, 0, 1], [4, 3, 0]], dtype=float)


def g3():
    return from_edges(3, G3_ARCS)


def random_graph(rng, n, p=0.4, lo=-3, hi=3):
    arcs = [
        (u, v, int(rng.integers(lo, hi + 1)))
        for u in range(1, n + 1)
        for v in range(1, n + 1)
        if u != v and rng.random() < p
    ]
    return from_edges(n, arcs)


def random_consistent(rng, n, p=0.2):
    """Random skeleton with potential-based weights (never a negative cycle)."""
    adj = np.triu(rng.random((n, n)) < p, 1)
    adj = adj | adj.T
    w = np.where(adj, 0.0, INF)
    return assign_weights(Graph(adj, w), rng)


def random_ordering(rng, n):
    return VertexOrdering(tuple(int(v) + 1 for v in rng.permutation(n)))


def undirected(n, edges, weight=1):
    return from_edges(n, [(u, v, weight) for u, v in edges] + [(v, u, weight) for u, v in edges])


def cycle(n):
    return undirected(n, [(i, i % n + 1) for i in range(1, n + 1)])


def run_all(g, d):
    """Every solver's matrix (None when it reports a negative cycle)."""
    solvers = {
        "CHLEQ": lambda: apsp.chleq_apsp(g, d),
        "SNOWBALL": lambda: apsp.snowball(g, d),
        "SNOWBALL_SEP": lambda: apsp.snowball_separators(g, d),
        "FLOYD_WARSHALL": lambda: apsp.floyd_warshall(g),
        "JOHNSON_BINARY": lambda: apsp.johnson(g, HeapKind.BINARY),
        "JOHNSON_FIBONACCI": lambda: apsp.johnson(g, HeapKind.FIBONACCI),
    }
    out = {}
    for name, fn in solvers.items():
        try:
            out[name] = fn().dist
        except NegativeCycleError:
            out[name] = None
    return out


def same(a, b):
    if a is None or b is None:
        return a is None and b is None
    return bool(np.array_equal(a, b))


def to_nx(g):
    dg = nx.DiGraph()
    dg.add_nodes_from(range(1, g.n + 1))
    for u, v, w in g.arcs():
        dg.add_edge(u, v, weight=w)
    return dg


def has_negative_simple_cycle(g):
    dg = to_nx(g)
    for cyc in nx.simple_cycles(dg):
        total = sum(dg[u][v]["weight"] for u, v in zip(cyc, cyc[1:] + cyc[:1]))
        if total < 0:
            return True
    return False


def brute_force_width(g):
    """Minimum induced width over all orderings (small graphs only)."""
    from twapsp.ordering import triangulate

    return min(
        triangulate(g, VertexOrdering(p)).induced_width
        for p in itertools.permutations(range(1, g.n + 1))
    )


def graphs(max_n=6, lo=-3, hi=3, min_n=1):
    """Hypothesis strategy: small directed graphs with integer weights."""
    from hypothesis import strategies as st

    @st.composite
    def build(draw):
        n = draw(st.integers(min_n, max_n))
        pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
        arcs = [(u, v, draw(st.integers(lo, hi))) for u, v in chosen]
        return from_edges(n, arcs)

    return build()


def orderings(n):
    from hypothesis import strategies as st

    return st.permutations(list(range(1, n + 1))).map(VertexOrdering)


def random_trace(rng, length, key_hi=1000):
    """Valid INSERT / DECREASE / EXTRACT command list.

    Keys are ``base * 2**20 + id`` so no two live entries ever tie and the
    extraction order is fully determined.
    """
    import heapq

    shift = 1 << 20
    ops = rng.random(length).tolist()
    raw = rng.integers(0, key_hi, size=length).tolist()
    live = {}
    live_ids = []
    slot = {}
    lazy = []
    nxt = 0
    out = []
    for t in range(length):
        r = ops[t]
        if r < 0.45 or not live:
            k = raw[t] * shift + nxt
            live[nxt] = k
            slot[nxt] = len(live_ids)
            live_ids.append(nxt)
            heapq.heappush(lazy, (k, nxt))
            out.append(("INSERT", nxt, k))
            nxt += 1
        elif r < 0.75:
            x = live_ids[raw[t] % len(live_ids)]
            base = live[x] // shift
            k = (base - raw[t] % (base + 1 + key_hi // 10)) * shift + x
            live[x] = k
            heapq.heappush(lazy, (k, x))
            out.append(("DECREASE", x, k))
        else:
            out.append(("EXTRACT",))
            while True:
                k, x = heapq.heappop(lazy)
                if live.get(x) == k:
                    break
            del live[x]
            last = live_ids.pop()
            if last != x:
                live_ids[slot[x]] = last
                slot[last] = slot[x]
            del slot[x]
    return out


def reference_heap(commands):
    """Flat sorted list of (key, id); returns the extracted keys."""
    import bisect

    entries = []
    current = {}
    keys = []
    for cmd in commands:
        if cmd[0] == "INSERT":
            _, x, k = cmd
            current[x] = k
            bisect.insort(entries, (k, x))
        elif cmd[0] == "DECREASE":
            _, x, k = cmd
            entries.pop(bisect.bisect_left(entries, (current[x], x)))
            current[x] = k
            bisect.insort(entries, (k, x))
        else:
            k, x = entries.pop(0)
            del current[x]
            keys.append(k)
    return keys
