"""Graph data model and the brute-force shortest-path oracle.

Vertices are numbered 1..n in every public function. Internally a graph is
two dense n x n arrays indexed by ``vertex - 1``: a symmetric boolean
presence matrix and a float matrix of directed weights, where ``inf`` marks
a missing direction. The diagonal of the weight matrix is 0.
"""

from collections import deque

import numpy as np

INF = float("inf")


class GraphError(ValueError):
    """Malformed graph input."""


class NegativeCycleError(Exception):
    """The graph contains a cycle of negative total weight.

    Raised by every solver in place of returning a distance matrix; the
    consistency algorithms call this outcome INCONSISTENT.
    """


class Graph:
    """Directed real-weighted graph over an undirected edge relation.

    An edge {u, v} may be present while one or both of its directions carry
    an infinite weight (fill edges start out that way). Instances are
    treated as immutable; the arrays are flagged read-only.
    """

    __slots__ = ("n", "adj", "w", "_nbrs")

    def __init__(self, adj, w):
        adj = np.array(adj, dtype=bool)
        w = np.array(w, dtype=np.float64)
        n = adj.shape[0]
        if adj.shape != (n, n) or w.shape != (n, n):
            raise GraphError("presence and weight matrices must be square and equal-sized")
        if np.any(np.diagonal(adj)):
            raise GraphError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise GraphError("edge presence must be symmetric")
        if np.isnan(w).any() or np.isneginf(w).any():
            raise GraphError("weights must be finite reals or +inf")
        off = ~adj
        np.fill_diagonal(off, False)
        if np.isfinite(w[off]).any():
            raise GraphError("finite weight on an absent edge")
        np.fill_diagonal(w, 0.0)
        adj.setflags(write=False)
        w.setflags(write=False)
        self.n = n
        self.adj = adj
        self.w = w
        self._nbrs = None

    @classmethod
    def empty(cls, n):
        w = np.full((n, n), INF)
        return cls(np.zeros((n, n), dtype=bool), w)

    @property
    def m(self):
        """Number of undirected edges."""
        return int(self.adj.sum()) // 2

    def weight(self, u, v):
        return float(self.w[u - 1, v - 1])

    def has_edge(self, u, v):
        return bool(self.adj[u - 1, v - 1])

    def neighbours(self, v):
        """Sorted neighbour ids of ``v`` under the undirected relation."""
        if self._nbrs is None:
            self._nbrs = [np.flatnonzero(row) + 1 for row in self.adj]
        return self._nbrs[v - 1]

    def edges(self):
        """Unordered edges as (u, v) with u < v, in lexicographic order."""
        iu, ju = np.nonzero(np.triu(self.adj))
        return [(int(i) + 1, int(j) + 1) for i, j in zip(iu, ju)]

    def arcs(self):
        """Directed arcs with finite weight as (u, v, w), sorted by (u, v)."""
        mask = self.adj & np.isfinite(self.w)
        iu, ju = np.nonzero(mask)
        return [(int(i) + 1, int(j) + 1, float(self.w[i, j])) for i, j in zip(iu, ju)]

    def arc_arrays(self):
        """Finite arcs as three parallel arrays (0-based tails, heads, weights)."""
        mask = self.adj & np.isfinite(self.w)
        iu, ju = np.nonzero(mask)
        return iu, ju, self.w[iu, ju]

    def permuted(self, order):
        """Presence and weight matrices relabelled so ``order[p]`` becomes index p.

        ``order`` holds 1-based vertex ids; the returned arrays are fresh,
        writable copies.
        """
        idx = np.asarray(order, dtype=np.intp) - 1
        return self.adj[np.ix_(idx, idx)].copy(), self.w[np.ix_(idx, idx)].copy()

    def induced(self, vertices):
        """Induced subgraph on ``vertices``, renumbered 1.. in the given order."""
        adj, w = self.permuted(vertices)
        return Graph(adj, w)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj) and np.array_equal(self.w, other.w)

    def __hash__(self):
        return hash((self.n, self.adj.tobytes(), self.w.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(n, arcs):
    """Build a graph from directed arcs ``(u, v, w_uv)``.

    The reverse direction of each arc defaults to +inf unless it is listed
    too. Any out-of-range vertex, self-loop or repeated ordered arc rejects
    the whole input.
    """
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj = np.zeros((n, n), dtype=bool)
    w = np.full((n, n), INF)
    seen = set()
    for u, v, wt in arcs:
        u, v = int(u), int(v)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"arc ({u}, {v}) has a vertex outside 1..{n}")
        if u == v:
            raise GraphError(f"self-loop on vertex {u}")
        if (u, v) in seen:
            raise GraphError(f"duplicate arc ({u}, {v})")
        seen.add((u, v))
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
        w[u - 1, v - 1] = float(wt)
    return Graph(adj, w)


def _bellman_ford_rows(n, tails, heads, wts, dist, rounds):
    """Relax every arc for up to ``rounds`` rounds, all rows at once.

    Each row of ``dist`` is an independent source. Returns a boolean mask of
    rows that still changed in round ``rounds + 1``, i.e. rows that reach a
    negative cycle.
    """
    if len(tails) == 0:
        return np.zeros(dist.shape[0], dtype=bool)
    dist_t = dist.T  # view: rows of dist_t are vertices
    for _ in range(rounds):
        before = dist.copy()
        np.minimum.at(dist_t, heads, dist_t[tails] + wts[:, None])
        if np.array_equal(before, dist):
            return np.zeros(dist.shape[0], dtype=bool)
    probe = dist.copy()
    np.minimum.at(probe.T, heads, dist_t[tails] + wts[:, None])
    return (probe < dist).any(axis=1)


def bellman_ford_sssp(g, s):
    """Shortest distances from ``s``; index ``v - 1`` holds the distance to v.

    Raises NegativeCycleError when a negative cycle is reachable from ``s``.
    """
    if not 1 <= s <= g.n:
        raise GraphError(f"source {s} outside 1..{g.n}")
    tails, heads, wts = g.arc_arrays()
    dist = np.full((1, g.n), INF)
    dist[0, s - 1] = 0.0
    if _bellman_ford_rows(g.n, tails, heads, wts, dist, max(g.n - 1, 0))[0]:
        raise NegativeCycleError(f"negative cycle reachable from {s}")
    return dist[0]


def has_negative_cycle(g):
    """Global probe: a virtual source with 0-weight arcs to every vertex."""
    tails, heads, wts = g.arc_arrays()
    dist = np.zeros((1, g.n))
    return bool(_bellman_ford_rows(g.n, tails, heads, wts, dist, g.n)[0])


def oracle_apsp(g):
    """Exact distance matrix by Bellman-Ford from every source.

    No orderings, reweighting or clever pruning: this is the reference the
    other solvers are checked against. Raises NegativeCycleError if any
    negative cycle exists anywhere in the graph.
    """
    if has_negative_cycle(g):
        raise NegativeCycleError("graph contains a negative cycle")
    tails, heads, wts = g.arc_arrays()
    dist = np.full((g.n, g.n), INF)
    np.fill_diagonal(dist, 0.0)
    _bellman_ford_rows(g.n, tails, heads, wts, dist, max(g.n - 1, 0))
    return dist


def connected_components(g):
    """Vertex sets of the components, each sorted, ordered by least member."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(1, g.n + 1):
        if seen[s - 1]:
            continue
        seen[s - 1] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbours(u):
                if not seen[v - 1]:
                    seen[v - 1] = True
                    comp.append(int(v))
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def bfs_subgraph(g, size, start=None, seed=None):
    """Induced subgraph on the first ``size`` vertices reached by BFS.

    Edges are followed regardless of direction and neighbours are taken in
    ascending id order. The result is renumbered 1.. in visit order. If the
    start vertex's component is smaller than ``size`` the whole component
    is returned.
    """
    if size > g.n:
        raise GraphError(f"requested {size} vertices from a graph with {g.n}")
    if size <= 0:
        return Graph.empty(0)
    if start is None:
        start = int(np.random.default_rng(seed).integers(1, g.n + 1))
    if not 1 <= start <= g.n:
        raise GraphError(f"start vertex {start} outside 1..{g.n}")
    seen = np.zeros(g.n, dtype=bool)
    seen[start - 1] = True
    visited = [start]
    queue = deque([start])
    while queue and len(visited) < size:
        u = queue.popleft()
        for v in g.neighbours(u):
            if not seen[v - 1]:
                seen[v - 1] = True
                visited.append(int(v))
                queue.append(v)
                if len(visited) == size:
                    break
    return g.induced(visited)
