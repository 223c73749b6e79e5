"""Vertex orderings, triangulation and induced width.

Convention: DPC sweeps positions n, n-1, ..., 1, so the vertex at position
n is eliminated first. Elimination heuristics therefore hand out positions
from the top down: the first vertex a heuristic eliminates gets position n.
Maximum cardinality search numbers bottom up (first visited gets position
1), which makes the lower neighbours of every vertex a clique when the
input is chordal.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .graph import Graph


class Heuristic(str, Enum):
    MIN_DEGREE = "MIN_DEGREE"
    MIN_FILL = "MIN_FILL"
    STATIC_MIN_DEGREE = "STATIC_MIN_DEGREE"
    STATIC_MIN_FILL = "STATIC_MIN_FILL"
    MCS = "MCS"
    RANDOM = "RANDOM"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper().replace("-", "_")
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown heuristic {name!r}; choose from {[h.value for h in cls]}") from None


@dataclass(frozen=True)
class VertexOrdering:
    """Bijection between vertices and positions; ``order[0]`` has position 1."""

    order: tuple

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValueError("ordering must be a permutation of 1..n")
        object.__setattr__(self, "order", order)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_line(cls, line):
        return cls(tuple(int(tok) for tok in line.split()))

    def to_line(self):
        return " ".join(map(str, self.order))

    @property
    def n(self):
        return len(self.order)

    def position(self, v):
        return self.positions()[v - 1]

    def positions(self):
        """Array whose entry ``v - 1`` is the 1-based position of vertex v."""
        pos = np.empty(len(self.order), dtype=np.int64)
        pos[np.asarray(self.order, dtype=np.int64) - 1] = np.arange(1, len(self.order) + 1)
        return pos

    def index_array(self):
        """0-based vertex indices in position order."""
        return np.asarray(self.order, dtype=np.intp) - 1


@dataclass(frozen=True)
class TriangulationResult:
    ordering: VertexOrdering
    fill_edges: frozenset  # (u, v) vertex pairs with u < v
    lower_degree: np.ndarray  # entry v - 1: |E'_k| for the vertex v
    induced_width: int
    m: int

    @property
    def m_c(self):
        return self.m + len(self.fill_edges)

    def filled_graph(self, g):
        """``g`` plus the fill edges, each carrying +inf in both directions."""
        adj = g.adj.copy()
        for u, v in self.fill_edges:
            adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
        return Graph(adj, g.w.copy())


def triangulate(g, d):
    """Structural DPC: eliminate positions n..1, connecting lower neighbours."""
    n = g.n
    idx = d.index_array()
    adj = g.adj[np.ix_(idx, idx)].copy()
    lower = np.zeros(n, dtype=np.int64)
    fill = set()
    for k in range(n - 1, -1, -1):
        nb = np.flatnonzero(adj[k, :k])
        lower[k] = len(nb)
        if len(nb) > 1:
            sub = adj[np.ix_(nb, nb)]
            a, b = np.nonzero(np.triu(~sub, 1))
            for i, j in zip(nb[a], nb[b]):
                u, v = int(idx[i]) + 1, int(idx[j]) + 1
                fill.add((u, v) if u < v else (v, u))
            adj[np.ix_(nb, nb)] = True
            adj[nb, nb] = False
    by_vertex = np.empty(n, dtype=np.int64)
    by_vertex[idx] = lower
    width = int(lower.max()) if n else 0
    return TriangulationResult(d, frozenset(fill), by_vertex, width, g.m)


def _eliminate(adj, score_fn, affected_fn):
    """Greedy elimination; returns vertex indices in elimination sequence."""
    n = adj.shape[0]
    alive = np.ones(n, dtype=bool)
    score = score_fn(adj, np.arange(n))
    big = np.iinfo(np.int64).max
    seq = []
    for _ in range(n):
        v = int(np.argmin(np.where(alive, score, big)))
        seq.append(v)
        nb = np.flatnonzero(adj[v])
        touched = affected_fn(adj, v, nb)
        if len(nb) > 1:
            adj[np.ix_(nb, nb)] = True
            adj[nb, nb] = False
        adj[v, :] = False
        adj[:, v] = False
        alive[v] = False
        touched = touched[alive[touched]]
        if len(touched):
            score[touched] = score_fn(adj, touched)
    return seq


def _degree(adj, vs):
    return adj[vs].sum(axis=1).astype(np.int64)


def _fill_count(adj, vs):
    out = np.empty(len(vs), dtype=np.int64)
    for t, v in enumerate(vs):
        nb = np.flatnonzero(adj[v])
        d = len(nb)
        present = int(adj[np.ix_(nb, nb)].sum()) // 2 if d > 1 else 0
        out[t] = d * (d - 1) // 2 - present
    return out


def _neighbours_only(adj, v, nb):
    return nb


def _two_hop(adj, v, nb):
    # fill counts change for N(v) and for anything adjacent to N(v)
    if len(nb) == 0:
        return nb
    hit = adj[nb].any(axis=0)
    hit[nb] = True
    return np.flatnonzero(hit)


def _from_elimination(seq):
    # first eliminated -> position n
    return VertexOrdering(tuple(int(v) + 1 for v in reversed(seq)))


def _mcs(adj):
    n = adj.shape[0]
    weight = np.zeros(n, dtype=np.int64)
    numbered = np.zeros(n, dtype=bool)
    visit = []
    for _ in range(n):
        v = int(np.argmax(np.where(numbered, -1, weight)))
        visit.append(v)
        numbered[v] = True
        weight[adj[v] & ~numbered] += 1
    return VertexOrdering(tuple(v + 1 for v in visit))


def order_vertices(g, heuristic=Heuristic.MIN_DEGREE, seed=None):
    """Compute a vertex ordering with the named heuristic.

    Ties go to the lowest vertex id. RANDOM draws a uniform permutation from
    ``seed``; every other heuristic ignores the seed.
    """
    h = Heuristic.parse(heuristic)
    n = g.n
    if h is Heuristic.RANDOM:
        perm = np.random.default_rng(seed).permutation(n) + 1
        return VertexOrdering(tuple(int(v) for v in perm))
    if h is Heuristic.MCS:
        return _mcs(g.adj)
    if h is Heuristic.MIN_DEGREE:
        return _from_elimination(_eliminate(g.adj.copy(), _degree, _neighbours_only))
    if h is Heuristic.MIN_FILL:
        return _from_elimination(_eliminate(g.adj.copy(), _fill_count, _two_hop))
    if h is Heuristic.STATIC_MIN_DEGREE:
        score = _degree(g.adj, np.arange(n))
    else:
        score = _fill_count(g.adj, np.arange(n))
    seq = np.lexsort((np.arange(n), score))
    return _from_elimination(seq)


def is_chordal(g):
    """MCS ordering followed by a zero-fill check."""
    return not triangulate(g, order_vertices(g, Heuristic.MCS)).fill_edges


def induced_width(g, d):
    return triangulate(g, d).induced_width

