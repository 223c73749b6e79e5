"""Directed and partial path consistency.

``dpc`` sweeps the ordering from the top position down, relaxing every
pair of lower neighbours of k through k and joining them with an edge.
The result is a chordal graph whose arcs bound all paths that avoid lower
vertices. ``p3c`` follows with one upward sweep, after which every arc
carries the exact shortest distance between its endpoints.

Both work on private copies laid out in position space: array index p
holds the vertex at position p + 1.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Graph, NegativeCycleError
from .ordering import VertexOrdering


@dataclass
class DpcGraph:
    """Output of ``dpc``: weights and presence in position space."""

    w: np.ndarray
    adj: np.ndarray
    ordering: VertexOrdering
    updates: int
    mid: np.ndarray = None  # position of the relaying vertex, -1 for original arcs
    _csr: tuple = field(default=None, repr=False)

    @property
    def n(self):
        return self.w.shape[0]

    def neighbour_lists(self):
        """(lptr, lidx, uptr, uidx) CSR lists of lower and upper neighbours."""
        if self._csr is None:
            self._csr = kernels.split_neighbours(self.adj)
        return self._csr

    @property
    def graph(self):
        """The updated graph relabelled back to the original vertex ids."""
        pos = self.ordering.positions() - 1
        return Graph(self.adj[np.ix_(pos, pos)], self.w[np.ix_(pos, pos)])

    def fill_edges(self, g):
        """Edges present here but absent from ``g``, as vertex pairs (u < v)."""
        pos = self.ordering.positions() - 1
        added = np.triu(self.adj[np.ix_(pos, pos)] & ~g.adj, 1)
        return frozenset((int(u) + 1, int(v) + 1) for u, v in zip(*np.nonzero(added)))


class PpcGraph(DpcGraph):
    """Output of ``p3c``: every present arc holds its shortest distance."""


def _prepare(g, d, track):
    if d.n != g.n:
        raise ValueError(f"ordering covers {d.n} vertices, graph has {g.n}")
    adj, w = g.permuted(d.order)
    mid = np.full((g.n, g.n), -1, dtype=np.int64) if track else np.empty((0, 0), dtype=np.int64)
    return adj, w, mid


def dpc(g, d, track_midpoints=False):
    """Directed path consistency; raises NegativeCycleError when inconsistent.

    Besides the pair test after each relaxation, every edge reaching down
    from k is tested for a negative 2-cycle when k is processed; without
    that test a negative cycle on two original arcs would go unnoticed.
    """
    adj, w, mid = _prepare(g, d, track_midpoints)
    ok, count = kernels.dpc(w, adj, mid, track_midpoints)
    if not ok:
        raise NegativeCycleError("DPC found a negative cycle")
    return DpcGraph(w, adj, d, int(count), mid if track_midpoints else None)


def p3c(g, d):
    """Partial path consistency: ``dpc`` followed by one upward sweep."""
    dg = dpc(g, d)
    lptr, lidx, _, _ = dg.neighbour_lists()
    count = kernels.p3c_sweep(dg.w, lptr, lidx)
    return PpcGraph(dg.w, dg.adj, d, dg.updates + int(count), None, dg._csr)


def dpc_update_count(adj):
    """Closed-form DPC count from a filled presence matrix in position space."""
    low = np.tril(adj, -1).sum(axis=1)
    return int((low * (low - 1)).sum())


def p3c_update_count(adj):
    low = np.tril(adj, -1).sum(axis=1)
    return 2 * int((low * (low - 1)).sum())
