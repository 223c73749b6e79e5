"""All-pairs shortest paths: ordering-based solvers and two baselines.

Every solver returns a DistanceMatrix indexed by ``vertex - 1`` and counts
the min-update statements it executes. A negative cycle anywhere in the
input raises NegativeCycleError.
"""

import heapq
from dataclasses import dataclass

import numpy as np

from . import kernels
from .clique_tree import build_clique_tree
from .consistency import dpc, p3c
from .graph import INF, GraphError, NegativeCycleError
from .heaps import HeapKind


class NoPathError(LookupError):
    """The target is unreachable from the source."""


class CycleGuardError(RuntimeError):
    """Midpoint expansion ran past n^2 hops; the midpoints are corrupt."""


@dataclass
class DistanceMatrix:
    dist: np.ndarray
    updates: int
    midpoint: np.ndarray = None  # vertex id relaying (i, j), 0 when none
    arc_midpoint: np.ndarray = None  # relay of a DPC-tightened arc, 0 for original arcs
    scheme: str = None  # "snowball" or "floyd": how midpoints split a path
    positions: np.ndarray = None  # 1-based ordering position per vertex

    @property
    def n(self):
        return self.dist.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return float(self.dist[i - 1, j - 1])


def _to_vertex_space(a, d):
    pos = d.positions() - 1
    return a[np.ix_(pos, pos)]


def _mid_to_vertices(mid, d):
    idx = d.index_array()
    lut = np.concatenate(([0], idx + 1))
    return lut[_to_vertex_space(mid, d) + 1]


def min_paths_sssp(dg, s):
    """Distances from vertex ``s`` on a DPC graph, indexed by ``vertex - 1``."""
    if not 1 <= s <= dg.n:
        raise GraphError(f"source {s} outside 1..{dg.n}")
    lptr, lidx, uptr, uidx = dg.neighbour_lists()
    out = np.empty(dg.n)
    kernels.min_paths(dg.w, lptr, lidx, uptr, uidx, dg.ordering.position(s) - 1, out)
    return out[dg.ordering.positions() - 1]


def chleq_apsp(g, d):
    """DPC, then one min-paths pass per source."""
    dg = dpc(g, d)
    lptr, lidx, uptr, uidx = dg.neighbour_lists()
    D = np.empty((g.n, g.n))
    count = kernels.chleq(dg.w, lptr, lidx, uptr, uidx, D)
    return DistanceMatrix(_to_vertex_space(D, d), dg.updates + int(count))


def snowball(g, d, track_midpoints=False):
    """DPC, then grow a clique of final distances over positions 1..n."""
    dg = dpc(g, d, track_midpoints=track_midpoints)
    lptr, lidx, _, _ = dg.neighbour_lists()
    D = np.empty((g.n, g.n))
    mid = np.full((g.n, g.n), -1, dtype=np.int64) if track_midpoints else np.empty((0, 0), dtype=np.int64)
    count = kernels.snowball(dg.w, lptr, lidx, D, mid, track_midpoints)
    out = DistanceMatrix(_to_vertex_space(D, d), dg.updates + int(count))
    if track_midpoints:
        out.midpoint = _mid_to_vertices(mid, d)
        out.arc_midpoint = _mid_to_vertices(dg.mid, d)
        out.scheme = "snowball"
        out.positions = d.positions()
    return out


def snowball_update_count(dg):
    """Closed form of Snowball's own updates: 2 * sum_k |lower(k)| * (k - 1)."""
    lptr = dg.neighbour_lists()[0]
    low = np.diff(lptr)
    return 2 * int((low * np.arange(dg.n)).sum())


def _clique_tree_positions(pg):
    tree = build_clique_tree(pg.graph, pg.ordering)
    pos = pg.ordering.positions() - 1
    nodes = [np.sort(pos[np.fromiter(vs, dtype=np.intp) - 1]) for vs in tree.nodes]
    return tree, nodes


def _init_from_arcs(pg):
    D = np.where(pg.adj, pg.w, INF)
    np.fill_diagonal(D, 0.0)
    return D


def _process(D, nodes, c, parent, visited):
    if parent is None:
        visited[nodes[c]] = True
        return 0
    in_c = np.zeros(len(visited), dtype=bool)
    in_c[nodes[c]] = True
    in_p = np.zeros(len(visited), dtype=bool)
    in_p[nodes[parent]] = True
    new = np.flatnonzero(in_c & ~in_p)
    sep = np.flatnonzero(in_c & in_p)
    other = np.flatnonzero(visited & ~in_c)
    count = kernels.relax_separator(D, new, sep, other)
    visited[nodes[c]] = True
    return int(count)


def snowball_separators(g, d, recursive=False):
    """P3C, then relax through separators while walking each clique tree.

    The walk is iterative: children wait in a max-priority queue keyed by
    separator size (ties to the lower node id), so large separators are
    crossed while the visited set is still small. ``recursive=True`` runs
    the plain depth-first formulation instead, for differential testing.
    """
    pg = p3c(g, d)
    D = _init_from_arcs(pg)
    tree, nodes = _clique_tree_positions(pg)
    kids = tree.children()
    count = 0
    for root in tree.roots:
        visited = np.zeros(g.n, dtype=bool)
        if recursive:
            count += _walk_recursive(D, nodes, kids, root, None, visited)
            continue
        queue = [(0, root, -1)]
        while queue:
            _, c, p = heapq.heappop(queue)
            count += _process(D, nodes, c, None if p < 0 else p, visited)
            for x in kids[c]:
                size = len(tree.nodes[c] & tree.nodes[x])
                heapq.heappush(queue, (-size, x, c))
    return DistanceMatrix(_to_vertex_space(D, d), pg.updates + count)


def _walk_recursive(D, nodes, kids, c, parent, visited):
    count = _process(D, nodes, c, parent, visited)
    for x in kids[c]:
        count += _walk_recursive(D, nodes, kids, x, c, visited)
    return count


def floyd_warshall(g, track_midpoints=False):
    D = g.w.copy()
    mid = np.full((g.n, g.n), -1, dtype=np.int64) if track_midpoints else np.empty((0, 0), dtype=np.int64)
    count = kernels.floyd_warshall(D, mid, track_midpoints)
    if np.any(np.diagonal(D) < 0):
        raise NegativeCycleError("negative diagonal after Floyd-Warshall")
    out = DistanceMatrix(D, int(count))
    if track_midpoints:
        out.midpoint = mid + 1
        out.scheme = "floyd"
    return out


def johnson_reweight(g):
    """Potentials h and reweighted arcs (tails, heads, w') with w' >= 0.

    Raises NegativeCycleError when the virtual-source Bellman-Ford does.
    """
    tails, heads, wts = g.arc_arrays()
    ok, h = kernels.johnson_potentials(g.n, tails.astype(np.int64), heads.astype(np.int64), wts)
    if not ok:
        raise NegativeCycleError("Bellman-Ford found a negative cycle")
    rw = wts + h[tails] - h[heads]
    return h, tails, heads, rw


def johnson(g, heap=HeapKind.BINARY):
    """Reweight with Bellman-Ford potentials, then n runs of Dijkstra."""
    kind = HeapKind.parse(heap)
    h, tails, heads, rw = johnson_reweight(g)
    # float round-off may leave -1e-16 where the exact value is 0
    rw = np.maximum(rw, 0.0)
    ptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(tails, minlength=g.n), out=ptr[1:])
    D = np.empty((g.n, g.n))
    count = kernels.johnson_dijkstra(g.n, ptr, heads.astype(np.int64), rw, h, kind.code, D)
    return DistanceMatrix(D, int(count))


def reconstruct_path(dm, i, j):
    """Vertex sequence of a shortest i -> j path in the original graph.

    Needs a matrix built with midpoint tracking. Arcs tightened by DPC are
    expanded through their relay vertices until only original arcs remain.
    """
    if dm.midpoint is None:
        raise ValueError("distance matrix was built without midpoints")
    n = dm.n
    if dm.dist[i - 1, j - 1] == INF:
        raise NoPathError(f"no path from {i} to {j}")
    path = [i]
    stack = [("path", i, j)]
    hops = 0
    while stack:
        kind, a, b = stack.pop()
        hops += 1
        if hops > n * n + 1:
            raise CycleGuardError(f"path expansion for ({i}, {j}) exceeded {n * n} hops")
        if kind == "arc":
            m = 0 if dm.arc_midpoint is None else int(dm.arc_midpoint[a - 1, b - 1])
            if m == 0:
                path.append(b)
            else:
                stack.append(("arc", m, b))
                stack.append(("arc", a, m))
            continue
        if a == b:
            continue
        m = int(dm.midpoint[a - 1, b - 1])
        if m == 0:
            stack.append(("arc", a, b))
        elif dm.scheme == "floyd":
            stack.append(("path", m, b))
            stack.append(("path", a, m))
        elif dm.positions[b - 1] > dm.positions[a - 1]:
            stack.append(("arc", m, b))
            stack.append(("path", a, m))
        else:
            stack.append(("path", m, b))
            stack.append(("arc", a, m))
    return path


def path_weight(g, path):
    return float(sum(g.w[u - 1, v - 1] for u, v in zip(path, path[1:])))


ALGORITHMS = ("FLOYD_WARSHALL", "JOHNSON", "CHLEQ", "SNOWBALL", "SNOWBALL_SEP")
ORDERED = ("CHLEQ", "SNOWBALL", "SNOWBALL_SEP")


def solve(g, algorithm, d=None, heap=HeapKind.BINARY):
    """Dispatch by algorithm name; ordering-based solvers need ``d``."""
    name = str(algorithm).upper()
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {list(ALGORITHMS)}")
    if name in ORDERED and d is None:
        raise ValueError(f"{name} needs a vertex ordering")
    if name == "FLOYD_WARSHALL":
        return floyd_warshall(g)
    if name == "JOHNSON":
        return johnson(g, heap)
    if name == "CHLEQ":
        return chleq_apsp(g, d)
    if name == "SNOWBALL":
        return snowball(g, d)
    return snowball_separators(g, d)

