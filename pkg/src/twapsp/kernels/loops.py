"""Explicit-loop kernels, compiled by numba when it is available.

All kernels work in position space: index p is the vertex at position
p + 1 of the ordering. ``w`` is the n x n directed weight matrix (inf where
no arc), ``adj`` the symmetric presence matrix. Lower and upper neighbour
lists are CSR pairs (``ptr``, ``idx``) with ascending indices. Each kernel
returns the number of min-update statements it executed.
"""

import numpy as np

from .._backend import kernel
from ..heaps import bh_decrease, bh_pop, bh_push, fh_decrease, fh_pop, fh_push

INF = np.inf


@kernel
def dpc(w, adj, mid, track):
    """Directed path consistency in place; returns (consistent, updates)."""
    n = w.shape[0]
    lower = np.empty(n, dtype=np.int64)
    count = 0
    for k in range(n - 1, -1, -1):
        cnt = 0
        for j in range(k):
            if adj[k, j]:
                # arcs touching k are final from here on
                if w[j, k] + w[k, j] < 0.0:
                    return False, count
                lower[cnt] = j
                cnt += 1
        for a in range(cnt):
            i = lower[a]
            wik = w[i, k]
            wki = w[k, i]
            for b in range(a + 1, cnt):
                j = lower[b]
                c = wik + w[k, j]
                if c < w[i, j]:
                    w[i, j] = c
                    if track:
                        mid[i, j] = k
                c = w[j, k] + wki
                if c < w[j, i]:
                    w[j, i] = c
                    if track:
                        mid[j, i] = k
                count += 2
                adj[i, j] = True
                adj[j, i] = True
                if w[i, j] + w[j, i] < 0.0:
                    return False, count
    return True, count


@kernel
def split_neighbours(adj):
    """CSR lower and upper neighbour lists of a presence matrix."""
    n = adj.shape[0]
    lptr = np.zeros(n + 1, dtype=np.int64)
    uptr = np.zeros(n + 1, dtype=np.int64)
    for k in range(n):
        lo = 0
        hi = 0
        for j in range(n):
            if adj[k, j]:
                if j < k:
                    lo += 1
                else:
                    hi += 1
        lptr[k + 1] = lptr[k] + lo
        uptr[k + 1] = uptr[k] + hi
    lidx = np.empty(lptr[n], dtype=np.int64)
    uidx = np.empty(uptr[n], dtype=np.int64)
    for k in range(n):
        a = lptr[k]
        b = uptr[k]
        for j in range(n):
            if adj[k, j]:
                if j < k:
                    lidx[a] = j
                    a += 1
                else:
                    uidx[b] = j
                    b += 1
    return lptr, lidx, uptr, uidx


@kernel
def p3c_sweep(w, lptr, lidx):
    """Forward sweep turning a DPC graph into a PPC graph, in place."""
    n = w.shape[0]
    count = 0
    for k in range(n):
        for a in range(lptr[k], lptr[k + 1]):
            i = lidx[a]
            for b in range(lptr[k], lptr[k + 1]):
                j = lidx[b]
                if i == j:
                    continue
                c = w[i, j] + w[j, k]
                if c < w[i, k]:
                    w[i, k] = c
                c = w[k, i] + w[i, j]
                if c < w[k, j]:
                    w[k, j] = c
                count += 2
    return count


@kernel
def min_paths(w, lptr, lidx, uptr, uidx, s, out):
    """Single-source distances from position ``s`` on a DPC graph."""
    n = w.shape[0]
    for v in range(n):
        out[v] = INF
    out[s] = 0.0
    count = 0
    for k in range(s, -1, -1):
        dk = out[k]
        for t in range(lptr[k], lptr[k + 1]):
            j = lidx[t]
            c = dk + w[k, j]
            if c < out[j]:
                out[j] = c
            count += 1
    for k in range(n):
        dk = out[k]
        for t in range(uptr[k], uptr[k + 1]):
            j = uidx[t]
            c = dk + w[k, j]
            if c < out[j]:
                out[j] = c
            count += 1
    return count


@kernel
def chleq(w, lptr, lidx, uptr, uidx, D):
    count = 0
    for s in range(w.shape[0]):
        count += min_paths(w, lptr, lidx, uptr, uidx, s, D[s])
    return count


@kernel
def snowball(w, lptr, lidx, D, mid, track):
    """Grow the clique {0..k} of final distances one vertex at a time."""
    n = w.shape[0]
    for i in range(n):
        for j in range(n):
            D[i, j] = INF
        D[i, i] = 0.0
    count = 0
    for k in range(n):
        for t in range(lptr[k], lptr[k + 1]):
            j = lidx[t]
            wjk = w[j, k]
            wkj = w[k, j]
            for i in range(k):
                c = D[i, j] + wjk
                if c < D[i, k]:
                    D[i, k] = c
                    if track:
                        mid[i, k] = j
                c = wkj + D[j, i]
                if c < D[k, i]:
                    D[k, i] = c
                    if track:
                        mid[k, i] = j
            count += 2 * k
    return count


@kernel
def relax_separator(D, new, sep, other):
    """Route every (new, other) pair through the separator, both directions."""
    for a in range(len(new)):
        i = new[a]
        for b in range(len(sep)):
            j = sep[b]
            dij = D[i, j]
            dji = D[j, i]
            for c in range(len(other)):
                k = other[c]
                x = dij + D[j, k]
                if x < D[i, k]:
                    D[i, k] = x
                x = D[k, j] + dji
                if x < D[k, i]:
                    D[k, i] = x
    return 2 * len(new) * len(sep) * len(other)


@kernel
def floyd_warshall(D, mid, track):
    n = D.shape[0]
    for k in range(n):
        for i in range(n):
            dik = D[i, k]
            for j in range(n):
                c = dik + D[k, j]
                if c < D[i, j]:
                    D[i, j] = c
                    if track:
                        mid[i, j] = k
    return n * n * n


@kernel
def johnson_potentials(n, tails, heads, wts):
    """Bellman-Ford from a virtual source joined to every vertex by 0-arcs."""
    h = np.zeros(n)
    for _ in range(n + 1):
        changed = False
        for e in range(len(tails)):
            c = h[tails[e]] + wts[e]
            if c < h[heads[e]]:
                h[heads[e]] = c
                changed = True
        if not changed:
            return True, h
    return False, h


@kernel
def johnson_dijkstra(n, ptr, heads, rw, h, kind, D):
    """n Dijkstra runs on reweighted arcs; fills D with original-scale distances."""
    keys = np.zeros(n)
    slots = np.zeros(n, dtype=np.int64)
    where = np.full(n, -1, dtype=np.int64)
    bmeta = np.zeros(1, dtype=np.int64)
    links = np.full((6, n), -1, dtype=np.int64)
    fmeta = np.array([-1, 0], dtype=np.int64)
    aux = np.full(128, -1, dtype=np.int64)
    buf = np.zeros(max(n, 1), dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    dist = np.empty(n)
    count = 0
    for s in range(n):
        for v in range(n):
            dist[v] = INF
            done[v] = False
        dist[s] = 0.0
        size = 1
        if kind == 0:
            bh_push(slots, where, keys, bmeta, s, 0.0)
        else:
            fh_push(links, keys, fmeta, s, 0.0)
        while size > 0:
            if kind == 0:
                u = bh_pop(slots, where, keys, bmeta)
            else:
                u = fh_pop(links, keys, fmeta, aux, buf)
            size -= 1
            done[u] = True
            du = dist[u]
            for e in range(ptr[u], ptr[u + 1]):
                v = heads[e]
                if done[v]:
                    continue
                count += 1
                c = du + rw[e]
                if c < dist[v]:
                    if dist[v] == INF:
                        if kind == 0:
                            bh_push(slots, where, keys, bmeta, v, c)
                        else:
                            fh_push(links, keys, fmeta, v, c)
                        size += 1
                    elif kind == 0:
                        bh_decrease(slots, where, keys, v, c)
                    else:
                        fh_decrease(links, keys, fmeta, v, c)
                    dist[v] = c
        for v in range(n):
            if dist[v] < INF:
                D[s, v] = dist[v] - h[s] + h[v]
            else:
                D[s, v] = INF
    return count
