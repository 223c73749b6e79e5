"""Vectorized numpy versions of the kernels in ``loops``.

Same signatures, same results and same update counts on consistent
inputs. Each outer iteration of an algorithm becomes one block operation;
this works because, within one outer iteration, the entries being read are
never the ones being written.
"""

import numpy as np

from .loops import johnson_dijkstra  # heap-driven, no useful vector form

INF = np.inf


def _offdiag(m):
    return m & ~np.eye(m.shape[0], dtype=bool)


def dpc(w, adj, mid, track):
    n = w.shape[0]
    count = 0
    for k in range(n - 1, -1, -1):
        lo = np.flatnonzero(adj[k, :k])
        if len(lo) == 0:
            continue
        if np.any(w[lo, k] + w[k, lo] < 0.0):
            return False, count
        if len(lo) < 2:
            continue
        blk = np.ix_(lo, lo)
        cand = w[lo, k][:, None] + w[k, lo][None, :]
        better = _offdiag(cand < w[blk])
        sub = w[blk]
        sub[better] = cand[better]
        w[blk] = sub
        if track:
            msub = mid[blk]
            msub[better] = k
            mid[blk] = msub
        adj[blk] = True
        adj[lo, lo] = False
        count += len(lo) * (len(lo) - 1)
        if np.any(_offdiag(sub + sub.T < 0.0)):
            return False, count
    return True, count


def split_neighbours(adj):
    n = adj.shape[0]
    low = np.tril(adj, -1)
    up = np.triu(adj, 1)
    lptr = np.zeros(n + 1, dtype=np.int64)
    uptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(low.sum(axis=1), out=lptr[1:])
    np.cumsum(up.sum(axis=1), out=uptr[1:])
    lidx = np.nonzero(low)[1].astype(np.int64)
    uidx = np.nonzero(up)[1].astype(np.int64)
    return lptr, lidx, uptr, uidx


def p3c_sweep(w, lptr, lidx):
    n = w.shape[0]
    count = 0
    for k in range(n):
        lo = lidx[lptr[k]:lptr[k + 1]]
        if len(lo) < 2:
            continue
        sub = w[np.ix_(lo, lo)]
        w[lo, k] = np.minimum(w[lo, k], (sub + w[lo, k][None, :]).min(axis=1))
        w[k, lo] = np.minimum(w[k, lo], (w[k, lo][:, None] + sub).min(axis=0))
        count += 2 * len(lo) * (len(lo) - 1)
    return count


def min_paths(w, lptr, lidx, uptr, uidx, s, out):
    n = w.shape[0]
    out[:] = INF
    out[s] = 0.0
    count = 0
    for k in range(s, -1, -1):
        lo = lidx[lptr[k]:lptr[k + 1]]
        out[lo] = np.minimum(out[lo], out[k] + w[k, lo])
        count += len(lo)
    for k in range(n):
        hi = uidx[uptr[k]:uptr[k + 1]]
        out[hi] = np.minimum(out[hi], out[k] + w[k, hi])
        count += len(hi)
    return count


def chleq(w, lptr, lidx, uptr, uidx, D):
    """All sources at once; source s joins the downward sweep when k reaches s."""
    n = w.shape[0]
    D[:] = INF
    np.fill_diagonal(D, 0.0)
    lcount = np.diff(lptr)
    for k in range(n - 1, -1, -1):
        lo = lidx[lptr[k]:lptr[k + 1]]
        if len(lo):
            rows = D[k:]
            rows[:, lo] = np.minimum(rows[:, lo], rows[:, k][:, None] + w[k, lo][None, :])
    for k in range(n):
        hi = uidx[uptr[k]:uptr[k + 1]]
        if len(hi):
            D[:, hi] = np.minimum(D[:, hi], D[:, k][:, None] + w[k, hi][None, :])
    down = int(np.cumsum(lcount).sum())
    return down + n * int(uptr[n])


def snowball(w, lptr, lidx, D, mid, track):
    n = w.shape[0]
    D[:] = INF
    np.fill_diagonal(D, 0.0)
    count = 0
    for k in range(1, n):
        lo = lidx[lptr[k]:lptr[k + 1]]
        if len(lo) == 0:
            continue
        into = D[:k, lo] + w[lo, k][None, :]
        a = into.argmin(axis=1)
        best = into[np.arange(k), a]
        better = best < D[:k, k]
        D[:k, k] = np.where(better, best, D[:k, k])
        out = w[k, lo][:, None] + D[lo, :k]
        b = out.argmin(axis=0)
        best2 = out[b, np.arange(k)]
        better2 = best2 < D[k, :k]
        D[k, :k] = np.where(better2, best2, D[k, :k])
        if track:
            mid[:k, k] = np.where(better, lo[a], mid[:k, k])
            mid[k, :k] = np.where(better2, lo[b], mid[k, :k])
        count += 2 * k * len(lo)
    return count


def relax_separator(D, new, sep, other):
    if len(new) and len(other):
        fwd = np.ix_(new, other)
        back = np.ix_(other, new)
        for j in sep:
            D[fwd] = np.minimum(D[fwd], D[new, j][:, None] + D[j, other][None, :])
            D[back] = np.minimum(D[back], D[other, j][:, None] + D[j, new][None, :])
    return 2 * len(new) * len(sep) * len(other)


def floyd_warshall(D, mid, track):
    n = D.shape[0]
    for k in range(n):
        cand = D[:, k][:, None] + D[k, :][None, :]
        better = cand < D
        D[better] = cand[better]
        if track:
            mid[better] = k
    return n * n * n


def johnson_potentials(n, tails, heads, wts):
    h = np.zeros(n)
    for _ in range(n + 1):
        cand = np.full(n, INF)
        np.minimum.at(cand, heads, h[tails] + wts)
        nxt = np.minimum(h, cand)
        if np.array_equal(nxt, h):
            return True, h
        h = nxt
    return False, h


__all__ = [
    "chleq", "dpc", "floyd_warshall", "johnson_dijkstra", "johnson_potentials",
    "min_paths", "p3c_sweep", "relax_separator", "snowball", "split_neighbours",
]
