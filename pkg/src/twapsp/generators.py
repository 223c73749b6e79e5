"""Seeded benchmark families.

Every generator builds an undirected skeleton first and then calls
``assign_weights``. That function draws a vertex potential h and gives
each arc u -> v the weight h(v) - h(u) + slack with slack >= 0, so every
cycle weighs the sum of its slacks and no negative cycle can exist even
though single arcs are often negative.
"""

from dataclasses import dataclass

import numpy as np

from .formats import read_graph_file
from .graph import INF, Graph, GraphError, bfs_subgraph


def _skeleton(n, pairs, both=True):
    """Presence plus 0/inf placeholder weights marking which directions exist."""
    adj = np.zeros((n, n), dtype=bool)
    w = np.full((n, n), INF)
    for u, v in pairs:
        adj[u, v] = adj[v, u] = True
        w[u, v] = 0.0
        if both:
            w[v, u] = 0.0
    return adj, w


def assign_weights(structure, rng, slack_hi=20, potential_hi=100):
    """Weights h(v) - h(u) + slack on every finite direction of ``structure``.

    h is uniform on the integers 0..potential_hi and each slack uniform on
    0..slack_hi, so all weights are integers.
    """
    rng = np.random.default_rng(rng)
    n = structure.n
    h = rng.integers(0, potential_hi + 1, size=n)
    slack = rng.integers(0, slack_hi + 1, size=(n, n))
    return potential_weights(structure, h, slack)


def potential_weights(structure, h, slack):
    """w(u->v) = h(v) - h(u) + slack(u, v) on every finite direction."""
    h = np.asarray(h, dtype=np.float64)
    slack = np.asarray(slack, dtype=np.float64)
    if np.any(slack < 0):
        raise GraphError("slacks must be non-negative")
    live = structure.adj & np.isfinite(structure.w)
    w = np.where(live, h[None, :] - h[:, None] + slack, INF)
    return Graph(structure.adj, w)


def _finish(adj, w, rng, relabel=True):
    if relabel:
        perm = rng.permutation(adj.shape[0])
        adj = adj[np.ix_(perm, perm)]
        w = w[np.ix_(perm, perm)]
    return assign_weights(Graph(adj, w), rng)


def gen_chordal(n, width, seed=None):
    """Random k-tree with k = ``width``, vertex labels shuffled.

    Starts from a (k+1)-clique; each new vertex joins a k-clique drawn
    uniformly from all k-cliques created so far.
    """
    k = int(width)
    if not 1 <= k < n:
        raise GraphError(f"need 1 <= width < n, got width={width}, n={n}")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=bool)
    adj[: k + 1, : k + 1] = True
    np.fill_diagonal(adj, False)
    base = np.arange(k + 1)
    attach = np.empty((n, k), dtype=np.int64)  # clique each later vertex joined
    for v in range(k + 1, n):
        r = int(rng.integers(0, (k + 1) + k * (v - k - 1)))
        if r < k + 1:
            clique = np.delete(base, r)
        else:
            r -= k + 1
            u, x = k + 1 + r // k, r % k
            clique = np.append(np.delete(attach[u], x), u)
        attach[v] = clique
        adj[v, clique] = adj[clique, v] = True
    return _finish(adj, np.where(adj, 0.0, INF), rng)


def gen_chordal_bounded_sep(n, width, sep, seed=None):
    """Chordal graph grown as a clique tree with fixed-size separators.

    Cliques have ``width + 1`` vertices and each new clique shares exactly
    ``sep`` vertices with a random earlier one. When fewer new vertices are
    left than a full clique needs, the last clique is smaller.
    """
    if not 1 <= sep <= width:
        raise GraphError(f"need 1 <= sep <= width, got sep={sep}, width={width}")
    if n < width + 1:
        raise GraphError(f"n={n} cannot hold one clique of {width + 1} vertices")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=bool)
    cliques = [np.arange(width + 1)]
    nxt = width + 1
    while nxt < n:
        parent = cliques[int(rng.integers(0, len(cliques)))]
        shared = rng.choice(parent, size=sep, replace=False)
        fresh = np.arange(nxt, min(nxt + width + 1 - sep, n))
        nxt += len(fresh)
        cliques.append(np.concatenate((shared, fresh)))
    for c in cliques:
        adj[np.ix_(c, c)] = True
    np.fill_diagonal(adj, False)
    return _finish(adj, np.where(adj, 0.0, INF), rng)


def gen_scale_free(n, attachment, seed=None):
    """Preferential attachment grown from a clique of ``attachment`` vertices."""
    a = int(attachment)
    if not 1 <= a < n:
        raise GraphError(f"need 1 <= attachment < n, got {attachment}")
    rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=bool)
    adj[:a, :a] = True
    np.fill_diagonal(adj, False)
    deg = adj.sum(axis=1).astype(np.float64)
    for v in range(a, n):
        pool = deg[:v]
        if np.count_nonzero(pool) >= a:
            picks = rng.choice(v, size=a, replace=False, p=pool / pool.sum())
        else:
            picks = rng.choice(v, size=a, replace=False)
        adj[v, picks] = adj[picks, v] = True
        deg[picks] += 1
        deg[v] = a
    return _finish(adj, np.where(adj, 0.0, INF), rng, relabel=False)


def gen_diamonds(count, path_len, seed=None):
    """Circular chain of diamonds.

    Each diamond is a source joined to a sink by two disjoint paths with
    ``path_len - 1`` internal vertices each; the sink is the next diamond's
    source and the last sink is the first source. n = count * (2 * path_len - 1).
    """
    if count < 2 or path_len < 2:
        raise GraphError("diamonds need count >= 2 and path_len >= 2")
    per = 2 * path_len - 1
    n = count * per
    pairs = []
    for c in range(count):
        src = c * per
        sink = ((c + 1) % count) * per
        for side in range(2):
            inner = [src + 1 + side * (path_len - 1) + t for t in range(path_len - 1)]
            chain = [src] + inner + [sink]
            pairs.extend(zip(chain, chain[1:]))
    adj, w = _skeleton(n, pairs)
    return _finish(adj, w, np.random.default_rng(seed), relabel=False)


def gen_jobshop(jobs, machines, seed=None):
    """STN skeleton of a random job-shop instance.

    Vertex 1 is the time origin; operation (job j, step s) follows it.
    Each job visits the machines in a random order. The origin links to
    every first operation, consecutive operations of a job link both ways,
    and every pair of operations on one machine gets a single arc in a
    random direction, one disjunct chosen per pair.
    """
    if jobs < 1 or machines < 1:
        raise GraphError("jobs and machines must be positive")
    rng = np.random.default_rng(seed)
    n = jobs * machines + 1
    adj = np.zeros((n, n), dtype=bool)
    w = np.full((n, n), INF)

    def op(j, s):
        return 1 + j * machines + s

    on_machine = [[] for _ in range(machines)]
    for j in range(jobs):
        route = rng.permutation(machines)
        for s in range(machines):
            on_machine[route[s]].append(op(j, s))
        chain = [0] + [op(j, s) for s in range(machines)]
        for u, v in zip(chain, chain[1:]):
            adj[u, v] = adj[v, u] = True
            w[u, v] = w[v, u] = 0.0
    for ops in on_machine:
        for a in range(len(ops)):
            for b in range(a + 1, len(ops)):
                u, v = ops[a], ops[b]
                if rng.random() < 0.5:
                    u, v = v, u
                adj[u, v] = adj[v, u] = True
                w[u, v] = 0.0
    return _finish(adj, w, rng, relabel=False)


def gen_htn(tasks, branching, depth, landmarks, siblings, seed=None):
    """Hierarchical task network skeleton.

    Tasks form a tree filled level by level, ``branching`` children per
    task, at most ``depth`` levels below the root unless the task count
    does not fit, in which case growth continues below. Task t owns a start
    and an end vertex joined by an edge; a child's start links to its
    parent's start and its end to the parent's end. Any two siblings are
    linked (earlier end to later start) with probability ``siblings``.
    ``floor(landmarks * tasks)`` extra vertices each link to 2..4 random
    task vertices.
    """
    if tasks < 1 or branching < 1 or depth < 1:
        raise GraphError("tasks, branching and depth must be positive")
    if landmarks < 0 or not 0 <= siblings <= 1:
        raise GraphError("need landmarks >= 0 and 0 <= siblings <= 1")
    rng = np.random.default_rng(seed)
    n_land = int(np.floor(landmarks * tasks))
    n = 2 * tasks + n_land
    pairs = [(2 * t, 2 * t + 1) for t in range(tasks)]
    level = [0]
    frontier = [0]
    made = 1
    children = {}
    while made < tasks:
        grow = [t for t in frontier if level[t] < depth] or frontier
        nxt = []
        for t in grow:
            for _ in range(branching):
                if made == tasks:
                    break
                children.setdefault(t, []).append(made)
                level.append(level[t] + 1)
                nxt.append(made)
                made += 1
        frontier = nxt if nxt else frontier
    for parent, kids in children.items():
        for c in kids:
            pairs.append((2 * parent, 2 * c))
            pairs.append((2 * c + 1, 2 * parent + 1))
        for a in range(len(kids)):
            for b in range(a + 1, len(kids)):
                if rng.random() < siblings:
                    pairs.append((2 * kids[a] + 1, 2 * kids[b]))
    for k in range(n_land):
        hits = rng.choice(2 * tasks, size=min(int(rng.integers(2, 5)), 2 * tasks), replace=False)
        pairs.extend((2 * tasks + k, int(v)) for v in hits)
    adj, w = _skeleton(n, set(pairs))
    return _finish(adj, w, rng, relabel=False)


def gen_road_subgraph(path, size, seed=None):
    """BFS-extracted subgraph of a road network file (DIMACS or native)."""
    g, _ = read_graph_file(path)
    return bfs_subgraph(g, size, seed=seed)


@dataclass(frozen=True)
class Family:
    fn: object
    params: tuple  # (name, type) in call order


FAMILIES = {
    "chordal": Family(gen_chordal, (("n", int), ("width", int))),
    "chordal_sep": Family(gen_chordal_bounded_sep, (("n", int), ("width", int), ("sep", int))),
    "scale_free": Family(gen_scale_free, (("n", int), ("attachment", int))),
    "diamonds": Family(gen_diamonds, (("count", int), ("path_len", int))),
    "jobshop": Family(gen_jobshop, (("jobs", int), ("machines", int))),
    "htn": Family(
        gen_htn,
        (("tasks", int), ("branching", int), ("depth", int), ("landmarks", float), ("siblings", float)),
    ),
    "road": Family(gen_road_subgraph, (("input", str), ("size", int))),
}


def generate(family, params, seed):
    """Build one instance; ``params`` maps parameter names to values."""
    key = family.strip().lower().replace("-", "_")
    if key not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fam = FAMILIES[key]
    missing = [p for p, _ in fam.params if p not in params]
    if missing:
        raise ValueError(f"family {key} needs parameters {missing}")
    extra = set(params) - {p for p, _ in fam.params}
    if extra:
        raise ValueError(f"family {key} does not take {sorted(extra)}")
    args = [typ(params[p]) for p, typ in fam.params]
    return fam.fn(*args, seed=seed)


def manifest_line(family, params, seed):
    """Instance description written as the leading comment of a file."""
    key = family.strip().lower().replace("-", "_")
    body = " ".join(f"{p}={params[p]}" for p, _ in FAMILIES[key].params)
    return f"{key} {body} seed={seed}"
