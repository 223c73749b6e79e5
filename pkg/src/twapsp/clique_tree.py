"""Clique trees of chordal graphs.

A clique tree has one node per maximal clique. Two nodes are joined when
their intersection (the separator) separates the vertices on either side
of the edge. Disconnected graphs give a forest with one rooted tree per
component.
"""

from collections import Counter, deque
from dataclasses import dataclass

import numpy as np

from .graph import GraphError, connected_components


class NotChordalError(GraphError):
    """The ordering is not a perfect elimination ordering of the graph."""


@dataclass(frozen=True)
class CliqueTree:
    nodes: tuple  # frozensets of vertex ids
    edges: tuple  # (a, b, separator) with a < b
    roots: tuple  # one node per component; roots[0] holds the top-position vertex

    @property
    def root(self):
        return self.roots[0] if self.roots else None

    def neighbours(self):
        nb = [[] for _ in self.nodes]
        for a, b, sep in self.edges:
            nb[a].append((b, sep))
            nb[b].append((a, sep))
        return nb

    def parents(self):
        """Parent node and separator of every node under the chosen roots."""
        parent = [None] * len(self.nodes)
        sep_to_parent = [frozenset()] * len(self.nodes)
        nb = self.neighbours()
        seen = np.zeros(len(self.nodes), dtype=bool)
        for r in self.roots:
            seen[r] = True
            queue = deque([r])
            while queue:
                c = queue.popleft()
                for x, sep in nb[c]:
                    if not seen[x]:
                        seen[x] = True
                        parent[x] = c
                        sep_to_parent[x] = sep
                        queue.append(x)
        return parent, sep_to_parent

    def children(self):
        parent, _ = self.parents()
        kids = [[] for _ in self.nodes]
        for c, p in enumerate(parent):
            if p is not None:
                kids[p].append(c)
        return kids


def build_clique_tree(g, d):
    """Clique tree of chordal ``g`` from a perfect elimination ordering ``d``.

    Positions are visited bottom up. Vertex k either extends the clique that
    holds its highest lower neighbour p (when its lower neighbourhood is
    exactly that clique) or opens a new clique {k} + lower(k) attached to it.
    Raises NotChordalError when some lower neighbourhood is not a clique.
    """
    n = g.n
    idx = d.index_array()
    adj = g.adj[np.ix_(idx, idx)]
    lower = [np.flatnonzero(adj[k, :k]) for k in range(n)]
    lower_sets = [frozenset(lo.tolist()) for lo in lower]
    node_of = np.full(n, -1, dtype=np.int64)
    members = []
    edges = []
    first_roots = []
    for k in range(n):
        lo = lower[k]
        if len(lo) == 0:
            node_of[k] = len(members)
            first_roots.append(len(members))
            members.append([k])
            continue
        p = int(lo[-1])
        rest = lower_sets[k] - {p}
        if not rest <= lower_sets[p]:
            u, v = _missing_chord(adj, lo, idx)
            raise NotChordalError(f"ordering is not perfect: vertices {u} and {v} lack a chord")
        c = node_of[p]
        if len(lo) == len(lower[p]) + 1 and len(members[c]) == len(lo):
            members[c].append(k)
            node_of[k] = c
        else:
            node_of[k] = len(members)
            members.append([k] + lo.tolist())
            edges.append((int(c), len(members) - 1))
    nodes = tuple(frozenset(int(idx[p]) + 1 for p in m) for m in members)
    tree_edges = tuple(
        (min(a, b), max(a, b), nodes[a] & nodes[b]) for a, b in edges
    )
    # reroot each component at the node holding its top-position vertex
    comp_of_node = {}
    for r in first_roots:
        comp_of_node[r] = r
    for a, b in edges:  # parents always precede children
        comp_of_node[b] = comp_of_node[a]
    top = {}
    for k in range(n):
        top[comp_of_node[int(node_of[k])]] = int(node_of[k])
    roots = tuple(sorted(top.values(), key=lambda c: -max(members[c])))
    return CliqueTree(nodes, tree_edges, roots)


def _missing_chord(adj, lo, idx):
    for a in range(len(lo)):
        for b in range(a + 1, len(lo)):
            if not adj[lo[a], lo[b]]:
                return int(idx[lo[a]]) + 1, int(idx[lo[b]]) + 1
    return None, None


@dataclass(frozen=True)
class Violation:
    prop: str
    message: str

    def __str__(self):
        return f"{self.prop}: {self.message}"


def _is_clique(g, vs):
    vs = np.asarray(sorted(vs), dtype=np.intp) - 1
    sub = g.adj[np.ix_(vs, vs)]
    return bool(np.all(sub | np.eye(len(vs), dtype=bool)))


def _components_without(g, removed):
    """Component label per vertex of g minus ``removed`` (-1 for removed)."""
    label = np.full(g.n, -1, dtype=np.int64)
    gone = np.zeros(g.n, dtype=bool)
    gone[[v - 1 for v in removed]] = True
    nxt = 0
    for s in range(g.n):
        if gone[s] or label[s] >= 0:
            continue
        label[s] = nxt
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(g.adj[u] & ~gone):
                if label[v] < 0:
                    label[v] = nxt
                    queue.append(v)
        nxt += 1
    return label


def _side_vertices(tree, a, b):
    """Vertices in the subtree on a's side of the edge (a, b)."""
    nb = tree.neighbours()
    seen = {a, b}
    queue = deque([a])
    out = set(tree.nodes[a])
    while queue:
        c = queue.popleft()
        for x, _ in nb[c]:
            if x not in seen:
                seen.add(x)
                out |= tree.nodes[x]
                queue.append(x)
    return out


def check_separators(tree, g):
    """Removing each separator splits the two sides of its tree edge.

    Also checks minimality: G minus the separator has at least two full
    components (every separator vertex has a neighbour in each of them).
    Returns None or the first Violation.
    """
    for a, b, sep in tree.edges:
        label = _components_without(g, sep)
        left = {int(label[v - 1]) for v in _side_vertices(tree, a, b) - sep}
        right = {int(label[v - 1]) for v in _side_vertices(tree, b, a) - sep}
        if left & right:
            return Violation("Property 4", f"separator {sorted(sep)} of edge ({a}, {b}) does not disconnect its sides")
        full = 0
        sep_idx = np.asarray(sorted(sep), dtype=np.intp) - 1
        for comp in set(label[label >= 0].tolist()):
            inside = label == comp
            if np.all(g.adj[np.ix_(sep_idx, np.flatnonzero(inside))].any(axis=1)):
                full += 1
        if full < 2:
            return Violation("Property 4", f"separator {sorted(sep)} of edge ({a}, {b}) is not minimal")
    return None


def validate_clique_tree(tree, g):
    """Check the structural clique-tree properties; None when all hold.

    Checks, in order: forest shape and separator labels, maximal cliques
    (Property 2), coherence (Property 3), minimal separators (Property 4)
    and vertex coverage (Property 5). The first failure is returned.
    """
    k = len(tree.nodes)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, sep in tree.edges:
        if sep != tree.nodes[a] & tree.nodes[b]:
            return Violation("tree", f"edge ({a}, {b}) separator is not the node intersection")
        ra, rb = find(a), find(b)
        if ra == rb:
            return Violation("tree", f"edge ({a}, {b}) closes a cycle")
        parent[ra] = rb
    n_trees = len({find(c) for c in range(k)})
    if n_trees != len(connected_components(g)):
        return Violation("tree", f"{n_trees} trees for {len(connected_components(g))} graph components")

    for c, vs in enumerate(tree.nodes):
        if not vs:
            return Violation("Property 2", f"node {c} is empty")
        if not _is_clique(g, vs):
            return Violation("Property 2", f"node {c} is not a clique")
        idx = np.asarray(sorted(vs), dtype=np.intp) - 1
        common = g.adj[idx].all(axis=0)
        common[idx] = False
        if common.any():
            return Violation("Property 2", f"node {c} is not a maximal clique (extends by {int(np.argmax(common)) + 1})")

    holders = {}
    for c, vs in enumerate(tree.nodes):
        for v in vs:
            holders.setdefault(v, []).append(c)
    nb = tree.neighbours()
    for v, cs in holders.items():
        want = set(cs)
        seen = {cs[0]}
        queue = deque([cs[0]])
        while queue:
            c = queue.popleft()
            for x, _ in nb[c]:
                if x in want and x not in seen:
                    seen.add(x)
                    queue.append(x)
        if seen != want:
            return Violation("Property 3", f"nodes holding vertex {v} are not connected")

    bad = check_separators(tree, g)
    if bad is not None:
        return bad

    missing = set(range(1, g.n + 1)) - set(holders)
    if missing:
        return Violation("Property 5", f"vertex {min(missing)} is in no node")
    return None


@dataclass(frozen=True)
class SeparatorStats:
    s_d: int
    median: float
    histogram: dict  # separator size -> number of tree edges


def separator_stats(tree):
    sizes = [len(sep) for _, _, sep in tree.edges]
    if not sizes:
        return SeparatorStats(0, 0.0, {})
    return SeparatorStats(max(sizes), float(np.median(sizes)), dict(sorted(Counter(sizes).items())))
