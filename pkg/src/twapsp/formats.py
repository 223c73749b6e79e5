"""Text formats: DIMACS ``sp`` files and the native edge-list format.

Native format::

    # comment lines
    n m
    u v w_uv w_vu        (m lines, one per undirected edge, u < v)

where either weight may be the token ``inf``.
"""

import numpy as np

from .graph import INF, Graph, GraphError, from_edges


def _fmt(x):
    if x == INF:
        return "inf"
    if float(x).is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(float(x))


def _parse_weight(tok):
    if tok in ("inf", "+inf", "Infinity"):
        return INF
    try:
        val = float(tok)
    except ValueError:
        raise GraphError(f"bad weight token {tok!r}") from None
    if val != val or val == -INF:
        raise GraphError(f"bad weight token {tok!r}")
    return val


def read_dimacs(text):
    """Parse a DIMACS shortest-path (``p sp``) file into a Graph.

    Each ``a u v w`` line is one directed arc with integer weight. Parallel
    arcs keep the smallest weight.
    """
    n = m = None
    arcs = {}
    count = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphError(f"line {lineno}: second problem line")
            if len(parts) != 4 or parts[1] != "sp":
                raise GraphError(f"line {lineno}: malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed header {line!r}") from None
        elif parts[0] == "a":
            if n is None:
                raise GraphError(f"line {lineno}: arc before problem line")
            if len(parts) != 4:
                raise GraphError(f"line {lineno}: malformed arc {line!r}")
            try:
                u, v, wt = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphError(f"line {lineno}: malformed arc {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"line {lineno}: vertex out of range in {line!r}")
            if u == v:
                raise GraphError(f"line {lineno}: self-loop in {line!r}")
            count += 1
            if (u, v) not in arcs or wt < arcs[(u, v)]:
                arcs[(u, v)] = wt
        else:
            raise GraphError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise GraphError("missing 'p sp' header")
    if count != m:
        raise GraphError(f"header announces {m} arcs, found {count}")
    return from_edges(n, [(u, v, wt) for (u, v), wt in arcs.items()])


def write_dimacs(g, comment=None):
    arcs = g.arcs()
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p sp {g.n} {len(arcs)}")
    for u, v, wt in arcs:
        if not wt.is_integer():
            raise GraphError(f"DIMACS needs integer weights, arc ({u}, {v}) has {wt}")
        lines.append(f"a {u} {v} {int(wt)}")
    return "\n".join(lines) + "\n"


def read_native(text):
    """Parse the native format; returns (graph, list of comment lines)."""
    comments = []
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected header 'n m'")
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise GraphError(f"line {lineno}: expected header 'n m'") from None
            continue
        if len(parts) != 4:
            raise GraphError(f"line {lineno}: expected 'u v w_uv w_vu'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: bad vertex id") from None
        rows.append((lineno, u, v, _parse_weight(parts[2]), _parse_weight(parts[3])))
    if header is None:
        raise GraphError("missing header")
    n, m = header
    if len(rows) != m:
        raise GraphError(f"header announces {m} edges, found {len(rows)}")
    adj = np.zeros((n, n), dtype=bool)
    w = np.full((n, n), INF)
    for lineno, u, v, wuv, wvu in rows:
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise GraphError(f"line {lineno}: bad edge ({u}, {v})")
        if adj[u - 1, v - 1]:
            raise GraphError(f"line {lineno}: duplicate edge ({u}, {v})")
        adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
        w[u - 1, v - 1] = wuv
        w[v - 1, u - 1] = wvu
    return Graph(adj, w), comments


def write_native(g, comments=()):
    lines = [f"# {c}" for c in comments]
    edges = g.edges()
    lines.append(f"{g.n} {len(edges)}")
    for u, v in edges:
        lines.append(f"{u} {v} {_fmt(g.w[u - 1, v - 1])} {_fmt(g.w[v - 1, u - 1])}")
    return "\n".join(lines) + "\n"


def read_graph_file(path):
    """Load a graph from disk, guessing the format from its content."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#") or s == "c" or s.startswith("c "):
            continue
        if s.startswith("p "):
            return read_dimacs(text), []
        break
    return read_native(text)
