"""Addressable min-heaps with decrease-key: binary and Fibonacci.

Both heaps store items as integers ``0 <= item < capacity`` and keep their
state in flat numpy arrays so the same functions run under numba (inside
Johnson's Dijkstra loop) and as plain Python. ``BinaryHeap`` and
``FibonacciHeap`` wrap those functions with argument checking.

The Fibonacci heap follows the cascading-cut formulation. Consolidation
snapshots the root list before linking, rather than walking a list that is
being rewired under it, and nodes that become roots are always unmarked.
"""

import math
from enum import Enum

import numpy as np

from ._backend import kernel


class HeapKind(str, Enum):
    BINARY = "BINARY"
    FIBONACCI = "FIBONACCI"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper()
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown heap kind {name!r}") from None

    @property
    def code(self):
        return 0 if self is HeapKind.BINARY else 1


# ---------------------------------------------------------------- binary heap
# state: slots[size] holds items, where[item] is the slot or -1, keys[item],
# meta[0] = size


@kernel
def _bh_sift_up(slots, where, keys, i):
    item = slots[i]
    key = keys[item]
    while i > 0:
        p = (i - 1) >> 1
        q = slots[p]
        if keys[q] <= key:
            break
        slots[i] = q
        where[q] = i
        i = p
    slots[i] = item
    where[item] = i


@kernel
def bh_push(slots, where, keys, meta, item, key):
    i = meta[0]
    meta[0] = i + 1
    keys[item] = key
    slots[i] = item
    where[item] = i
    _bh_sift_up(slots, where, keys, i)


@kernel
def bh_decrease(slots, where, keys, item, key):
    keys[item] = key
    _bh_sift_up(slots, where, keys, where[item])


@kernel
def bh_pop(slots, where, keys, meta):
    top = slots[0]
    size = meta[0] - 1
    meta[0] = size
    where[top] = -1
    if size > 0:
        last = slots[size]
        key = keys[last]
        i = 0
        while True:
            c = 2 * i + 1
            if c >= size:
                break
            if c + 1 < size and keys[slots[c + 1]] < keys[slots[c]]:
                c += 1
            if keys[slots[c]] >= key:
                break
            slots[i] = slots[c]
            where[slots[i]] = i
            i = c
        slots[i] = last
        where[last] = i
    return top


# ------------------------------------------------------------- fibonacci heap
# links rows: parent, child, left, right, degree, mark; meta[0] = min item
# (-1 when empty), meta[1] = size. aux is the degree table, buf a scratch
# array of length capacity.

PARENT, CHILD, LEFT, RIGHT, DEGREE, MARK = 0, 1, 2, 3, 4, 5
AUX_LEN = 128


@kernel
def _fh_unlink(links, x):
    left = links[2, x]
    right = links[3, x]
    links[3, left] = right
    links[2, right] = left
    links[2, x] = x
    links[3, x] = x


@kernel
def _fh_add_root(links, keys, meta, x):
    links[0, x] = -1
    links[5, x] = 0
    mn = meta[0]
    if mn == -1:
        links[2, x] = x
        links[3, x] = x
        meta[0] = x
    else:
        right = links[3, mn]
        links[3, mn] = x
        links[2, x] = mn
        links[3, x] = right
        links[2, right] = x
        if keys[x] < keys[mn]:
            meta[0] = x


@kernel
def fh_push(links, keys, meta, item, key):
    keys[item] = key
    links[1, item] = -1
    links[4, item] = 0
    _fh_add_root(links, keys, meta, item)
    meta[1] += 1


@kernel
def _fh_cut(links, keys, meta, x, p):
    if links[3, x] == x:
        links[1, p] = -1
    else:
        if links[1, p] == x:
            links[1, p] = links[3, x]
        _fh_unlink(links, x)
    links[4, p] -= 1
    _fh_add_root(links, keys, meta, x)


@kernel
def fh_decrease(links, keys, meta, x, key):
    keys[x] = key
    p = links[0, x]
    if p != -1 and key < keys[p]:
        _fh_cut(links, keys, meta, x, p)
        y = p
        while True:
            z = links[0, y]
            if z == -1:
                break
            if links[5, y] == 0:
                links[5, y] = 1
                break
            _fh_cut(links, keys, meta, y, z)
            y = z
    if key < keys[meta[0]]:
        meta[0] = x


@kernel
def _fh_link(links, y, x):
    # make root y a child of root x
    _fh_unlink(links, y)
    c = links[1, x]
    if c == -1:
        links[1, x] = y
    else:
        right = links[3, c]
        links[3, c] = y
        links[2, y] = c
        links[3, y] = right
        links[2, right] = y
    links[0, y] = x
    links[4, x] += 1
    links[5, y] = 0


@kernel
def fh_pop(links, keys, meta, aux, buf):
    z = meta[0]
    c = links[1, z]
    if c != -1:
        x = c
        while True:
            links[0, x] = -1
            links[5, x] = 0
            x = links[3, x]
            if x == c:
                break
        # splice the child ring into the root ring next to z
        zr = links[3, z]
        cl = links[2, c]
        links[3, z] = c
        links[2, c] = z
        links[3, cl] = zr
        links[2, zr] = cl
        links[1, z] = -1
    links[4, z] = 0
    meta[1] -= 1
    if links[3, z] == z:
        meta[0] = -1
        return z
    start = links[3, z]
    _fh_unlink(links, z)
    nroots = 0
    x = start
    while True:
        buf[nroots] = x
        nroots += 1
        x = links[3, x]
        if x == start:
            break
    maxdeg = -1
    for t in range(nroots):
        x = buf[t]
        d = links[4, x]
        while aux[d] != -1:
            y = aux[d]
            if keys[y] < keys[x]:
                x, y = y, x
            _fh_link(links, y, x)
            aux[d] = -1
            d += 1
        aux[d] = x
        if d > maxdeg:
            maxdeg = d
    best = -1
    for d in range(maxdeg + 1):
        x = aux[d]
        if x != -1:
            aux[d] = -1
            if best == -1 or keys[x] < keys[best]:
                best = x
    meta[0] = best
    return z


# ------------------------------------------------------------------- wrappers

_FRESH, _LIVE, _GONE = 0, 1, 2


class _CheckedHeap:
    kind = None

    def __init__(self, capacity):
        self.capacity = int(capacity)
        self.keys = np.zeros(self.capacity)
        self._state = np.zeros(self.capacity, dtype=np.int8)
        self._size = 0

    def __len__(self):
        return self._size

    def __contains__(self, item):
        return 0 <= item < self.capacity and self._state[item] == _LIVE

    def _check_new(self, item):
        if not 0 <= item < self.capacity:
            raise KeyError(f"item {item} outside 0..{self.capacity - 1}")
        if self._state[item] != _FRESH:
            raise KeyError(f"item {item} was already inserted")

    def _check_decrease(self, item, key):
        if item not in self:
            raise KeyError(f"item {item} is not in the heap")
        if key > self.keys[item]:
            raise ValueError(f"new key {key} exceeds current key {self.keys[item]} of item {item}")

    def _after(self):
        pass

    def push(self, item, key):
        self._check_new(item)
        self._push(item, float(key))
        self._state[item] = _LIVE
        self._size += 1
        self._after()

    def decrease_key(self, item, key):
        self._check_decrease(item, key)
        self._decrease(item, float(key))
        self._after()

    def pop(self):
        """Remove and return ``(item, key)`` with the smallest key."""
        if self._size == 0:
            raise IndexError("pop from an empty heap")
        item = int(self._pop())
        self._state[item] = _GONE
        self._size -= 1
        self._after()
        return item, float(self.keys[item])


class BinaryHeap(_CheckedHeap):
    kind = HeapKind.BINARY

    def __init__(self, capacity):
        super().__init__(capacity)
        self.slots = np.zeros(self.capacity, dtype=np.int64)
        self.where = np.full(self.capacity, -1, dtype=np.int64)
        self.meta = np.zeros(1, dtype=np.int64)

    def _push(self, item, key):
        bh_push(self.slots, self.where, self.keys, self.meta, item, key)

    def _decrease(self, item, key):
        bh_decrease(self.slots, self.where, self.keys, item, key)

    def _pop(self):
        return bh_pop(self.slots, self.where, self.keys, self.meta)

    def peek(self):
        if self._size == 0:
            raise IndexError("peek at an empty heap")
        item = int(self.slots[0])
        return item, float(self.keys[item])


class FibonacciHeap(_CheckedHeap):
    """Fibonacci heap; pass ``check=True`` to verify its invariants after every call."""

    kind = HeapKind.FIBONACCI

    def __init__(self, capacity, check=False):
        super().__init__(capacity)
        self.links = np.full((6, self.capacity), -1, dtype=np.int64)
        self.meta = np.array([-1, 0], dtype=np.int64)
        self.aux = np.full(AUX_LEN, -1, dtype=np.int64)
        self.buf = np.zeros(max(self.capacity, 1), dtype=np.int64)
        self.check = check

    def _push(self, item, key):
        fh_push(self.links, self.keys, self.meta, item, key)

    def _decrease(self, item, key):
        fh_decrease(self.links, self.keys, self.meta, item, key)

    def _pop(self):
        return fh_pop(self.links, self.keys, self.meta, self.aux, self.buf)

    def _after(self):
        if self.check:
            self.verify()

    def peek(self):
        if self._size == 0:
            raise IndexError("peek at an empty heap")
        item = int(self.meta[0])
        return item, float(self.keys[item])

    def _ring(self, start):
        out = [start]
        x = int(self.links[RIGHT, start])
        while x != start:
            if self.links[LEFT, x] != out[-1]:
                raise AssertionError(f"broken left link at {x}")
            out.append(x)
            if len(out) > self.capacity:
                raise AssertionError("sibling ring does not close")
            x = int(self.links[RIGHT, x])
        if self.links[LEFT, start] != out[-1]:
            raise AssertionError(f"broken left link at {start}")
        return out

    def verify(self):
        """Raise AssertionError if any structural invariant is violated."""
        links, keys = self.links, self.keys
        size = int(self.meta[1])
        if size != self._size:
            raise AssertionError(f"size {size} != {self._size}")
        mn = int(self.meta[0])
        if size == 0:
            if mn != -1:
                raise AssertionError("empty heap with a min pointer")
            return
        roots = self._ring(mn)
        seen = 0
        stack = []
        for r in roots:
            if links[PARENT, r] != -1:
                raise AssertionError(f"root {r} has a parent")
            if links[MARK, r]:
                raise AssertionError(f"root {r} is marked")
            if keys[r] < keys[mn]:
                raise AssertionError("min pointer is not minimal")
            stack.append(r)
        bound = math.log(size, (1 + 5 ** 0.5) / 2) if size > 1 else 0.0
        while stack:
            x = stack.pop()
            seen += 1
            if self._state[x] != _LIVE:
                raise AssertionError(f"dead item {x} still linked")
            deg = int(links[DEGREE, x])
            if deg > bound + 1e-9:
                raise AssertionError(f"degree {deg} of {x} exceeds log_phi({size})")
            c = int(links[CHILD, x])
            kids = [] if c == -1 else self._ring(c)
            if len(kids) != deg:
                raise AssertionError(f"degree {deg} of {x} but {len(kids)} children")
            for y in kids:
                if links[PARENT, y] != x:
                    raise AssertionError(f"child {y} does not point back to {x}")
                if keys[y] < keys[x]:
                    raise AssertionError(f"heap order violated between {x} and {y}")
                stack.append(y)
        if seen != size:
            raise AssertionError(f"reached {seen} nodes, heap holds {size}")


def make_heap(kind, capacity, check=False):
    kind = HeapKind.parse(kind)
    if kind is HeapKind.BINARY:
        return BinaryHeap(capacity)
    return FibonacciHeap(capacity, check=check)


# --------------------------------------------------------------- trace runner

OP_INSERT, OP_DECREASE, OP_EXTRACT = 0, 1, 2
ERR_NONE, ERR_ID, ERR_DUP, ERR_NOT_LIVE, ERR_KEY_UP, ERR_EMPTY = 0, 1, 2, 3, 4, 5


@kernel
def run_trace(kind, cap, ops, items, keys_in, out_items, out_keys):
    """Execute a command trace; returns (n_extracted, error code, error index)."""
    keys = np.zeros(cap)
    state = np.zeros(cap, dtype=np.int8)
    slots = np.zeros(cap, dtype=np.int64)
    where = np.full(cap, -1, dtype=np.int64)
    bmeta = np.zeros(1, dtype=np.int64)
    links = np.full((6, cap), -1, dtype=np.int64)
    fmeta = np.array([-1, 0], dtype=np.int64)
    aux = np.full(128, -1, dtype=np.int64)
    buf = np.zeros(max(cap, 1), dtype=np.int64)
    size = 0
    nout = 0
    for t in range(len(ops)):
        op = ops[t]
        if op == 2:
            if size == 0:
                return nout, 5, t
            if kind == 0:
                x = bh_pop(slots, where, keys, bmeta)
            else:
                x = fh_pop(links, keys, fmeta, aux, buf)
            state[x] = 2
            size -= 1
            out_items[nout] = x
            out_keys[nout] = keys[x]
            nout += 1
            continue
        x = items[t]
        k = keys_in[t]
        if x < 0 or x >= cap:
            return nout, 1, t
        if op == 0:
            if state[x] != 0:
                return nout, 2, t
            if kind == 0:
                bh_push(slots, where, keys, bmeta, x, k)
            else:
                fh_push(links, keys, fmeta, x, k)
            state[x] = 1
            size += 1
        else:
            if state[x] != 1:
                return nout, 3, t
            if k > keys[x]:
                return nout, 4, t
            if kind == 0:
                bh_decrease(slots, where, keys, x, k)
            else:
                fh_decrease(links, keys, fmeta, x, k)
    return nout, 0, -1


def heap_trace(kind, commands):
    """Run INSERT / DECREASE / EXTRACT commands; return the extracted pairs.

    Commands are tuples ``("INSERT", id, key)``, ``("DECREASE", id, key)``
    and ``("EXTRACT",)``. Ids may be any hashable values. Invalid commands
    raise: KeyError for a repeated insert or a decrease on a dead id,
    ValueError for a decrease that raises the key, IndexError for an
    extract from an empty heap.
    """
    kind = HeapKind.parse(kind)
    codes = {"INSERT": OP_INSERT, "DECREASE": OP_DECREASE, "EXTRACT": OP_EXTRACT}
    ids = {}
    names = []
    ops = np.empty(len(commands), dtype=np.int64)
    items = np.full(len(commands), -1, dtype=np.int64)
    keys = np.zeros(len(commands))
    for t, cmd in enumerate(commands):
        op = codes[str(cmd[0]).upper()]
        ops[t] = op
        if op != OP_EXTRACT:
            ident = cmd[1]
            if ident not in ids:
                ids[ident] = len(names)
                names.append(ident)
            items[t] = ids[ident]
            keys[t] = float(cmd[2])
    cap = max(len(names), 1)
    out_items = np.empty(len(commands), dtype=np.int64)
    out_keys = np.empty(len(commands))
    nout, err, at = run_trace(kind.code, cap, ops, items, keys, out_items, out_keys)
    if err == ERR_EMPTY:
        raise IndexError(f"command {at}: EXTRACT on an empty heap")
    if err in (ERR_DUP, ERR_ID):
        raise KeyError(f"command {at}: id {names[items[at]]!r} inserted twice")
    if err == ERR_NOT_LIVE:
        raise KeyError(f"command {at}: DECREASE on id {names[items[at]]!r} which is not in the heap")
    if err == ERR_KEY_UP:
        raise ValueError(f"command {at}: DECREASE would raise the key of {names[items[at]]!r}")
    return [(names[out_items[t]], float(out_keys[t])) for t in range(nout)]
