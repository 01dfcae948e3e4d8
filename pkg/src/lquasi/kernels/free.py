"""Closure of two generators inside a direct power Q^d.

Elements are length-d vectors over Q (functions Q x Q -> Q for the free
algebra on two generators).  Every product a*b or a\\b lies in the LMlt-orbit
of b, so a union-find over "result ~ right factor" yields the orbits of the
closure without ever forming its translations.
"""
import numpy as np

from .._accel import jit
from .closure import _find

FNV_OFFSET = 1469598103934665603
FNV_PRIME = 1099511628211


@jit
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)


@jit
def _probe(elems, slots, mask, vec, h):
    """Slot index holding ``vec``, or the empty slot where it would go."""
    i = np.int64(h & np.uint64(mask))
    d = elems.shape[1]
    while True:
        s = slots[i]
        if s < 0:
            return i
        same = True
        for k in range(d):
            if elems[s, k] != vec[k]:
                same = False
                break
        if same:
            return i
        i = (i + 1) & mask


@jit
def free_closure(mul, ldiv, gens, cap, stop_joined_after=-1):
    """Close ``gens`` under coordinatewise * and \\.

    Returns (elems, count, parent, left, right, op, overflow).  ``left``,
    ``right`` and ``op`` (0 for *, 1 for \\, -1 for a generator) record how
    each element was first produced.  On overflow the arrays hold the partial
    closure of ``count`` elements.  With ``stop_joined_after >= 0`` the run
    also stops (as an overflow) once generators 0 and 1 share an orbit and at
    least that many elements exist.
    """
    n = mul.shape[0]
    d = gens.shape[1]
    tabs = np.empty((2, n * n), dtype=np.int16)
    for a in range(n):
        for b in range(n):
            tabs[0, a * n + b] = mul[a, b]
            tabs[1, a * n + b] = ldiv[a, b]
    elems = np.empty((cap, d), dtype=np.int16)
    size = 1
    while size < 2 * cap:
        size *= 2
    mask = size - 1
    slots = np.full(size, -1, dtype=np.int64)
    parent = np.arange(cap)
    left = np.full(cap, -1, dtype=np.int64)
    right = np.full(cap, -1, dtype=np.int64)
    op = np.full(cap, -1, dtype=np.int64)
    prime = np.uint64(FNV_PRIME)
    vec = np.empty(d, dtype=np.int16)
    count = 0
    for g in range(gens.shape[0]):
        h = np.uint64(FNV_OFFSET)
        for k in range(d):
            vec[k] = gens[g, k]
            h = (h ^ np.uint64(vec[k])) * prime
        s_i = _probe(elems, slots, mask, vec, h)
        if slots[s_i] < 0:
            if count >= cap:
                return elems, count, parent, left, right, op, True
            elems[count, :] = vec
            slots[s_i] = count
            count += 1
    joined = count < 2
    i = 0
    while i < count:
        ei = elems[i]
        for j in range(i + 1):
            ej = elems[j]
            for t in range(4):
                o = t >> 1
                tab = tabs[o]
                h = np.uint64(FNV_OFFSET)
                if t & 1 == 0:
                    a, b = i, j
                    for k in range(d):
                        v = tab[ei[k] * n + ej[k]]
                        vec[k] = v
                        h = (h ^ np.uint64(v)) * prime
                else:
                    a, b = j, i
                    for k in range(d):
                        v = tab[ej[k] * n + ei[k]]
                        vec[k] = v
                        h = (h ^ np.uint64(v)) * prime
                s_i = _probe(elems, slots, mask, vec, h)
                r = slots[s_i]
                if r < 0:
                    if count >= cap:
                        return elems, count, parent, left, right, op, True
                    r = count
                    elems[r, :] = vec
                    slots[s_i] = r
                    left[r] = a
                    right[r] = b
                    op[r] = o
                    count += 1
                _union(parent, r, b)
            if stop_joined_after >= 0 and count >= stop_joined_after:
                if not joined:
                    joined = _find(parent, 0) == _find(parent, 1)
                if joined:
                    return elems, count, parent, left, right, op, True
        i += 1
    return elems, count, parent, left, right, op, False


def free_closure_python(mul, ldiv, gens, cap, stop_joined_after=-1):
    """Dict-based twin of :func:`free_closure`, vectorized per product row."""
    d = gens.shape[1]
    index: dict[bytes, int] = {}
    rows: list[np.ndarray] = []
    parent = list(range(cap))
    left, right, op = [], [], []

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    def finish(overflow):
        count = len(rows)
        elems = np.array(rows, dtype=np.int64).reshape(count, d)
        return (elems, count, np.array(parent[:max(count, 1)]), np.array(left), np.array(right),
                np.array(op), overflow)

    for g in gens:
        key = np.asarray(g, dtype=np.int64).tobytes()
        if key not in index:
            if len(rows) >= cap:
                return finish(True)
            index[key] = len(rows)
            rows.append(np.asarray(g, dtype=np.int64))
            left.append(-1)
            right.append(-1)
            op.append(-1)
    i = 0
    while i < len(rows):
        E = np.array(rows[: i + 1])
        x = rows[i]
        blocks = (mul[x[None, :], E], mul[E, x[None, :]], ldiv[x[None, :], E], ldiv[E, x[None, :]])
        for j in range(i + 1):
            for t in range(4):
                vec = blocks[t][j]
                a, b = (i, j) if t % 2 == 0 else (j, i)
                key = vec.tobytes()
                r = index.get(key)
                if r is None:
                    if len(rows) >= cap:
                        return finish(True)
                    r = len(rows)
                    index[key] = r
                    rows.append(vec.copy())
                    left.append(a)
                    right.append(b)
                    op.append(t // 2)
                union(r, b)
            if 0 <= stop_joined_after <= len(rows) and len(rows) > 1 and find(0) == find(1):
                return finish(True)
        i += 1
    return finish(False)
