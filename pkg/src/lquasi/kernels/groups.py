"""Element enumeration for permutation groups given by generators."""
from __future__ import annotations

import numpy as np

from .._accel import jit


@jit
def _hash_row(row):
    h = np.uint64(1469598103934665603)
    for v in row:
        h = (h ^ np.uint64(v)) * np.uint64(1099511628211)
    return h


@jit
def _lookup(table, keys, elems, row):
    """Slot index holding ``row`` or the empty slot where it belongs."""
    mask = table.shape[0] - 1
    slot = np.int64(_hash_row(row) & np.uint64(mask))
    while True:
        idx = table[slot]
        if idx < 0:
            return slot
        same = True
        for j in range(row.shape[0]):
            if elems[idx, j] != row[j]:
                same = False
                break
        if same:
            return slot
        slot = (slot + 1) & mask


@jit
def group_closure(gens, cap):
    """All products of ``gens`` (k x n), identity first; None-like empty on overflow.

    Returns ``(elements, overflow)``.  Breadth-first: each element is extended
    on the right by every generator, which reaches the whole group because
    inverses are positive powers in a finite group.
    """
    n = gens.shape[1]
    size = 64
    elems = np.empty((size, n), dtype=np.int32)
    tsize = 128
    table = np.full(tsize, -1, dtype=np.int64)
    keys = np.empty(0, dtype=np.int64)
    for j in range(n):
        elems[0, j] = j
    table[_lookup(table, keys, elems, elems[0])] = 0
    count = 1
    i = 0
    cand = np.empty(n, dtype=np.int32)
    while i < count:
        for g in range(gens.shape[0]):
            for j in range(n):
                cand[j] = elems[i, gens[g, j]]
            slot = _lookup(table, keys, elems, cand)
            if table[slot] >= 0:
                continue
            if count >= cap:
                return elems[:count], True
            if count == size:
                size *= 2
                grown = np.empty((size, n), dtype=np.int32)
                grown[:count] = elems[:count]
                elems = grown
            elems[count] = cand
            table[slot] = count
            count += 1
            if 2 * count > tsize:
                tsize *= 4
                table = np.full(tsize, -1, dtype=np.int64)
                for k in range(count):
                    table[_lookup(table, keys, elems, elems[k])] = k
        i += 1
    return elems[:count], False
