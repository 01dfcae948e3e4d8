"""Batch predicates over stacks of multiplication tables, shape (B, n, n).

Each predicate has a loop kernel (compiled by numba when enabled) and a numpy
twin vectorized over the batch axis.  The two are independent
implementations and are cross-checked in the tests.

Congruences here come from a scan of every partition of the carrier, not
from principal-congruence generation.
"""
from __future__ import annotations

import itertools

import numpy as np

from .._accel import NUMBA_ENABLED, jit


def all_tables(n: int, idempotent: bool = False) -> np.ndarray:
    """Every left quasigroup table of order n, rows in lexicographic order."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    choices = []
    for r in range(n):
        choices.append(perms[perms[:, r] == r] if idempotent else perms)
    sizes = [len(c) for c in choices]
    idx = np.indices(sizes).reshape(n, -1).T
    out = np.empty((len(idx), n, n), dtype=np.int64)
    for r in range(n):
        out[:, r, :] = choices[r][idx[:, r]]
    return out


def ldiv_tables(mul: np.ndarray) -> np.ndarray:
    B, n, _ = mul.shape
    out = np.empty_like(mul)
    rows = np.arange(n)
    np.put_along_axis(out, mul, np.broadcast_to(rows, mul.shape), axis=2)
    return out


def partitions(n: int) -> np.ndarray:
    """Restricted growth strings of length n, one partition per row."""
    out = []

    def rec(prefix, m):
        if len(prefix) == n:
            out.append(list(prefix))
            return
        for b in range(m + 1):
            rec(prefix + [b], max(m, b + 1))

    rec([], 0)
    return np.array(out, dtype=np.int64).reshape(-1, n)


# ---------------------------------------------------------------- loop kernels

@jit
def _closure_mask(mul, ldiv, m):
    n = mul.shape[0]
    while True:
        new = m
        for a in range(n):
            if (m >> a) & 1:
                for b in range(n):
                    if (m >> b) & 1:
                        new |= np.int64(1) << mul[a, b]
                        new |= np.int64(1) << ldiv[a, b]
        if new == m:
            return m
        m = new


@jit
def _connected_on(mul, m):
    """LMlt of the subalgebra with member mask m is transitive on it."""
    n = mul.shape[0]
    start = 0
    while not (m >> start) & 1:
        start += 1
    reach = np.int64(1) << start
    while True:
        new = reach
        for a in range(n):
            if (m >> a) & 1:
                for b in range(n):
                    if (reach >> b) & 1:
                        new |= np.int64(1) << mul[a, b]
        if new == reach:
            return reach == m
        reach = new


@jit
def batch_superconnected_loop(mul, ldiv):
    B, n, _ = mul.shape
    out = np.ones(B, dtype=np.bool_)
    for t in range(B):
        for a in range(n):
            for b in range(a + 1, n):
                m = _closure_mask(mul[t], ldiv[t], (np.int64(1) << a) | (np.int64(1) << b))
                if not _connected_on(mul[t], m):
                    out[t] = False
                    break
            if not out[t]:
                break
    return out


@jit
def batch_connected_loop(mul):
    B, n, _ = mul.shape
    out = np.empty(B, dtype=np.bool_)
    full = (np.int64(1) << n) - 1
    for t in range(B):
        out[t] = _connected_on(mul[t], full)
    return out


@jit
def batch_p2_loop(mul, ldiv):
    """P_2 in HS: brute force over subsets and 2-colourings."""
    B, n, _ = mul.shape
    out = np.zeros(B, dtype=np.bool_)
    full = np.int64(1) << n
    for t in range(B):
        found = False
        for S in range(1, full):
            if S & (S - 1) == 0:
                continue
            closed = True
            for a in range(n):
                if (S >> a) & 1:
                    for b in range(n):
                        if (S >> b) & 1:
                            if not ((S >> mul[t, a, b]) & 1) or not ((S >> ldiv[t, a, b]) & 1):
                                closed = False
            if not closed:
                continue
            for C in range(1, S):
                if C & ~S:
                    continue
                hom = True
                for a in range(n):
                    if (S >> a) & 1:
                        for b in range(n):
                            if (S >> b) & 1:
                                hb = (C >> b) & 1
                                if ((C >> mul[t, a, b]) & 1) != hb or ((C >> ldiv[t, a, b]) & 1) != hb:
                                    hom = False
                if hom:
                    found = True
                    break
            if found:
                break
        out[t] = found
    return out


@jit
def _is_compatible(mul, ldiv, lab):
    n = mul.shape[0]
    for a in range(n):
        for b in range(a + 1, n):
            if lab[a] != lab[b]:
                continue
            for c in range(n):
                if lab[mul[a, c]] != lab[mul[b, c]] or lab[mul[c, a]] != lab[mul[c, b]]:
                    return False
                if lab[ldiv[a, c]] != lab[ldiv[b, c]] or lab[ldiv[c, a]] != lab[ldiv[c, b]]:
                    return False
    return True


@jit
def batch_congruence_props_loop(mul, ldiv, parts):
    """Columns: [uniform, regular, coherent, number of congruences]."""
    B, n, _ = mul.shape
    P = parts.shape[0]
    out = np.zeros((B, 4), dtype=np.int64)
    is_con = np.zeros(P, dtype=np.bool_)
    full = np.int64(1) << n
    for t in range(B):
        k = 0
        for p in range(P):
            is_con[p] = _is_compatible(mul[t], ldiv[t], parts[p])
            if is_con[p]:
                k += 1
        uniform = True
        for p in range(P):
            if not is_con[p]:
                continue
            size0 = 0
            for x in range(n):
                if parts[p, x] == parts[p, 0]:
                    size0 += 1
            for x in range(n):
                s = 0
                for y in range(n):
                    if parts[p, y] == parts[p, x]:
                        s += 1
                if s != size0:
                    uniform = False
        regular = True
        for p in range(P):
            if not is_con[p]:
                continue
            for q in range(p + 1, P):
                if not is_con[q]:
                    continue
                for a in range(n):
                    same = True
                    for x in range(n):
                        if (parts[p, x] == parts[p, a]) != (parts[q, x] == parts[q, a]):
                            same = False
                            break
                    if same:
                        regular = False
        coherent = True
        for S in range(1, full):
            if _closure_mask(mul[t], ldiv[t], S) != S:
                continue
            for p in range(P):
                if not is_con[p]:
                    continue
                contains_block = False
                union_of_blocks = True
                for a in range(n):
                    in_block = True
                    meets = False
                    for x in range(n):
                        if parts[p, x] == parts[p, a]:
                            if (S >> x) & 1:
                                meets = True
                            else:
                                in_block = False
                    if in_block:
                        contains_block = True
                    if meets and not in_block:
                        union_of_blocks = False
                if contains_block and not union_of_blocks:
                    coherent = False
        out[t, 0] = uniform
        out[t, 1] = regular
        out[t, 2] = coherent
        out[t, 3] = k
    return out


# ---------------------------------------------------------------- numpy twins

def _bits(n):
    return np.int64(1) << np.arange(n, dtype=np.int64)


def batch_connected_numpy(mul: np.ndarray, member: np.ndarray | None = None) -> np.ndarray:
    """Transitivity of LMlt on member sets (bool (B, n)); whole carrier by default."""
    B, n, _ = mul.shape
    if member is None:
        member = np.ones((B, n), dtype=bool)
    start = np.argmax(member, axis=1)
    reach = np.zeros((B, n), dtype=bool)
    reach[np.arange(B), start] = True
    rows = np.arange(B)
    for _ in range(n):
        new = reach.copy()
        for a in range(n):
            act = member[:, a]
            for b in range(n):
                hit = act & reach[:, b]
                new[rows, mul[:, a, b]] |= hit
        if np.array_equal(new, reach):
            break
        reach = new
    return np.all(reach == member, axis=1)


def _closure_numpy(mul, ldiv, member):
    B, n, _ = mul.shape
    rows = np.arange(B)
    while True:
        new = member.copy()
        for a in range(n):
            for b in range(n):
                both = member[:, a] & member[:, b]
                new[rows, mul[:, a, b]] |= both
                new[rows, ldiv[:, a, b]] |= both
        if np.array_equal(new, member):
            return member
        member = new


def batch_superconnected_numpy(mul: np.ndarray, ldiv: np.ndarray) -> np.ndarray:
    B, n, _ = mul.shape
    out = np.ones(B, dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            m = np.zeros((B, n), dtype=bool)
            m[:, a] = True
            m[:, b] = True
            m = _closure_numpy(mul, ldiv, m)
            out &= batch_connected_numpy(mul, m)
    return out


def batch_p2_numpy(mul: np.ndarray, ldiv: np.ndarray) -> np.ndarray:
    B, n, _ = mul.shape
    out = np.zeros(B, dtype=bool)
    for S in range(1, 1 << n):
        elems = [x for x in range(n) if (S >> x) & 1]
        if len(elems) < 2:
            continue
        inside = np.zeros(n, dtype=bool)
        inside[elems] = True
        sub = np.ix_(np.arange(B), elems, elems)
        closed = inside[mul[sub]].all(axis=(1, 2)) & inside[ldiv[sub]].all(axis=(1, 2))
        if not closed.any():
            continue
        m_sub, d_sub = mul[sub], ldiv[sub]
        for C in range(1, S):
            if C & ~S:
                continue
            col = ((C >> np.arange(n)) & 1).astype(bool)
            hb = col[elems][None, None, :]
            hom = (col[m_sub] == hb).all(axis=(1, 2)) & (col[d_sub] == hb).all(axis=(1, 2))
            out |= closed & hom
    return out


def batch_congruence_props_numpy(mul: np.ndarray, ldiv: np.ndarray, parts: np.ndarray) -> np.ndarray:
    B, n, _ = mul.shape
    P = len(parts)
    is_con = np.zeros((B, P), dtype=bool)
    for p, lab in enumerate(parts):
        ok = np.ones(B, dtype=bool)
        ML, DL = lab[mul], lab[ldiv]
        for a in range(n):
            for b in range(a + 1, n):
                if lab[a] != lab[b]:
                    continue
                ok &= (ML[:, a, :] == ML[:, b, :]).all(1) & (ML[:, :, a] == ML[:, :, b]).all(1)
                ok &= (DL[:, a, :] == DL[:, b, :]).all(1) & (DL[:, :, a] == DL[:, :, b]).all(1)
        is_con[:, p] = ok
    same_block = parts[:, :, None] == parts[:, None, :]          # (P, n, n)
    sizes = same_block.sum(axis=2)                                # (P, n)
    part_uniform = (sizes == sizes[:, :1]).all(axis=1)
    uniform = (~is_con | part_uniform[None, :]).all(axis=1)
    # pairs of partitions sharing the block of some element
    share = (same_block[:, None, :, :] == same_block[None, :, :, :]).all(axis=3).any(axis=2)
    np.fill_diagonal(share, False)
    regular = ~np.einsum("bp,pq,bq->b", is_con.astype(np.int64), share.astype(np.int64), is_con.astype(np.int64)).astype(bool)
    coherent = np.ones(B, dtype=bool)
    for S in range(1, 1 << n):
        member = np.broadcast_to(((S >> np.arange(n)) & 1).astype(bool), (B, n))
        closed = (_closure_numpy(mul, ldiv, member.copy()) == member).all(axis=1)
        inS = ((S >> np.arange(n)) & 1).astype(bool)
        # per partition: block of a inside S, block of a meeting S
        block_in = ~(same_block & ~inS[None, None, :]).any(axis=2)     # (P, n)
        block_meets = (same_block & inS[None, None, :]).any(axis=2)
        bad_part = block_in.any(axis=1) & (block_meets & ~block_in).any(axis=1)
        coherent &= ~(closed & (is_con & bad_part[None, :]).any(axis=1))
    return np.stack([uniform, regular, coherent, is_con.sum(axis=1)], axis=1).astype(np.int64)


# ---------------------------------------------------------------- dispatch

def batch_superconnected(mul, ldiv=None, use_numba: bool | None = None) -> np.ndarray:
    ldiv = ldiv_tables(mul) if ldiv is None else ldiv
    if NUMBA_ENABLED if use_numba is None else use_numba:
        return batch_superconnected_loop(mul, ldiv)
    return batch_superconnected_numpy(mul, ldiv)


def batch_connected(mul, use_numba: bool | None = None) -> np.ndarray:
    if NUMBA_ENABLED if use_numba is None else use_numba:
        return batch_connected_loop(mul)
    return batch_connected_numpy(mul)


def batch_p2(mul, ldiv=None, use_numba: bool | None = None) -> np.ndarray:
    ldiv = ldiv_tables(mul) if ldiv is None else ldiv
    if NUMBA_ENABLED if use_numba is None else use_numba:
        return batch_p2_loop(mul, ldiv)
    return batch_p2_numpy(mul, ldiv)


def batch_congruence_props(mul, ldiv=None, use_numba: bool | None = None) -> np.ndarray:
    ldiv = ldiv_tables(mul) if ldiv is None else ldiv
    parts = partitions(mul.shape[1])
    if NUMBA_ENABLED if use_numba is None else use_numba:
        return batch_congruence_props_loop(mul, ldiv, parts)
    return batch_congruence_props_numpy(mul, ldiv, parts)
