"""Closure, orbit and congruence-generation kernels on a single table."""
from __future__ import annotations

import numpy as np

from .._accel import jit


@jit
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@jit
def canonical_labels(parent):
    """Relabel a union-find forest so blocks are numbered by least element."""
    n = parent.shape[0]
    out = np.empty(n, dtype=np.int64)
    seen = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for x in range(n):
        r = _find(parent, x)
        if seen[r] < 0:
            seen[r] = nxt
            nxt += 1
        out[x] = seen[r]
    return out


@jit
def closure(mul, ldiv, start):
    """Least subset containing ``start`` (bool mask) closed under * and \\."""
    n = mul.shape[0]
    inside = start.copy()
    members = np.empty(n, dtype=np.int64)
    k = 0
    for x in range(n):
        if inside[x]:
            members[k] = x
            k += 1
    done = 0
    while done < k:
        # semi-naive: only pairs touching a member added in the last round
        new_k = k
        for i in range(k):
            a = members[i]
            j0 = done if i < done else 0
            for j in range(j0, k):
                b = members[j]
                for t in range(4):
                    if t == 0:
                        c = mul[a, b]
                    elif t == 1:
                        c = ldiv[a, b]
                    elif t == 2:
                        c = mul[b, a]
                    else:
                        c = ldiv[b, a]
                    if not inside[c]:
                        inside[c] = True
                        members[new_k] = c
                        new_k += 1
        done = k
        k = new_k
    return inside


@jit
def closure_bits(mul, ldiv, mask):
    """Bitmask version of :func:`closure` for n <= 62."""
    n = mul.shape[0]
    cur = mask
    while True:
        nxt = cur
        for a in range(n):
            if (cur >> a) & 1:
                for b in range(n):
                    if (cur >> b) & 1:
                        nxt |= np.int64(1) << mul[a, b]
                        nxt |= np.int64(1) << ldiv[a, b]
        if nxt == cur:
            return cur
        cur = nxt


@jit
def closed_sets(mul, ldiv):
    """All nonempty subalgebras as bitmasks (n <= 20), sorted ascending.

    Closed sets are reached by closing singletons and then repeatedly adding
    one outside element and re-closing; a visited bitmap over all 2**n masks
    deduplicates.
    """
    n = mul.shape[0]
    seen = np.zeros(1 << n, dtype=np.bool_)
    stack = np.empty(1 << n, dtype=np.int64)
    top = 0
    for a in range(n):
        m = closure_bits(mul, ldiv, np.int64(1) << a)
        if not seen[m]:
            seen[m] = True
            stack[top] = m
            top += 1
    found = np.empty(1 << n, dtype=np.int64)
    nfound = 0
    while top > 0:
        top -= 1
        m = stack[top]
        found[nfound] = m
        nfound += 1
        for a in range(n):
            if not (m >> a) & 1:
                m2 = closure_bits(mul, ldiv, m | (np.int64(1) << a))
                if not seen[m2]:
                    seen[m2] = True
                    stack[top] = m2
                    top += 1
    return np.sort(found[:nfound])


@jit
def orbit_labels(mul, members):
    """LMlt orbits of the subalgebra on ``members`` (bool mask).

    Non-members get label -1.  Rows are permutations of a finite set, so
    forward images suffice: L_a^{-1} is a positive power of L_a.
    """
    n = mul.shape[0]
    parent = np.arange(n)
    for a in range(n):
        if members[a]:
            for b in range(n):
                if members[b]:
                    ra = _find(parent, b)
                    rb = _find(parent, mul[a, b])
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    out = np.full(n, -1, dtype=np.int64)
    seen = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for x in range(n):
        if members[x]:
            r = _find(parent, x)
            if seen[r] < 0:
                seen[r] = nxt
                nxt += 1
            out[x] = seen[r]
    return out


@jit
def cg_labels(mul, ldiv, pairs):
    """Congruence generated by ``pairs`` (k x 2), as canonical block labels.

    Union-find with a worklist of merging edges; every edge that merges two
    classes has its four translates (both operations, both sides) unioned.
    """
    n = mul.shape[0]
    parent = np.arange(n)
    qa = np.empty(n + pairs.shape[0], dtype=np.int64)
    qb = np.empty(n + pairs.shape[0], dtype=np.int64)
    head = 0
    tail = 0
    for i in range(pairs.shape[0]):
        ra = _find(parent, pairs[i, 0])
        rb = _find(parent, pairs[i, 1])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            qa[tail] = pairs[i, 0]
            qb[tail] = pairs[i, 1]
            tail += 1
    while head < tail:
        x = qa[head]
        y = qb[head]
        head += 1
        for c in range(n):
            for k in range(4):
                if k == 0:
                    u = mul[c, x]
                    v = mul[c, y]
                elif k == 1:
                    u = mul[x, c]
                    v = mul[y, c]
                elif k == 2:
                    u = ldiv[c, x]
                    v = ldiv[c, y]
                else:
                    u = ldiv[x, c]
                    v = ldiv[y, c]
                ru = _find(parent, u)
                rv = _find(parent, v)
                if ru != rv:
                    parent[max(ru, rv)] = min(ru, rv)
                    qa[tail] = u
                    qb[tail] = v
                    tail += 1
    return canonical_labels(parent)
