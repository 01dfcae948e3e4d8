"""Row-branching backtracking search for finite left quasigroups.

The state of a search lives in a dict of numpy arrays (see ``new_state``) so
that the kernel can stop when its output buffer is full and be resumed later
by calling it again with the same state.

Rows are permutations identified by their rank in the lexicographic list
``perms``.  A row is decided either by branching (always on the lowest
undecided row, candidates in lexicographic order) or by propagation of the
rack law L_{a*b} = L_a L_b L_a^-1, so every model is reached exactly once.
"""
import numpy as np

from .._accel import jit


@jit(nogil=True)
def _eval_partial(code, lo, hi, vals, table, ldtab, rowrank, stack):
    """Value of the postfix term code[lo:hi], or -1 if an undecided row is needed."""
    sp = 0
    for i in range(lo, hi):
        t = code[i]
        if t >= 0:
            stack[sp] = vals[t]
            sp += 1
        else:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 1
            if rowrank[a] < 0:
                return -1
            if t == -1:
                stack[sp - 1] = table[a, b]
            else:
                stack[sp - 1] = ldtab[a, b]
    return stack[0]


@jit(nogil=True)
def _identities_ok(n, codes, bounds, nvars, table, ldtab, rowrank, vals, stack):
    for i in range(bounds.shape[0]):
        v = nvars[i]
        for k in range(v):
            vals[k] = 0
        while True:
            lv = _eval_partial(codes, bounds[i, 0], bounds[i, 1], vals, table, ldtab, rowrank, stack)
            if lv >= 0:
                rv = _eval_partial(codes, bounds[i, 1], bounds[i, 2], vals, table, ldtab, rowrank, stack)
                if rv >= 0 and rv != lv:
                    return False
            k = v - 1
            while k >= 0:
                vals[k] += 1
                if vals[k] < n:
                    break
                vals[k] = 0
                k -= 1
            if k < 0:
                break
    return True


@jit(nogil=True)
def _assign(r, k, perms, invperms, rowrank, table, ldtab, colcount, latin, trail, tlen):
    """Decide row r as perms[k]; False (and no change) if a column clashes."""
    n = perms.shape[1]
    if latin:
        for b in range(n):
            if colcount[b, perms[k, b]] > 0:
                return False
        for b in range(n):
            colcount[b, perms[k, b]] += 1
    rowrank[r] = k
    for b in range(n):
        table[r, b] = perms[k, b]
        ldtab[r, b] = invperms[k, b]
    trail[tlen] = r
    return True


@jit(nogil=True)
def _undo_to(pos, tlen, trail, rowrank, perms, colcount, latin):
    while tlen > pos:
        tlen -= 1
        r = trail[tlen]
        if latin:
            k = rowrank[r]
            for b in range(perms.shape[1]):
                colcount[b, perms[k, b]] -= 1
        rowrank[r] = -1
    return tlen


@jit(nogil=True)
def _propagate(start, tlen, perms, invperms, conj, allowed, rowrank, table, ldtab, colcount, latin, trail):
    """Close the decided rows under the rack law; returns (ok, new tlen)."""
    q = start
    while q < tlen:
        x = trail[q]
        q += 1
        for t in range(tlen):
            y = trail[t]
            for s in range(2):
                a = x if s == 0 else y
                b = y if s == 0 else x
                c = table[a, b]
                req = conj[rowrank[a], rowrank[b]]
                if rowrank[c] >= 0:
                    if rowrank[c] != req:
                        return False, tlen
                else:
                    if not allowed[c, req]:
                        return False, tlen
                    if not _assign(c, req, perms, invperms, rowrank, table, ldtab, colcount, latin, trail, tlen):
                        return False, tlen
                    tlen += 1
    return True, tlen


@jit(nogil=True)
def _is_lex_min(table, perms, invperms):
    """No relabeling of ``table`` is lexicographically smaller (row-major)."""
    n = table.shape[0]
    for s in range(perms.shape[0]):
        sig = perms[s]
        inv = invperms[s]
        decided = False
        for i in range(n):
            for j in range(n):
                v = sig[table[inv[i], inv[j]]]
                w = table[i, j]
                if v < w:
                    return False
                if v > w:
                    decided = True
                    break
            if decided:
                break
    return True


@jit(nogil=True)
def search_kernel(perms, invperms, cand, ncand, allowed, conj, rack, latin, up_to_iso,
                  codes, bounds, nvars, state_int, rowrank, table, ldtab, colcount,
                  trail, brow, bidx, bstart, out, stats):
    """Run until ``out`` is full or the tree is exhausted.

    ``state_int`` = [depth, tlen, finished, started].  Returns the number of
    models written to ``out``.  ``stats`` accumulates [nodes, leaves].
    """
    n = perms.shape[1]
    nout = 0
    depth = state_int[0]
    tlen = state_int[1]
    if state_int[2]:
        return 0
    vals = np.zeros(max(nvars.max() if nvars.shape[0] > 0 else 1, 1), dtype=np.int64)
    stack = np.empty(max(codes.shape[0], 1) + 1, dtype=np.int64)
    if not state_int[3]:
        state_int[3] = 1
        depth = 0
        tlen = 0
        brow[0] = 0
        bidx[0] = 0
        bstart[0] = 0
    while depth >= 0:
        r = brow[depth]
        tlen = _undo_to(bstart[depth], tlen, trail, rowrank, perms, colcount, latin)
        if bidx[depth] >= ncand[r]:
            depth -= 1
            continue
        k = cand[r, bidx[depth]]
        bidx[depth] += 1
        stats[0] += 1
        if not _assign(r, k, perms, invperms, rowrank, table, ldtab, colcount, latin, trail, tlen):
            continue
        tlen += 1
        if rack:
            ok, tlen = _propagate(tlen - 1, tlen, perms, invperms, conj, allowed, rowrank, table,
                                  ldtab, colcount, latin, trail)
            if not ok:
                continue
        if bounds.shape[0] > 0:
            if not _identities_ok(n, codes, bounds, nvars, table, ldtab, rowrank, vals, stack):
                continue
        if tlen == n:
            stats[1] += 1
            if up_to_iso and not _is_lex_min(table, perms, invperms):
                continue
            for i in range(n):
                for j in range(n):
                    out[nout, i, j] = table[i, j]
            nout += 1
            if nout == out.shape[0]:
                state_int[0] = depth
                state_int[1] = tlen
                return nout
            continue
        nxt = 0
        while rowrank[nxt] >= 0:
            nxt += 1
        depth += 1
        brow[depth] = nxt
        bidx[depth] = 0
        bstart[depth] = tlen
    state_int[0] = depth
    state_int[1] = tlen
    state_int[2] = 1
    return nout


def new_state(n: int, buffer: int) -> dict:
    return {
        "state_int": np.zeros(4, dtype=np.int64),
        "rowrank": np.full(n, -1, dtype=np.int64),
        "table": np.zeros((n, n), dtype=np.int64),
        "ldtab": np.zeros((n, n), dtype=np.int64),
        "colcount": np.zeros((n, n), dtype=np.int64),
        "trail": np.zeros(n, dtype=np.int64),
        "brow": np.zeros(n + 1, dtype=np.int64),
        "bidx": np.zeros(n + 1, dtype=np.int64),
        "bstart": np.zeros(n + 1, dtype=np.int64),
        "out": np.zeros((buffer, n, n), dtype=np.int64),
        "stats": np.zeros(2, dtype=np.int64),
    }
