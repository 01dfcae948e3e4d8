"""Postfix evaluation of compiled terms.

A compiled term is an int array: ``k >= 0`` pushes variable ``k``, ``MUL``
pops b, a and pushes a*b, ``LDIV`` pushes a\\b.
"""
from __future__ import annotations

import numpy as np

from .._accel import jit

MUL = -1
LDIV = -2


@jit
def eval_code(mul, ldiv, code, vals, stack):
    sp = 0
    for i in range(code.shape[0]):
        t = code[i]
        if t >= 0:
            stack[sp] = vals[t]
            sp += 1
        else:
            b = stack[sp - 1]
            a = stack[sp - 2]
            sp -= 1
            if t == -1:
                stack[sp - 1] = mul[a, b]
            else:
                stack[sp - 1] = ldiv[a, b]
    return stack[0]


@jit
def identity_counterexample(mul, ldiv, lhs, rhs, nvars, out):
    """Scan assignments in lexicographic order (variable 0 most significant).

    Writes the first failing assignment into ``out`` and returns True, or
    returns False when the identity holds everywhere.
    """
    n = mul.shape[0]
    vals = np.zeros(max(nvars, 1), dtype=np.int64)
    stack = np.empty(lhs.shape[0] + rhs.shape[0] + 1, dtype=np.int64)
    while True:
        if eval_code(mul, ldiv, lhs, vals, stack) != eval_code(mul, ldiv, rhs, vals, stack):
            for k in range(nvars):
                out[k] = vals[k]
            return True
        k = nvars - 1
        while k >= 0:
            vals[k] += 1
            if vals[k] < n:
                break
            vals[k] = 0
            k -= 1
        if k < 0:
            return False


def eval_code_vectorized(mul, ldiv, code, columns):
    """Evaluate on many assignments at once; ``columns[k]`` holds variable k."""
    stack = []
    for t in code:
        if t >= 0:
            stack.append(columns[t])
        else:
            b = stack.pop()
            a = stack.pop()
            stack.append(mul[a, b] if t == MUL else ldiv[a, b])
    return stack[0]


def identity_counterexample_numpy(mul, ldiv, lhs, rhs, nvars, chunk=1 << 20):
    n = mul.shape[0]
    total = n ** nvars
    if nvars == 0:
        return None if eval_code_vectorized(mul, ldiv, lhs, []) == eval_code_vectorized(mul, ldiv, rhs, []) else ()
    weights = n ** np.arange(nvars - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = [(idx // w) % n for w in weights]
        bad = eval_code_vectorized(mul, ldiv, lhs, cols) != eval_code_vectorized(mul, ldiv, rhs, cols)
        if np.any(bad):
            first = int(idx[np.argmax(bad)])
            return tuple(int((first // w) % n) for w in weights)
    return None
