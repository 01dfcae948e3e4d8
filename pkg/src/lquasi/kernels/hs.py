"""Brute-force search for a surjection from a subalgebra onto P_2.

Deliberately naive: every subset is tested for closure directly and every
2-colouring is tested as a homomorphism.  It shares no code with the
orbit-based superconnectedness test and serves as its oracle.
"""
import numpy as np

from .._accel import jit


@jit
def _closed(mul, ldiv, S):
    n = mul.shape[0]
    for a in range(n):
        if (S >> a) & 1:
            for b in range(n):
                if (S >> b) & 1:
                    if not (S >> mul[a, b]) & 1:
                        return False
                    if not (S >> ldiv[a, b]) & 1:
                        return False
    return True


@jit
def _is_hom_to_p2(mul, ldiv, S, C):
    """C (subset of S) is the preimage of 1 under a homomorphism S -> P_2."""
    n = mul.shape[0]
    for a in range(n):
        if (S >> a) & 1:
            for b in range(n):
                if (S >> b) & 1:
                    hb = (C >> b) & 1
                    if ((C >> mul[a, b]) & 1) != hb:
                        return False
                    if ((C >> ldiv[a, b]) & 1) != hb:
                        return False
    return True


@jit
def p2_witness(mul, ldiv):
    """First (S, C) in increasing order with C a proper nonempty preimage, else (-1, -1)."""
    n = mul.shape[0]
    full = np.int64(1) << n
    for S in range(1, full):
        if S & (S - 1) == 0:
            continue
        if not _closed(mul, ldiv, S):
            continue
        for C in range(1, S):
            if C & ~S:
                continue
            if _is_hom_to_p2(mul, ldiv, S, C):
                return S, C
    return -1, -1
