"""Exhaustive axiom checks.

Loop kernels return the first violating tuple (or ``-1`` in slot 0 when the
law holds); the numpy twins only answer yes/no and are used when numba is off.
"""
from __future__ import annotations

import numpy as np

from .._accel import NUMBA_ENABLED, jit


@jit
def rack_violation(mul):
    # x*(y*z) = (x*y)*(x*z)
    n = mul.shape[0]
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[x, mul[y, z]] != mul[xy, mul[x, z]]:
                    return (x, y, z)
    return (-1, -1, -1)


@jit
def semimedial_violation(mul):
    # (x*y)*(x*z) = (x*x)*(y*z)
    n = mul.shape[0]
    for x in range(n):
        xx = mul[x, x]
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                if mul[xy, mul[x, z]] != mul[xx, mul[y, z]]:
                    return (x, y, z)
    return (-1, -1, -1)


@jit
def medial_violation(mul):
    # (x*y)*(z*t) = (x*z)*(y*t)
    n = mul.shape[0]
    for x in range(n):
        for y in range(n):
            xy = mul[x, y]
            for z in range(n):
                xz = mul[x, z]
                for t in range(n):
                    if mul[xy, mul[z, t]] != mul[xz, mul[y, t]]:
                        return (x, y, z, t)
    return (-1, -1, -1, -1)


@jit
def involutory_violation(mul):
    # x*(x*y) = y
    n = mul.shape[0]
    for x in range(n):
        for y in range(n):
            if mul[x, mul[x, y]] != y:
                return (x, y)
    return (-1, -1)


def _rack_np(mul):
    x, y, z = np.indices((mul.shape[0],) * 3, sparse=True)
    return bool(np.all(mul[x, mul[y, z]] == mul[mul[x, y], mul[x, z]]))


def _semimedial_np(mul):
    x, y, z = np.indices((mul.shape[0],) * 3, sparse=True)
    d = np.diagonal(mul)
    return bool(np.all(mul[mul[x, y], mul[x, z]] == mul[d[x], mul[y, z]]))


def _medial_np(mul):
    x, y, z, t = np.indices((mul.shape[0],) * 4, sparse=True)
    return bool(np.all(mul[mul[x, y], mul[z, t]] == mul[mul[x, z], mul[y, t]]))


def _involutory_np(mul):
    x, y = np.indices(mul.shape, sparse=True)
    return bool(np.all(mul[x, mul[x, y]] == y))


def is_rack(mul) -> bool:
    if NUMBA_ENABLED:
        return rack_violation(mul)[0] < 0
    return _rack_np(mul)


def is_semimedial(mul) -> bool:
    if NUMBA_ENABLED:
        return semimedial_violation(mul)[0] < 0
    return _semimedial_np(mul)


def is_medial(mul) -> bool:
    if NUMBA_ENABLED:
        return medial_violation(mul)[0] < 0
    return _medial_np(mul)


def is_involutory(mul) -> bool:
    if NUMBA_ENABLED:
        return involutory_violation(mul)[0] < 0
    return _involutory_np(mul)
