"""Named families of left quasigroups."""
from __future__ import annotations

from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .algebra import FiniteLeftQuasigroup, from_table, properties
from .errors import HNotFixed, InputError, NotAutomorphism, NotSubgroup, TooSmall, VerificationFailed
from .permgroup import PermutationGroup, _compose
from .terms import Term, Var, div, mul, satisfies_identity

GROUP_CHECK_CHUNK = 64


class FiniteGroupTable:
    """A group on {0..m-1} given by its multiplication table."""

    def __init__(self, table, validate: bool = True):
        t = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InputError("group table must be a nonempty square array")
        m = t.shape[0]
        if t.min() < 0 or t.max() >= m:
            raise InputError("group table entry out of range")
        self.mul = t
        self.order = m
        ids = [e for e in range(m) if np.array_equal(t[e], np.arange(m)) and np.array_equal(t[:, e], np.arange(m))]
        if not ids:
            raise InputError("group table has no identity")
        self.identity = ids[0]
        inv = np.argmax(t == self.identity, axis=1)
        if not np.all(t[np.arange(m), inv] == self.identity):
            raise InputError("group table has an element without inverse")
        self.inv = inv
        if validate:
            self._check_associative()
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def _check_associative(self):
        t = self.mul
        for lo in range(0, self.order, GROUP_CHECK_CHUNK):
            a = np.arange(lo, min(lo + GROUP_CHECK_CHUNK, self.order))
            left = t[t[a][:, :, None], np.arange(self.order)[None, None, :]]
            right = t[a[:, None, None], t[None, :, :]]
            if not np.array_equal(left, right):
                raise InputError("group table is not associative")

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        r = np.arange(n)
        return cls((r[:, None] + r[None, :]) % n, validate=False)

    @classmethod
    def from_permutations(cls, elements: Iterable[Sequence[int]]) -> tuple["FiniteGroupTable", list[tuple]]:
        """Table of a permutation group (composition, right to left); elements sorted."""
        els = sorted(tuple(e) for e in elements)
        index = {e: i for i, e in enumerate(els)}
        m = len(els)
        table = np.empty((m, m), dtype=np.int64)
        for i, g in enumerate(els):
            for j, h in enumerate(els):
                try:
                    table[i, j] = index[_compose(g, h)]
                except KeyError:
                    raise NotSubgroup("element set is not closed under composition") from None
        return cls(table, validate=False), els

    @classmethod
    def from_group(cls, G: PermutationGroup) -> tuple["FiniteGroupTable", list[tuple]]:
        return cls.from_permutations(G.elements())

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = sorted(set(int(h) for h in H))
        if not H or self.identity not in H:
            return False
        sub = self.mul[np.ix_(H, H)]
        return bool(np.isin(sub, H).all())

    def is_automorphism(self, f: Sequence[int]) -> bool:
        f = np.asarray(f, dtype=np.int64)
        if f.shape != (self.order,) or sorted(f.tolist()) != list(range(self.order)):
            return False
        return bool(np.array_equal(f[self.mul], self.mul[f[:, None], f[None, :]]))


def projection(n: int) -> FiniteLeftQuasigroup:
    if n < 1:
        raise InputError("order must be positive")
    return from_table(np.tile(np.arange(n), (n, 1)), name=f"P{n}")


def affine_cyclic(n: int, k: int) -> FiniteLeftQuasigroup:
    """Aff(Z_n, k): x*y = (1-k)x + ky mod n."""
    if n < 1:
        raise InputError("order must be positive")
    if gcd(k % n, n) != 1 and n > 1:
        raise NotAutomorphism(f"y -> {k}y is not an automorphism of Z_{n}")
    r = np.arange(n)
    Q = from_table(((1 - k) * r[:, None] + k * r[None, :]) % n, name=f"Aff(Z{n},{k})")
    if not properties(Q).is_quandle:
        raise VerificationFailed("affine construction did not produce a quandle")
    return Q


def dihedral(n: int) -> FiniteLeftQuasigroup:
    Q = affine_cyclic(n, -1)
    return FiniteLeftQuasigroup(Q.mul, name=f"D{n}", _checked=True)


def subtraction(n: int) -> FiniteLeftQuasigroup:
    """x*y = x - y mod n; unipotent with s(Q) = {0}."""
    if n < 1:
        raise InputError("order must be positive")
    r = np.arange(n)
    Q = from_table((r[:, None] - r[None, :]) % n, name=f"Sub{n}")
    flags = properties(Q)
    if not (flags.is_semimedial and flags.is_unipotent):
        raise VerificationFailed("subtraction algebra failed its own checks")
    return Q


def cyclic_permutation(n: int) -> FiniteLeftQuasigroup:
    """Permutation algebra with a*b = b+1 mod n."""
    if n < 1:
        raise InputError("order must be positive")
    return from_table(np.tile((np.arange(n) + 1) % n, (n, 1)), name=f"Cyc{n}")


def constant_power(n: int, carrier_size: int) -> FiniteLeftQuasigroup:
    """A member of the variety L_x^n(x) = L_y^n(y) that is not latin.

    e = 0 has L_e = 1.  Every other a gets the (n+1)-point cycle
    (a, c_1, ..., c_{n-1}, 0) with the c_i the smallest unused points, so
    L_a^n(a) = 0 for all a.
    """
    if n < 1:
        raise InputError("n must be positive")
    m = carrier_size
    if m < n + 1:
        raise TooSmall(f"carrier of size {m} cannot hold cycles of {n + 1} points")
    rows = []
    for a in range(m):
        row = list(range(m))
        if a != 0:
            fill = [c for c in range(1, m) if c != a][: n - 1]
            cycle = [a, *fill, 0]
            for i, x in enumerate(cycle):
                row[x] = cycle[(i + 1) % len(cycle)]
        rows.append(row)
    Q = from_table(rows, name=f"ConstPow({n},{m})")
    ok, cex = satisfies_identity(Q, f"L[x]^{n}(x)=L[y]^{n}(y)")
    if not ok:
        raise VerificationFailed(f"constant-power identity fails at {cex}")
    return Q


def constant_power_malcev_term(n: int) -> Term:
    """L_x^{-n} L_y^{n}(z)."""
    from .terms import L

    x, y, z = Var("x"), Var("y"), Var("z")
    return L(x, -n, L(y, n, z))


def _square_power(t: Term, k: int) -> Term:
    for _ in range(k):
        t = mul(t, t)
    return t


def multipotent_malcev_term(n: int) -> Term:
    """Mal'cev term for n-multipotent left quasigroups.

    m(x,y,z) = (L_{s^{n-1}(x)} ... L_x)^{-1} L_{s^{n-1}(y)} ... L_y (z), with the
    products running over s^0 .. s^{n-1}; m(y,x,x) = y then follows from
    s^n(x) = s^n(y).
    """
    if n < 1:
        raise InputError("n must be positive")
    x, y, z = Var("x"), Var("y"), Var("z")
    t: Term = z
    for k in range(n):
        t = mul(_square_power(y, k), t)
    for k in reversed(range(n)):
        t = div(_square_power(x, k), t)
    return t


def coset_quandle(G: FiniteGroupTable, H: Iterable[int], f: Sequence[int]) -> FiniteLeftQuasigroup:
    """Q(G, H, f): left cosets of H with aH * bH = a f(a^-1 b) H."""
    H = sorted(set(int(h) for h in H))
    if not G.is_subgroup(H):
        raise NotSubgroup(f"{H} is not a subgroup")
    fa = np.asarray(f, dtype=np.int64)
    if not G.is_automorphism(fa):
        raise NotAutomorphism("f is not an automorphism of G")
    if any(fa[h] != h for h in H):
        raise HNotFixed("H is not fixed pointwise by f")
    m = G.order
    coset_of = np.full(m, -1, dtype=np.int64)
    reps = []
    for a in range(m):
        if coset_of[a] < 0:
            coset_of[G.mul[a, H]] = len(reps)
            reps.append(a)
    reps_arr = np.array(reps)
    k = len(reps)
    a = reps_arr[:, None]
    b = reps_arr[None, :]
    prod = G.mul[a, fa[G.mul[G.inv[a], b]]]
    table = coset_of[prod]
    Q = from_table(table.reshape(k, k), name="Coset")
    if not properties(Q).is_quandle:
        raise VerificationFailed("coset construction did not produce a quandle")
    return Q


def displacement_coset_quandle(Q: FiniteLeftQuasigroup, a: int) -> FiniteLeftQuasigroup:
    """Q(Dis(Q), Dis(Q)_a, conjugation by L_a)."""
    from .action import dis
    from .permgroup import _inverse

    D = dis(Q)
    G, els = FiniteGroupTable.from_group(D)
    index = {g: i for i, g in enumerate(els)}
    La = Q.row(a)
    La_inv = _inverse(La)
    f = [index[_compose(_compose(La, g), La_inv)] for g in els]
    H = [i for i, g in enumerate(els) if g[a] == a]
    return coset_quandle(G, H, f)


def one_element_quandle() -> FiniteLeftQuasigroup:
    return from_table([[0]], name="T1")


FAMILIES = {
    "projection": projection,
    "affine": affine_cyclic,
    "dihedral": dihedral,
    "constpow": constant_power,
    "subtraction": subtraction,
    "cyclic": cyclic_permutation,
}


def named(name: str, *args: int) -> Optional[FiniteLeftQuasigroup]:
    return FAMILIES[name](*args)
