"""Permutation groups by explicit element enumeration.

Groups here act on at most a few dozen points with orders far below the
default cap, so membership is answered from the enumerated element set rather
than a stabilizer chain.  Products compose right to left: ``(p * q)(x) =
p(q(x))``.
"""
from __future__ import annotations

from collections import deque
from operator import itemgetter
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from ._accel import NUMBA_ENABLED
from .errors import GroupTooLarge, InputError
from .kernels import groups as _gk
from .partition import Partition

DEFAULT_CAP = 10**6


def _compose(p: tuple, q: tuple) -> tuple:
    if len(q) > 1:
        return itemgetter(*q)(p)
    return tuple(p[i] for i in q)


def _inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class Permutation(tuple):
    """Image tuple of a bijection of range(n); hashes like the plain tuple."""

    def __new__(cls, images: Iterable[int]):
        p = super().__new__(cls, (int(x) for x in images))
        if sorted(p) != list(range(len(p))):
            raise InputError(f"{tuple(p)} is not a permutation")
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return tuple.__new__(cls, range(n))

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple:
        return tuple(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other):  # type: ignore[override]
        return Permutation._raw(_compose(self, other))

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inverse(self))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(len(self))
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate_by(self, g) -> "Permutation":
        """g * self * g^-1."""
        return Permutation._raw(_compose(_compose(g, self), _inverse(g)))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen or self[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"


def commutator(g: tuple, h: tuple) -> tuple:
    """[g, h] = g^-1 h^-1 g h."""
    return _compose(_compose(_inverse(g), _inverse(h)), _compose(g, h))


def _enumerate_python(degree: int, gens: list[tuple], cap: int) -> frozenset:
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise GroupTooLarge(cap)
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _enumerate_kernel(degree: int, gens: list[tuple], cap: int) -> frozenset:
    arr = np.asarray(gens, dtype=np.int64).reshape(len(gens), degree)
    elems, overflow = _gk.group_closure(arr, cap)
    if overflow:
        raise GroupTooLarge(cap)
    return frozenset(map(tuple, elems.tolist()))


class PermutationGroup:
    """Subgroup of Sym(degree) given by generators, elements computed lazily.

    The element cache is filled at most once (single writer); afterwards the
    object is read-only.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 cap: int = DEFAULT_CAP, elements: Optional[Iterable[tuple]] = None):
        self.degree = int(degree)
        ident = tuple(range(self.degree))
        gens: list[tuple] = []
        seen = set()
        for g in generators:
            t = tuple(int(x) for x in g)
            if len(t) != self.degree:
                raise InputError(f"generator {t} has wrong degree (expected {self.degree})")
            if t != ident and t not in seen:
                seen.add(t)
                gens.append(t)
        self._gens = gens
        self.cap = cap
        self._elements = frozenset(elements) if elements is not None else None

    @classmethod
    def trivial(cls, degree: int) -> "PermutationGroup":
        return cls(degree, (), elements=[tuple(range(degree))])

    @classmethod
    def from_elements(cls, degree: int, elements: Iterable[tuple], cap: int = DEFAULT_CAP) -> "PermutationGroup":
        """Group whose element set is already known (e.g. a filtered subgroup)."""
        elems = frozenset(tuple(e) for e in elements)
        return cls(degree, _small_generating_set(degree, elems), cap=cap, elements=elems)

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._raw(g) for g in self._gens]

    @property
    def raw_generators(self) -> list[tuple]:
        return list(self._gens)

    def elements(self) -> frozenset:
        if self._elements is None:
            if not self._gens:
                self._elements = frozenset([tuple(range(self.degree))])
            elif NUMBA_ENABLED and self.degree > 0:
                self._elements = _enumerate_kernel(self.degree, self._gens, self.cap)
            else:
                self._elements = _enumerate_python(self.degree, self._gens, self.cap)
        return self._elements

    def __iter__(self) -> Iterator[Permutation]:
        for e in sorted(self.elements()):
            yield Permutation._raw(e)

    def order(self) -> int:
        return len(self.elements())

    def __len__(self) -> int:
        return self.order()

    def __contains__(self, p) -> bool:
        return tuple(p) in self.elements()

    def is_trivial(self) -> bool:
        return not self._gens

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements() == other.elements()

    def __hash__(self) -> int:
        return hash((self.degree, self.elements()))

    def __le__(self, other: "PermutationGroup") -> bool:
        """Subgroup test."""
        els = other.elements()
        return all(g in els for g in self._gens)

    def __lt__(self, other: "PermutationGroup") -> bool:
        return self <= other and self.order() < other.order()

    def __repr__(self) -> str:
        order = len(self._elements) if self._elements is not None else "?"
        return f"<PermutationGroup degree={self.degree} gens={len(self._gens)} order={order}>"

    def is_normalized_by(self, gens: Iterable[tuple]) -> bool:
        els = self.elements()
        for a in gens:
            a_inv = _inverse(a)
            for g in self._gens:
                if _compose(_compose(a, g), a_inv) not in els:
                    return False
        return True

    def is_normal_in(self, ambient: "PermutationGroup") -> bool:
        return self <= ambient and self.is_normalized_by(ambient.raw_generators)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "order": self.order(), "generators": [list(g) for g in self._gens]}


def _small_generating_set(degree: int, elements: frozenset) -> list[tuple]:
    """Greedy generators: add elements until their closure is everything."""
    ident = tuple(range(degree))
    gens: list[tuple] = []
    reached = {ident}
    for e in sorted(elements):
        if e in reached:
            continue
        gens.append(e)
        reached = set(_enumerate_python(degree, gens, len(elements) + 1))
        if len(reached) == len(elements):
            break
    return gens


def orbits(G: PermutationGroup) -> Partition:
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.raw_generators:
        for x, y in enumerate(g):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return Partition(tuple(find(x) for x in range(G.degree)))


def orbit(G: PermutationGroup, point: int) -> frozenset[int]:
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in G.raw_generators:
            y = g[x]
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return frozenset(seen)


def elements(G: PermutationGroup, cap: Optional[int] = None) -> frozenset:
    if cap is not None and G._elements is None:
        G.cap = cap
    els = G.elements()
    if cap is not None and len(els) > cap:
        raise GroupTooLarge(cap)
    return els


def is_transitive(G: PermutationGroup) -> bool:
    return G.degree <= 1 or orbits(G).num_blocks == 1


def stabilizer(G: PermutationGroup, point: int) -> PermutationGroup:
    return PermutationGroup.from_elements(G.degree, (g for g in G.elements() if g[point] == point), G.cap)


def is_regular(G: PermutationGroup) -> bool:
    return is_transitive(G) and G.order() == G.degree


def generated(degree: int, gens: Iterable[tuple], cap: int = DEFAULT_CAP) -> PermutationGroup:
    return PermutationGroup(degree, gens, cap=cap)


def normal_closure(ambient, seeds: Iterable[Sequence[int]], cap: Optional[int] = None) -> PermutationGroup:
    """Least subgroup containing ``seeds`` and closed under conjugation by ``ambient``.

    ``ambient`` is a PermutationGroup or an iterable of generators.
    """
    if isinstance(ambient, PermutationGroup):
        amb_gens = ambient.raw_generators
        degree = ambient.degree
        cap = cap if cap is not None else ambient.cap
    else:
        amb_gens = [tuple(g) for g in ambient]
        degree = len(amb_gens[0]) if amb_gens else None
        cap = cap if cap is not None else DEFAULT_CAP
    seeds = [tuple(s) for s in seeds]
    if degree is None:
        if not seeds:
            raise InputError("cannot infer degree from empty generator lists")
        degree = len(seeds[0])
    N = PermutationGroup(degree, seeds, cap=cap)
    while True:
        els = N.elements()
        extra = []
        for g in N.raw_generators:
            for a in amb_gens:
                c = _compose(_compose(a, g), _inverse(a))
                if c not in els and c not in extra:
                    extra.append(c)
        if not extra:
            return N
        N = PermutationGroup(degree, N.raw_generators + extra, cap=cap)


def commutator_subgroup(G: PermutationGroup, H: PermutationGroup, check_normal: bool = False) -> PermutationGroup:
    """[G, H] for G, H normal in a common ambient group.

    Computed as the normal closure in <G, H> of the commutators of generators.
    With ``check_normal`` the normality assumption is verified first.
    """
    if G.degree != H.degree:
        raise InputError("groups act on different degrees")
    ambient = PermutationGroup(G.degree, G.raw_generators + H.raw_generators, cap=G.cap)
    if check_normal:
        for X in (G, H):
            if not X.is_normalized_by(ambient.raw_generators):
                raise InputError("commutator_subgroup expects normal subgroups of <G, H>")
    seeds = [commutator(g, h) for g in G.raw_generators for h in H.raw_generators]
    return normal_closure(ambient, seeds)


def derived_series(G: PermutationGroup) -> list[PermutationGroup]:
    series = [G]
    while True:
        D = commutator_subgroup(series[-1], series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)


def is_solvable(G: PermutationGroup) -> bool:
    return derived_series(G)[-1].is_trivial()


def center(G: PermutationGroup) -> PermutationGroup:
    gens = G.raw_generators
    central = (z for z in G.elements() if all(_compose(z, h) == _compose(h, z) for h in gens))
    return PermutationGroup.from_elements(G.degree, central, G.cap)


def is_abelian(G: PermutationGroup) -> bool:
    gens = G.raw_generators
    return all(_compose(g, h) == _compose(h, g) for i, g in enumerate(gens) for h in gens[i + 1:])


def intersection(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    return PermutationGroup.from_elements(G.degree, G.elements() & H.elements(), G.cap)


def join(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    return PermutationGroup(G.degree, G.raw_generators + H.raw_generators, cap=G.cap)


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        return PermutationGroup.trivial(n)
    cyc = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return PermutationGroup(n, [cyc, swap])
