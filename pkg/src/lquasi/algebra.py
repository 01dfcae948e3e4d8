"""Finite left quasigroups as validated multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import NotCongruence, NotLeftQuasigroup, ShapeError, TooLarge
from .kernels import closure as _ck
from .kernels import laws as _laws
from .partition import Partition

SUBALGEBRA_MAX_ORDER = 16
PRODUCT_MAX_ORDER = 4096
ISOMORPHISM_MAX_ORDER = 32


class FiniteLeftQuasigroup:
    """A left quasigroup on {0..n-1}.

    ``mul[a, b]`` is ``a*b``; every row is a permutation.  The left division
    table ``ldiv[a, b] = a\\b`` is the row-wise inverse, built once.  Both
    arrays are read-only.
    """

    __slots__ = ("mul", "ldiv", "name", "_key")

    def __init__(self, mul: np.ndarray, name: Optional[str] = None, *, _checked: bool = False):
        if not _checked:
            mul = _validate(mul)
        else:
            mul = np.ascontiguousarray(mul, dtype=np.int64)
        n = mul.shape[0]
        ldiv = np.empty_like(mul)
        rows = np.arange(n)[:, None]
        ldiv[rows, mul] = np.arange(n)[None, :]
        mul.setflags(write=False)
        ldiv.setflags(write=False)
        self.mul = mul
        self.ldiv = ldiv
        self.name = name
        self._key = None

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self) -> int:
        return self.order

    def op(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def div(self, a: int, b: int) -> int:
        return int(self.ldiv[a, b])

    def row(self, a: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.mul[a])

    def table(self) -> list[list[int]]:
        return self.mul.tolist()

    def squares(self) -> np.ndarray:
        return np.diagonal(self.mul).copy()

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.mul.astype(np.int64).tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLeftQuasigroup) and self.order == other.order and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.order, self.key()))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteLeftQuasigroup{label} order={self.order}>"


def _validate(table) -> np.ndarray:
    try:
        rows = [list(r) for r in table]
    except TypeError as exc:
        raise ShapeError("table must be a sequence of rows") from exc
    n = len(rows)
    if n == 0:
        raise ShapeError("empty table")
    if any(len(r) != n for r in rows):
        raise ShapeError(f"table is not square ({n} rows, row lengths {[len(r) for r in rows]})")
    try:
        arr = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeError("entries must be integers") from exc
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ShapeError(f"entries must lie in 0..{n - 1}")
    target = np.arange(n)
    for a in range(n):
        if not np.array_equal(np.sort(arr[a]), target):
            raise NotLeftQuasigroup(a)
    return np.ascontiguousarray(arr)


def from_table(table, name: Optional[str] = None) -> FiniteLeftQuasigroup:
    return FiniteLeftQuasigroup(table, name)


def ldiv(Q: FiniteLeftQuasigroup, a: int, b: int) -> int:
    """The unique c with a*c = b."""
    return int(Q.ldiv[a, b])


@dataclass(frozen=True)
class PropertyFlags:
    is_rack: bool
    is_quandle: bool
    is_semimedial: bool
    is_medial: bool
    is_involutory: bool
    is_idempotent: bool
    is_latin: bool
    is_permutation: bool
    is_projection: bool
    is_2divisible: bool
    is_faithful: bool
    is_cayley: bool
    multipotency_degree: Optional[int]

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @property
    def is_unipotent(self) -> bool:
        return self.multipotency_degree is not None and self.multipotency_degree <= 1


def multipotency_degree(Q: FiniteLeftQuasigroup) -> Optional[int]:
    """Least m with |s^m(Q)| = 1 for the squaring map s, or None."""
    s = Q.squares()
    image = np.arange(Q.order)
    for m in range(Q.order + 1):
        if len(np.unique(image)) == 1:
            return m
        image = s[image]
    return None


def is_latin(Q: FiniteLeftQuasigroup) -> bool:
    n = Q.order
    return all(len(set(Q.mul[:, b].tolist())) == n for b in range(n))


def properties(Q: FiniteLeftQuasigroup) -> PropertyFlags:
    mul = Q.mul
    n = Q.order
    diag = Q.squares()
    idempotent = bool(np.all(diag == np.arange(n)))
    rack = _laws.is_rack(mul)
    rows_equal = bool(np.all(mul == mul[0]))
    return PropertyFlags(
        is_rack=rack,
        is_quandle=rack and idempotent,
        is_semimedial=_laws.is_semimedial(mul),
        is_medial=_laws.is_medial(mul),
        is_involutory=_laws.is_involutory(mul),
        is_idempotent=idempotent,
        is_latin=is_latin(Q),
        is_permutation=rows_equal,
        is_projection=rows_equal and bool(np.all(mul[0] == np.arange(n))),
        is_2divisible=len(np.unique(diag)) == n,
        is_faithful=len({r.tobytes() for r in mul}) == n,
        is_cayley=compatibility_violation(Q, cayley_labels(Q)) is None,
        multipotency_degree=multipotency_degree(Q),
    )


def cayley_labels(Q: FiniteLeftQuasigroup) -> np.ndarray:
    seen: dict[bytes, int] = {}
    return np.array([seen.setdefault(r.tobytes(), len(seen)) for r in Q.mul], dtype=np.int64)


def compatibility_violation(Q: FiniteLeftQuasigroup, labels) -> Optional[tuple[int, int, int, str]]:
    """First (a, b, c, op) with a~b whose translate by c breaks the partition.

    ``op`` names the failing translate: ``"a*c"``, ``"c*a"``, ``"a\\c"`` or
    ``"c\\a"``.  Pairs (a, b) with a < b are scanned lexicographically.
    """
    lab = np.asarray(labels, dtype=np.int64)
    n = Q.order
    ML = lab[Q.mul]
    DL = lab[Q.ldiv]
    rep = np.empty(n, dtype=np.int64)
    first: dict[int, int] = {}
    for x in range(n):
        rep[x] = first.setdefault(int(lab[x]), x)
    # comparing each element with its block representative covers all pairs
    ok = (
        np.all(ML == ML[rep], axis=1)
        & np.all(ML == ML[:, rep], axis=0)
        & np.all(DL == DL[rep], axis=1)
        & np.all(DL == DL[:, rep], axis=0)
    )
    if ok.all():
        return None
    for a in range(n):
        for b in range(a + 1, n):
            if lab[a] != lab[b]:
                continue
            for c in range(n):
                if ML[a, c] != ML[b, c]:
                    return (a, b, c, "a*c")
                if ML[c, a] != ML[c, b]:
                    return (a, b, c, "c*a")
                if DL[a, c] != DL[b, c]:
                    return (a, b, c, "a\\c")
                if DL[c, a] != DL[c, b]:
                    return (a, b, c, "c\\a")
    raise AssertionError("unreachable: vectorized and scalar checks disagree")


def _mask(Q, S: Iterable[int]) -> np.ndarray:
    m = np.zeros(Q.order, dtype=np.bool_)
    for x in S:
        m[int(x)] = True
    return m


def subalgebra_closure(Q: FiniteLeftQuasigroup, S: Iterable[int]) -> frozenset[int]:
    inside = _ck.closure(Q.mul, Q.ldiv, _mask(Q, S))
    return frozenset(int(x) for x in np.flatnonzero(inside))


def _bits_to_set(m: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if (m >> i) & 1)


def subalgebra_masks(Q: FiniteLeftQuasigroup, max_order: int = SUBALGEBRA_MAX_ORDER) -> np.ndarray:
    if Q.order > max_order:
        raise TooLarge(f"subalgebra enumeration capped at order {max_order}, got {Q.order}")
    return _ck.closed_sets(Q.mul, Q.ldiv)


def all_subalgebras(Q: FiniteLeftQuasigroup, max_order: int = SUBALGEBRA_MAX_ORDER) -> list[frozenset[int]]:
    """Every nonempty subalgebra, smallest first, ties broken by sorted elements."""
    subs = [_bits_to_set(int(m), Q.order) for m in subalgebra_masks(Q, max_order)]
    subs.sort(key=lambda s: (len(s), sorted(s)))
    return subs


def subalgebra(Q: FiniteLeftQuasigroup, S: Iterable[int]) -> tuple[FiniteLeftQuasigroup, list[int]]:
    """Induced algebra on a closed subset; returns it with the inclusion map."""
    elems = sorted(int(x) for x in S)
    if subalgebra_closure(Q, elems) != frozenset(elems):
        raise ShapeError(f"{elems} is not closed")
    index = {x: i for i, x in enumerate(elems)}
    sub = Q.mul[np.ix_(elems, elems)]
    table = np.vectorize(index.__getitem__, otypes=[np.int64])(sub) if elems else sub
    return FiniteLeftQuasigroup(np.ascontiguousarray(table), _checked=True), elems


def quotient(Q: FiniteLeftQuasigroup, theta) -> FiniteLeftQuasigroup:
    """Q/theta with blocks numbered by least element."""
    part = theta if isinstance(theta, Partition) else Partition.from_labels(theta)
    if part.size != Q.order:
        raise ShapeError("partition size does not match algebra order")
    witness = compatibility_violation(Q, part.labels)
    if witness is not None:
        raise NotCongruence(witness)
    lab = part.array()
    reps = [b[0] for b in part.blocks()]
    table = lab[Q.mul[np.ix_(reps, reps)]]
    return FiniteLeftQuasigroup(np.ascontiguousarray(table), _checked=True)


def direct_product(Q: FiniteLeftQuasigroup, R: FiniteLeftQuasigroup,
                   max_order: int = PRODUCT_MAX_ORDER) -> FiniteLeftQuasigroup:
    """Pairs (a, b) are encoded as a*|R| + b."""
    n, m = Q.order, R.order
    if n * m > max_order:
        raise TooLarge(f"product order {n * m} exceeds {max_order}")
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = Q.mul[a[:, None], a[None, :]] * m + R.mul[b[:, None], b[None, :]]
    name = f"{Q.name}x{R.name}" if Q.name and R.name else None
    return FiniteLeftQuasigroup(np.ascontiguousarray(table), name, _checked=True)


def relabel(Q: FiniteLeftQuasigroup, sigma: Sequence[int]) -> FiniteLeftQuasigroup:
    """The copy of Q transported along the bijection ``sigma``."""
    s = np.asarray(sigma, dtype=np.int64)
    inv = np.argsort(s)
    table = s[Q.mul[np.ix_(inv, inv)]]
    return FiniteLeftQuasigroup(np.ascontiguousarray(table), _checked=True)


def _cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    n = len(perm)
    seen = np.zeros(n, dtype=bool)
    lengths = []
    for i in range(n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            lengths.append(k)
    return tuple(sorted(lengths))


def _signatures(Q: FiniteLeftQuasigroup) -> list[tuple]:
    n = Q.order
    diag = Q.squares()
    lam = cayley_labels(Q)
    lam_sizes = np.bincount(lam)
    square_counts = np.bincount(diag, minlength=n)
    return [
        (
            bool(diag[a] == a),
            _cycle_type(Q.mul[a]),
            int(lam_sizes[lam[a]]),
            len(set(Q.mul[:, a].tolist())),
            int(square_counts[a]),
        )
        for a in range(n)
    ]


def find_isomorphism(Q: FiniteLeftQuasigroup, R: FiniteLeftQuasigroup,
                     max_order: int = ISOMORPHISM_MAX_ORDER) -> Optional[list[int]]:
    """A bijection sigma with sigma(a*b) = sigma(a)*sigma(b), or None."""
    n = Q.order
    if R.order != n:
        return None
    if n > max_order:
        raise TooLarge(f"isomorphism search capped at order {max_order}")
    sq, sr = _signatures(Q), _signatures(R)
    if sorted(sq) != sorted(sr):
        return None
    candidates = [[b for b in range(n) if sr[b] == sq[a]] for a in range(n)]
    qm, qd = Q.mul.tolist(), Q.ldiv.tolist()
    rm, rd = R.mul.tolist(), R.ldiv.tolist()

    def propagate(sigma, used):
        changed = True
        while changed:
            changed = False
            assigned = [a for a in range(n) if sigma[a] >= 0]
            for a in assigned:
                for b in assigned:
                    for c, target in ((qm[a][b], rm[sigma[a]][sigma[b]]), (qd[a][b], rd[sigma[a]][sigma[b]])):
                        if sigma[c] >= 0:
                            if sigma[c] != target:
                                return False
                        else:
                            if used[target] or sr[target] != sq[c]:
                                return False
                            sigma[c] = target
                            used[target] = True
                            changed = True
        return True

    def search(sigma, used):
        try:
            a = sigma.index(-1)
        except ValueError:
            return list(sigma)
        for b in candidates[a]:
            if used[b]:
                continue
            s2, u2 = list(sigma), list(used)
            s2[a] = b
            u2[b] = True
            if propagate(s2, u2):
                found = search(s2, u2)
                if found is not None:
                    return found
        return None

    return search([-1] * n, [False] * n)


def is_isomorphism(Q: FiniteLeftQuasigroup, R: FiniteLeftQuasigroup, sigma: Sequence[int]) -> bool:
    s = np.asarray(sigma, dtype=np.int64)
    if sorted(s.tolist()) != list(range(R.order)) or Q.order != R.order:
        return False
    return bool(np.array_equal(s[Q.mul], R.mul[s[:, None], s[None, :]]))


def one_element() -> FiniteLeftQuasigroup:
    return FiniteLeftQuasigroup(np.zeros((1, 1), dtype=np.int64), "trivial", _checked=True)
