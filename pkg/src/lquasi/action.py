"""Left multiplication and displacement groups and the relations they induce.

For a congruence alpha:

* ``dis_rel(Q, alpha)`` is the normal closure in LMlt(Q) of
  {L_a L_b^-1 : a alpha b};
* ``lmlt_ker(Q, alpha)`` are the elements of LMlt(Q) fixing every block of
  alpha, and ``dis_ker(Q, alpha)`` is its intersection with Dis(Q).

For a subgroup N of LMlt(Q), ``orbit_partition`` gives the N-orbits and
``cn_relation`` relates a and b when L_a L_b^-1 lies in N.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .algebra import FiniteLeftQuasigroup, cayley_labels, compatibility_violation, properties, quotient
from .partition import Partition
from .permgroup import (
    DEFAULT_CAP,
    Permutation,
    PermutationGroup,
    _compose,
    _inverse,
    center,
    commutator_subgroup,
    is_solvable,
    normal_closure,
    orbits,
)


def left_translation(Q: FiniteLeftQuasigroup, a: int) -> Permutation:
    return Permutation._raw(Q.row(a))


@lru_cache(maxsize=512)
def lmlt(Q: FiniteLeftQuasigroup, cap: int = DEFAULT_CAP) -> PermutationGroup:
    return PermutationGroup(Q.order, (Q.row(a) for a in range(Q.order)), cap=cap)


def _partition(Q, alpha) -> Partition:
    if alpha is None:
        return Partition.total(Q.order)
    return alpha if isinstance(alpha, Partition) else Partition.from_labels(alpha)


@lru_cache(maxsize=2048)
def _dis_rel(Q: FiniteLeftQuasigroup, alpha: Partition, cap: int) -> PermutationGroup:
    G = lmlt(Q, cap)
    seeds = []
    for block in alpha.blocks():
        rep_inv = _inverse(Q.row(block[0]))
        for a in block[1:]:
            seeds.append(_compose(Q.row(a), rep_inv))
    if not seeds:
        return PermutationGroup.trivial(Q.order)
    return normal_closure(G, seeds, cap=cap)


def dis_rel(Q: FiniteLeftQuasigroup, alpha=None, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Dis_alpha; with ``alpha=None`` this is Dis(Q)."""
    return _dis_rel(Q, _partition(Q, alpha), cap)


def dis(Q: FiniteLeftQuasigroup, cap: int = DEFAULT_CAP) -> PermutationGroup:
    return dis_rel(Q, None, cap)


def _block_kernel(G: PermutationGroup, alpha: Partition) -> PermutationGroup:
    lab = alpha.array()
    els = G.elements()
    if alpha.is_total():
        return G
    arr = np.array(sorted(els), dtype=np.int64).reshape(len(els), G.degree)
    keep = np.all(lab[arr] == lab[None, :], axis=1)
    return PermutationGroup.from_elements(G.degree, map(tuple, arr[keep].tolist()), G.cap)


@lru_cache(maxsize=2048)
def _lmlt_ker(Q, alpha: Partition, cap: int) -> PermutationGroup:
    return _block_kernel(lmlt(Q, cap), alpha)


@lru_cache(maxsize=2048)
def _dis_ker(Q, alpha: Partition, cap: int) -> PermutationGroup:
    return _block_kernel(dis(Q, cap), alpha)


def lmlt_ker(Q: FiniteLeftQuasigroup, alpha, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """LMlt^alpha: kernel of LMlt(Q) -> LMlt(Q/alpha)."""
    return _lmlt_ker(Q, _partition(Q, alpha), cap)


def dis_ker(Q: FiniteLeftQuasigroup, alpha, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Dis^alpha = LMlt^alpha intersected with Dis(Q)."""
    return _dis_ker(Q, _partition(Q, alpha), cap)


def cayley_kernel(Q: FiniteLeftQuasigroup) -> Partition:
    return Partition.from_labels(cayley_labels(Q))


def orbit_partition(Q: FiniteLeftQuasigroup, N: PermutationGroup) -> Partition:
    return orbits(N)


def cn_relation(Q: FiniteLeftQuasigroup, N: PermutationGroup) -> Partition:
    """a ~ b iff L_a L_b^-1 is in N.

    An equivalence for every subgroup N.  On non-semimedial algebras it need
    not be a congruence and is exposed as a relation only.
    """
    els = N.elements()
    n = Q.order
    rows = [Q.row(a) for a in range(n)]
    inv = [_inverse(r) for r in rows]
    labels = list(range(n))
    for a in range(n):
        for b in range(a):
            if labels[b] == b and _compose(rows[a], inv[b]) in els:
                labels[a] = b
                break
    return Partition(tuple(labels))


class SquaringTwist:
    """h -> h^s, induced by L_a -> L_{s(a)} with s(a) = a*a.

    When s is a bijection this is conjugation by s.  Otherwise the map is
    built along a breadth-first spanning tree of LMlt(Q) labelled by
    generator words; ``well_defined`` records whether every other path to the
    same element agreed.
    """

    def __init__(self, Q: FiniteLeftQuasigroup, cap: int = DEFAULT_CAP):
        self.Q = Q
        s = Q.squares()
        self.bijective = len(set(s.tolist())) == Q.order
        self._s = tuple(int(x) for x in s)
        self._map: Optional[dict] = None
        self.well_defined = True
        self.cap = cap
        if not self.bijective:
            self._build()

    def _build(self):
        Q = self.Q
        rows = [Q.row(a) for a in range(Q.order)]
        images = [rows[self._s[a]] for a in range(Q.order)]
        ident = tuple(range(Q.order))
        phi = {ident: ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            px = phi[x]
            for a, g in enumerate(rows):
                y = _compose(x, g)
                py = _compose(px, images[a])
                known = phi.get(y)
                if known is None:
                    phi[y] = py
                    queue.append(y)
                elif known != py:
                    self.well_defined = False
        self._map = phi

    def __call__(self, h) -> tuple:
        h = tuple(h)
        if self.bijective:
            s = self._s
            s_inv = _inverse(s)
            return _compose(_compose(s, h), s_inv)
        return self._map[h]


@lru_cache(maxsize=256)
def squaring_twist(Q: FiniteLeftQuasigroup) -> SquaringTwist:
    return SquaringTwist(Q)


@dataclass
class AdmissibleSubgroup:
    group: PermutationGroup
    witness_admissible: bool
    semimedial_twist_checked: bool
    normal: bool
    orbits_within_cn: bool
    twist_closed: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "order": self.group.order(),
            "admissible": self.witness_admissible,
            "normal": self.normal,
            "orbits_within_cn": self.orbits_within_cn,
            "semimedial_twist_checked": self.semimedial_twist_checked,
            "twist_closed": self.twist_closed,
        }


def is_admissible(Q: FiniteLeftQuasigroup, N: PermutationGroup, semimedial: Optional[bool] = None) -> AdmissibleSubgroup:
    """Normal in LMlt(Q) with N-orbits inside c_N; for semimedial Q also N^s <= N."""
    G = lmlt(Q, N.cap)
    normal = N <= G and N.is_normalized_by(G.raw_generators)
    within = orbit_partition(Q, N) <= cn_relation(Q, N)
    if semimedial is None:
        semimedial = properties(Q).is_semimedial
    twist_closed = None
    if semimedial:
        tw = squaring_twist(Q)
        els = N.elements()
        twist_closed = tw.well_defined and all(tw(g) in els for g in N.raw_generators)
    return AdmissibleSubgroup(N, normal and within, bool(semimedial), normal, within, twist_closed)


@dataclass
class LawCheck:
    law: str
    passed: bool
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"law": self.law, "passed": self.passed, "witness": self.witness}


@dataclass
class CheckReport:
    name: str
    checks: list[LawCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, law: str, passed: bool, witness: Optional[dict] = None):
        self.checks.append(LawCheck(law, bool(passed), witness))

    def failures(self) -> list[LawCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def canonical_admissibles(Q: FiniteLeftQuasigroup, congruences=None, cap: int = DEFAULT_CAP,
                          max_rounds: int = 8) -> dict[str, PermutationGroup]:
    """The admissible family used by the obstruction and Galois checks.

    Starts from 1, Dis(Q), Dis_alpha and Dis^alpha over Con(Q) and closes under
    [LMlt, N], [N, M] and, when squaring is bijective, Z(N).  Keys describe how
    each member arose; duplicates (same element set) keep the first name.
    """
    from .congruence import congruence_lattice

    if congruences is None:
        congruences = congruence_lattice(Q).congruences
    G = lmlt(Q, cap)
    family: dict[str, PermutationGroup] = {}
    seen: dict[frozenset, str] = {}

    def add(name, H):
        key = H.elements()
        if key in seen:
            return False
        seen[key] = name
        family[name] = H
        return True

    add("1", PermutationGroup.trivial(Q.order))
    add("Dis", dis(Q, cap))
    for i, alpha in enumerate(congruences):
        add(f"Dis_{alpha}", dis_rel(Q, alpha, cap))
        add(f"Dis^{alpha}", dis_ker(Q, alpha, cap))
    two_div = len(set(Q.squares().tolist())) == Q.order
    for _ in range(max_rounds):
        grew = False
        items = list(family.items())
        for name, N in items:
            grew |= add(f"[LMlt,{name}]", commutator_subgroup(G, N))
            if two_div:
                grew |= add(f"Z({name})", center(N))
        for i, (n1, N1) in enumerate(items):
            for n2, N2 in items[i:]:
                grew |= add(f"[{n1},{n2}]", commutator_subgroup(N1, N2))
        if not grew:
            break
    return family


def galois_check(Q: FiniteLeftQuasigroup, lattice=None, cap: int = DEFAULT_CAP,
                 superconnected: Optional[bool] = None) -> CheckReport:
    """Verify the monotonicity and Galois-connection laws on Con(Q).

    (a) alpha -> Dis_alpha, alpha -> Dis^alpha, N -> orbits(N) are monotone;
    (b) Dis_alpha <= Dis^alpha;
    (c) orbits(N) <= alpha iff N <= Dis^alpha, for N in {Dis_g, Dis^g};
    (d) for semimedial Q: Dis_alpha <= N iff alpha <= c_N, same N.
    For idempotent superconnected Q additionally alpha = c(Dis_alpha) = c(Dis^alpha).
    """
    from .congruence import congruence_lattice

    if lattice is None:
        lattice = congruence_lattice(Q)
    cons = lattice.congruences
    report = CheckReport("galois")
    lower = {a: dis_rel(Q, a, cap) for a in cons}
    upper = {a: dis_ker(Q, a, cap) for a in cons}
    family: dict[frozenset, PermutationGroup] = {}
    for a in cons:
        for H in (lower[a], upper[a]):
            family.setdefault(H.elements(), H)
    fam = list(family.values())
    orb = [orbits(N) for N in fam]

    ok, bad = True, None
    for a in cons:
        for b in cons:
            if a <= b and not (lower[a] <= lower[b] and upper[a] <= upper[b]):
                ok, bad = False, {"alpha": str(a), "beta": str(b)}
    report.add("monotone alpha->Dis_alpha, alpha->Dis^alpha", ok, bad)

    ok, bad = True, None
    for i, N in enumerate(fam):
        for j, M in enumerate(fam):
            if N <= M and not orb[i] <= orb[j]:
                ok, bad = False, {"N": N.order(), "M": M.order()}
    report.add("monotone N->orbits(N)", ok, bad)

    ok, bad = True, None
    for a in cons:
        if not lower[a] <= upper[a]:
            ok, bad = False, {"alpha": str(a)}
    report.add("Dis_alpha <= Dis^alpha", ok, bad)

    ok, bad = True, None
    for i, N in enumerate(fam):
        for a in cons:
            if (orb[i] <= a) != (N <= upper[a]):
                ok, bad = False, {"N_order": N.order(), "alpha": str(a)}
    report.add("orbits(N) <= alpha iff N <= Dis^alpha", ok, bad)

    flags = properties(Q)
    if flags.is_semimedial:
        cn = [cn_relation(Q, N) for N in fam]
        ok, bad = True, None
        for i, N in enumerate(fam):
            for a in cons:
                if (lower[a] <= N) != (a <= cn[i]):
                    ok, bad = False, {"N_order": N.order(), "alpha": str(a)}
        report.add("Dis_alpha <= N iff alpha <= c_N (semimedial)", ok, bad)
        ok, bad = True, None
        for i, N in enumerate(fam):
            if compatibility_violation(Q, cn[i].labels) is not None:
                ok, bad = False, {"N_order": N.order(), "c_N": str(cn[i])}
        report.add("c_N is a congruence (semimedial)", ok, bad)

    if flags.is_idempotent:
        if superconnected is None:
            from .classify import is_superconnected

            superconnected = is_superconnected(Q)[0]
        if superconnected:
            ok, bad = True, None
            for a in cons:
                c_low = cn_relation(Q, lower[a])
                c_up = cn_relation(Q, upper[a])
                if not (c_low == a == c_up):
                    ok, bad = False, {"alpha": str(a), "c_Dis_alpha": str(c_low), "c_Dis^alpha": str(c_up)}
            report.add("alpha = c(Dis_alpha) = c(Dis^alpha) (idempotent superconnected)", ok, bad)
    return report


def dis_quotient_check(Q: FiniteLeftQuasigroup, alpha, cap: int = DEFAULT_CAP) -> CheckReport:
    """|Dis(Q)| / |Dis^alpha| = |Dis(Q/alpha)| via the canonical surjection."""
    alpha = _partition(Q, alpha)
    D = dis(Q, cap).order()
    K = dis_ker(Q, alpha, cap).order()
    Dq = dis(quotient(Q, alpha), cap).order()
    report = CheckReport("dis-quotient")
    report.add("|Dis(Q)|/|Dis^alpha| = |Dis(Q/alpha)|", D % K == 0 and D // K == Dq,
               {"dis": D, "dis_ker": K, "dis_quotient": Dq, "alpha": str(alpha)})
    return report


def is_solvable_nontrivial(N: PermutationGroup) -> bool:
    return not N.is_trivial() and is_solvable(N)
