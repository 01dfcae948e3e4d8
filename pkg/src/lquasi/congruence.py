"""Congruences: verification, lattices, uniformity/regularity/coherence,
abelianness and the semimedial commutator."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .action import (
    canonical_admissibles,
    cayley_kernel,
    cn_relation,
    dis_rel,
    is_admissible,
)
from .algebra import (
    SUBALGEBRA_MAX_ORDER,
    FiniteLeftQuasigroup,
    all_subalgebras,
    compatibility_violation,
    properties,
)
from .errors import HypothesisNotMet, TooLarge, VerificationFailed
from .kernels import closure as _ck
from .partition import Partition, all_partitions
from .permgroup import center, commutator_subgroup, is_solvable

LATTICE_MAX_ORDER = 24
MAX_CONGRUENCES = 20000
ORACLE_MAX_ORDER = 6
ABELIAN_MAX_PAIRS = 4096


def _as_partition(Q, alpha) -> Partition:
    if isinstance(alpha, Partition):
        return alpha
    return Partition.from_labels(alpha)


def is_congruence(Q: FiniteLeftQuasigroup, partition) -> tuple[bool, Optional[dict]]:
    """Check the four compatibility rules; the witness names the broken translate."""
    p = _as_partition(Q, partition)
    w = compatibility_violation(Q, p.labels)
    if w is None:
        return True, None
    a, b, c, op = w
    return False, {"a": a, "b": b, "c": c, "op": op}


def principal_congruence(Q: FiniteLeftQuasigroup, a: int, b: int) -> Partition:
    pairs = np.array([[a, b]], dtype=np.int64)
    return Partition(tuple(int(x) for x in _ck.cg_labels(Q.mul, Q.ldiv, pairs)))


def generated_congruence(Q: FiniteLeftQuasigroup, pairs) -> Partition:
    arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
    return Partition(tuple(int(x) for x in _ck.cg_labels(Q.mul, Q.ldiv, arr)))


class CongruenceLattice:
    """Con(Q) ordered from 0_Q to 1_Q (by decreasing block count)."""

    def __init__(self, Q: FiniteLeftQuasigroup, congruences):
        self.Q = Q
        self.congruences: list[Partition] = sorted(set(congruences), key=Partition.sort_key)
        self._index = {c: i for i, c in enumerate(self.congruences)}
        k = len(self.congruences)
        self.leq = np.array([[a <= b for b in self.congruences] for a in self.congruences], dtype=bool).reshape(k, k)
        self._meet = None
        self._join = None

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, p) -> bool:
        return p in self._index

    def index(self, p: Partition) -> int:
        return self._index[p]

    @property
    def bottom(self) -> Partition:
        return self.congruences[0]

    @property
    def top(self) -> Partition:
        return self.congruences[-1]

    def _table(self, op) -> np.ndarray:
        k = len(self)
        out = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(self.congruences):
            for j in range(i, k):
                r = self._index.get(op(a, self.congruences[j]), -1)
                out[i, j] = out[j, i] = r
        return out

    @property
    def meet_table(self) -> np.ndarray:
        if self._meet is None:
            self._meet = self._table(Partition.meet)
        return self._meet

    @property
    def join_table(self) -> np.ndarray:
        if self._join is None:
            self._join = self._table(Partition.join)
        return self._join

    def is_closed(self) -> bool:
        return bool((self.meet_table >= 0).all() and (self.join_table >= 0).all())

    def hasse_edges(self) -> list[tuple[int, int]]:
        """Covering pairs (i, j): congruence i is covered by j."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        edges = []
        for i in range(len(self)):
            for j in np.flatnonzero(lt[i]):
                between = lt[i] & lt[:, j]
                if not between.any():
                    edges.append((i, int(j)))
        return edges

    def flags(self) -> list[dict]:
        out = []
        for alpha in self.congruences:
            sizes = {len(b) for b in alpha.blocks()}
            out.append({
                "congruence": str(alpha),
                "abelian": is_abelian_congruence(self.Q, alpha),
                "strongly_abelian": is_strongly_abelian_congruence(self.Q, alpha),
                "uniform_blocks": len(sizes) == 1,
            })
        return out

    def to_dict(self) -> dict:
        return {
            "size": len(self),
            "congruences": [str(c) for c in self.congruences],
            "hasse_edges": [list(e) for e in self.hasse_edges()],
        }


@lru_cache(maxsize=1024)
def _lattice(Q: FiniteLeftQuasigroup, max_order: int, max_congruences: int) -> CongruenceLattice:
    n = Q.order
    if n > max_order:
        raise TooLarge(f"congruence lattice capped at order {max_order}, got {n}")
    principals = {principal_congruence(Q, a, b) for a in range(n) for b in range(a + 1, n)}
    zero = Partition.discrete(n)
    found = {zero} | principals
    frontier = list(principals)
    plist = list(principals)
    while frontier:
        nxt = []
        for c in frontier:
            for p in plist:
                j = c.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
                    if len(found) > max_congruences:
                        raise TooLarge(f"more than {max_congruences} congruences")
        frontier = nxt
    return CongruenceLattice(Q, found)


def congruence_lattice(Q: FiniteLeftQuasigroup, max_order: int = LATTICE_MAX_ORDER,
                       max_congruences: int = MAX_CONGRUENCES) -> CongruenceLattice:
    """All congruences, as joins of principal congruences Cg(a, b)."""
    return _lattice(Q, max_order, max_congruences)


def congruences_bruteforce(Q: FiniteLeftQuasigroup, max_order: int = ORACLE_MAX_ORDER) -> list[Partition]:
    """Oracle: test every partition of the carrier."""
    if Q.order > max_order:
        raise TooLarge(f"partition scan capped at order {max_order}")
    out = []
    for p in all_partitions(Q.order):
        if compatibility_violation(Q, p.labels) is None:
            out.append(p)
    return sorted(out, key=Partition.sort_key)


def is_uniform(Q: FiniteLeftQuasigroup, lattice: Optional[CongruenceLattice] = None) -> tuple[bool, Optional[dict]]:
    """All blocks of each congruence have the same size."""
    lattice = lattice or congruence_lattice(Q)
    for alpha in lattice:
        sizes = [len(b) for b in alpha.blocks()]
        if len(set(sizes)) > 1:
            return False, {"congruence": str(alpha), "block_sizes": sizes}
    return True, None


def is_regular(Q: FiniteLeftQuasigroup, lattice: Optional[CongruenceLattice] = None) -> tuple[bool, Optional[dict]]:
    """Any single block determines the congruence."""
    lattice = lattice or congruence_lattice(Q)
    cons = lattice.congruences
    arrays = [c.array() for c in cons]
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            a_i, a_j = arrays[i], arrays[j]
            for a in range(Q.order):
                if np.array_equal(a_i == a_i[a], a_j == a_j[a]):
                    return False, {"alpha": str(cons[i]), "beta": str(cons[j]), "element": a}
    return True, None


def is_coherent(Q: FiniteLeftQuasigroup, lattice: Optional[CongruenceLattice] = None,
                max_order: int = SUBALGEBRA_MAX_ORDER) -> tuple[bool, Optional[dict]]:
    """A subalgebra containing one block of a congruence is a union of its blocks."""
    lattice = lattice or congruence_lattice(Q)
    subs = all_subalgebras(Q, max_order)
    for alpha in lattice:
        blocks = [frozenset(b) for b in alpha.blocks()]
        for S in subs:
            if any(b <= S for b in blocks) and not all(b <= S or not (b & S) for b in blocks):
                inside = next(b for b in blocks if b <= S)
                return False, {"congruence": str(alpha), "subalgebra": sorted(S), "block": sorted(inside)}
    return True, None


def _pair_algebra(Q: FiniteLeftQuasigroup, alpha: Partition):
    """Tables of A(alpha) = {(a, b) : a alpha b} inside Q x Q."""
    lab = alpha.array()
    n = Q.order
    P = np.array([(a, b) for a in range(n) for b in range(n) if lab[a] == lab[b]], dtype=np.int64)
    if len(P) > ABELIAN_MAX_PAIRS:
        raise TooLarge(f"A(alpha) has {len(P)} elements, cap {ABELIAN_MAX_PAIRS}")
    idx = np.full((n, n), -1, dtype=np.int64)
    idx[P[:, 0], P[:, 1]] = np.arange(len(P))
    x, y = P[:, 0], P[:, 1]
    mul = idx[Q.mul[x[:, None], x[None, :]], Q.mul[y[:, None], y[None, :]]]
    div = idx[Q.ldiv[x[:, None], x[None, :]], Q.ldiv[y[:, None], y[None, :]]]
    return P, idx, np.ascontiguousarray(mul), np.ascontiguousarray(div)


def abelian_witness(Q: FiniteLeftQuasigroup, alpha) -> Optional[dict]:
    """Diagonal criterion; returns an off-diagonal pair glued to the diagonal, or None.

    Inside A(alpha), generate the congruence D by ((a,a),(b,b)) for a alpha b.
    alpha is abelian iff the diagonal is a union of D-classes.
    """
    alpha = _as_partition(Q, alpha)
    P, idx, mul, div = _pair_algebra(Q, alpha)
    gens = []
    for block in alpha.blocks():
        r = block[0]
        gens.extend((idx[r, r], idx[b, b]) for b in block[1:])
    if not gens:
        return None
    labels = _ck.cg_labels(mul, div, np.array(gens, dtype=np.int64))
    diag = P[:, 0] == P[:, 1]
    diag_classes = set(labels[diag].tolist())
    for k in np.flatnonzero(~diag):
        if labels[k] in diag_classes:
            d = int(np.flatnonzero(diag & (labels == labels[k]))[0])
            return {"pair": [int(P[k, 0]), int(P[k, 1])], "diagonal": [int(P[d, 0]), int(P[d, 1])]}
    return None


def is_abelian_congruence(Q: FiniteLeftQuasigroup, alpha, use_filter: bool = True) -> bool:
    """Diagonal criterion, after the Dis_alpha-abelian filter on semimedial Q."""
    alpha = _as_partition(Q, alpha)
    if alpha.is_discrete():
        return True
    if use_filter and properties(Q).is_semimedial:
        from .permgroup import is_abelian

        if not is_abelian(dis_rel(Q, alpha)):
            return False
    return abelian_witness(Q, alpha) is None


def is_abelian_algebra(Q: FiniteLeftQuasigroup, use_filter: bool = True) -> bool:
    return is_abelian_congruence(Q, Partition.total(Q.order), use_filter)


def is_strongly_abelian_congruence(Q: FiniteLeftQuasigroup, alpha) -> bool:
    """Dis_alpha = 1; cross-checked against alpha <= Cayley kernel."""
    alpha = _as_partition(Q, alpha)
    trivial = dis_rel(Q, alpha).is_trivial()
    below = alpha <= cayley_kernel(Q)
    if trivial != below:
        raise VerificationFailed(f"Dis_alpha trivial={trivial} but alpha<=lambda={below} for {alpha}")
    return trivial


def commutator_guard(Q: FiniteLeftQuasigroup) -> tuple[bool, str]:
    """Semimedial and generating a Mal'cev variety.

    Superconnectedness alone does not suffice off the idempotent case: the
    cyclic permutation algebra on Z_3 is superconnected and semimedial, yet
    c_[Dis,Dis] = 1 while the algebra is abelian.
    """
    from .classify import is_superconnected, malcev_decision_general

    flags = properties(Q)
    if not flags.is_semimedial:
        return False, "not semimedial"
    if not is_superconnected(Q)[0]:
        return False, "not superconnected"
    if flags.is_idempotent:
        return True, "idempotent superconnected"
    verdict = malcev_decision_general(Q)
    if verdict.verdict == "yes":
        return True, "free algebra on two generators is connected"
    return False, f"free-algebra Mal'cev verdict is {verdict.verdict}"


def commutator_semimedial(Q: FiniteLeftQuasigroup, alpha, beta, check_guard: bool = True) -> Partition:
    """[alpha, beta] = c_[Dis_alpha, Dis_beta]."""
    if check_guard:
        ok, reason = commutator_guard(Q)
        if not ok:
            raise HypothesisNotMet(f"commutator formula needs a semimedial algebra in a Mal'cev variety: {reason}")
    alpha = _as_partition(Q, alpha)
    beta = _as_partition(Q, beta)
    C = commutator_subgroup(dis_rel(Q, alpha), dis_rel(Q, beta))
    c = cn_relation(Q, C)
    ok, w = is_congruence(Q, c)
    if not ok:
        raise VerificationFailed(f"c_N is not a congruence: {w}")
    return c


@dataclass
class ObstructionReport:
    obstructions: list[dict] = field(default_factory=list)
    criteria: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return bool(self.obstructions)

    def kinds(self) -> set[str]:
        return {o["kind"] for o in self.obstructions}

    def to_dict(self) -> dict:
        return {"found": self.found, "criteria": list(self.criteria), "obstructions": list(self.obstructions)}


def distributivity_obstructions(Q: FiniteLeftQuasigroup, lattice: Optional[CongruenceLattice] = None,
                                stop_early: bool = False) -> ObstructionReport:
    """Witnesses that no congruence distributive variety contains Q.

    * any Q: a non-trivial abelian congruence;
    * semimedial Q: Dis_alpha != [Dis_alpha, Dis_alpha], or a solvable non-trivial
      admissible subgroup from the canonical family;
    * 2-divisible semimedial Q: an admissible N with Z(N) != 1.
    """
    lattice = lattice or congruence_lattice(Q)
    flags = properties(Q)
    rep = ObstructionReport()
    rep.criteria.append("abelian-congruence")
    for alpha in lattice:
        if not alpha.is_discrete() and is_abelian_congruence(Q, alpha):
            rep.obstructions.append({"kind": "abelian-congruence", "congruence": str(alpha)})
            if stop_early:
                return rep
    if not flags.is_semimedial:
        return rep
    rep.criteria.append("non-perfect-dis")
    for alpha in lattice:
        D = dis_rel(Q, alpha)
        DD = commutator_subgroup(D, D)
        if DD.order() != D.order():
            rep.obstructions.append({"kind": "non-perfect-dis", "congruence": str(alpha),
                                     "dis_order": D.order(), "derived_order": DD.order()})
            if stop_early:
                return rep
    rep.criteria.append("solvable-admissible")
    if flags.is_2divisible:
        rep.criteria.append("nontrivial-center")
    family = canonical_admissibles(Q, lattice.congruences)
    for name, N in family.items():
        if N.is_trivial():
            continue
        adm = is_admissible(Q, N, semimedial=True)
        if not (adm.witness_admissible and adm.twist_closed):
            continue
        if is_solvable(N):
            rep.obstructions.append({"kind": "solvable-admissible", "subgroup": name, "order": N.order()})
            if stop_early:
                return rep
        if flags.is_2divisible:
            Z = center(N)
            if not Z.is_trivial():
                rep.obstructions.append({"kind": "nontrivial-center", "subgroup": name, "center_order": Z.order()})
                if stop_early:
                    return rep
    return rep
