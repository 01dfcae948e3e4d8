"""Connectedness, P_2 in HS(Q), Mal'cev decisions and classification reports.

Mal'cev decision for V(Q) on non-idempotent Q.  Let F be the subalgebra of
Q^(Q x Q) generated by the projections x and y; it is the free algebra of V(Q)
on two generators.  A homomorphism h onto P_2 satisfies h(a*b) = h(b), so it
is constant on LMlt-orbits, and conversely any union of orbits gives one.
Every element of F lies in the orbit of its rightmost variable, so F has one
or two orbits: one orbit means P_2 is not in V(Q), i.e. V(Q) is Mal'cev;
two orbits give an explicit map F -> P_2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .action import LawCheck, dis, dis_ker, dis_rel, cn_relation, galois_check, lmlt
from .algebra import (
    SUBALGEBRA_MAX_ORDER,
    FiniteLeftQuasigroup,
    all_subalgebras,
    find_isomorphism,
    properties,
    subalgebra,
    subalgebra_closure,
)
from .errors import FreeAlgebraTooLarge, HypothesisNotMet, LQError, ResourceCapError, TooLarge
from .kernels import closure as _ck
from .kernels import free as _fk
from .kernels import hs as _hs
from ._accel import NUMBA_ENABLED
from .permgroup import _compose, _inverse, is_regular, is_transitive
from .terms import Op, Term, Var

FREE_ALGEBRA_CAP = 20000
FREE_EXACT = 4096
P2_MAX_ORDER = 12
FREE_TABLE_MAX = 4000


def _orbit_blocks(labels: np.ndarray) -> list[list[int]]:
    blocks: dict[int, list[int]] = {}
    for x, l in enumerate(labels.tolist()):
        if l >= 0:
            blocks.setdefault(l, []).append(x)
    return list(blocks.values())


def is_connected(Q: FiniteLeftQuasigroup) -> bool:
    """LMlt(Q) is transitive."""
    labels = _ck.orbit_labels(Q.mul, np.ones(Q.order, dtype=np.bool_))
    return int(labels.max()) == 0


def _disconnected_witness(Q, S) -> Optional[dict]:
    mask = np.zeros(Q.order, dtype=np.bool_)
    mask[list(S)] = True
    labels = _ck.orbit_labels(Q.mul, mask)
    if labels.max() > 0:
        return {"subalgebra": sorted(S), "orbits": _orbit_blocks(labels)}
    return None


def is_superconnected(Q: FiniteLeftQuasigroup, method: str = "generated",
                      max_order: int = SUBALGEBRA_MAX_ORDER) -> tuple[bool, Optional[dict]]:
    """Every subalgebra is connected; the witness is a disconnected one.

    ``method="generated"`` tests the subalgebras Sg(a, b): a disconnected S with
    a, b in different orbits contains the disconnected Sg(a, b), so these
    suffice.  ``method="all"`` walks every subalgebra (order <= ``max_order``),
    smallest first.
    """
    if method == "all":
        for S in all_subalgebras(Q, max_order):
            w = _disconnected_witness(Q, S)
            if w is not None:
                return False, w
        return True, None
    if method != "generated":
        raise ValueError(f"unknown method {method!r}")
    seen = set()
    for a in range(Q.order):
        for b in range(a + 1, Q.order):
            S = subalgebra_closure(Q, (a, b))
            if S in seen:
                continue
            seen.add(S)
            w = _disconnected_witness(Q, S)
            if w is not None:
                return False, w
    return True, None


def p2_in_HS(Q: FiniteLeftQuasigroup, max_order: int = P2_MAX_ORDER) -> tuple[bool, Optional[dict]]:
    """Is P_2 a homomorphic image of a subalgebra of Q?

    The witness gives the subalgebra and an explicit homomorphism table onto
    P_2 = {0, 1}, checkable without this library.
    """
    if Q.order > max_order:
        raise TooLarge(f"P2 brute force capped at order {max_order}")
    S, C = _hs.p2_witness(Q.mul, Q.ldiv)
    if S < 0:
        return False, None
    elems = [x for x in range(Q.order) if (S >> x) & 1]
    return True, {"subalgebra": elems, "map": {x: int((C >> x) & 1) for x in elems}}


def verify_p2_witness(Q: FiniteLeftQuasigroup, witness: dict) -> bool:
    S = [int(x) for x in witness["subalgebra"]]
    h = {int(k): int(v) for k, v in witness["map"].items()}
    if set(h.values()) != {0, 1} or set(h) != set(S):
        return False
    for a in S:
        for b in S:
            for c in (Q.op(a, b), Q.div(a, b)):
                if c not in h or h[c] != h[b]:
                    return False
    return True


@dataclass
class MalcevVerdict:
    verdict: str  # "yes", "no" or "unknown"
    method: str
    witness: Optional[dict] = None
    free_order: Optional[int] = None
    orbit_count: Optional[int] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "witness": self.witness,
            "free_order": self.free_order,
            "orbit_count": self.orbit_count,
            "note": self.note,
        }


def malcev_decision_idempotent(Q: FiniteLeftQuasigroup) -> MalcevVerdict:
    """For idempotent Q, V(Q) has a Mal'cev term iff Q is superconnected."""
    if not properties(Q).is_idempotent:
        raise HypothesisNotMet("malcev_decision_idempotent needs an idempotent algebra")
    ok, w = is_superconnected(Q)
    return MalcevVerdict("yes" if ok else "no", "teo-Taylor", w)


@dataclass
class FreeAlgebra:
    """Two-generated free algebra of V(Q), realised inside Q^(Q x Q).

    Element i is the function (a, b) -> elements[i, a*n + b]; generators are
    elements 0 (x) and 1 (y).
    """
    source: FiniteLeftQuasigroup
    elements: np.ndarray
    orbit_labels: np.ndarray
    complete: bool
    _left: np.ndarray = field(repr=False)
    _right: np.ndarray = field(repr=False)
    _op: np.ndarray = field(repr=False)
    _table: Optional[FiniteLeftQuasigroup] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def num_orbits(self) -> int:
        return int(self.orbit_labels.max()) + 1 if self.order else 0

    @property
    def generators(self) -> tuple[int, int]:
        return (0, 1) if self.order > 1 else (0, 0)

    def generators_joined(self) -> bool:
        x, y = self.generators
        return self.orbit_labels[x] == self.orbit_labels[y]

    def term(self, i: int) -> Term:
        """A term in x, y that evaluates to element i."""
        if self._op[i] < 0:
            return Var("x" if i == 0 else "y")
        return Op("*" if self._op[i] == 0 else "\\", self.term(int(self._left[i])), self.term(int(self._right[i])))

    def algebra(self, max_order: int = FREE_TABLE_MAX) -> FiniteLeftQuasigroup:
        if not self.complete:
            raise FreeAlgebraTooLarge(self.order)
        if self.order > max_order:
            raise TooLarge(f"free algebra table of order {self.order} exceeds {max_order}")
        if self._table is None:
            Q = self.source
            index = {row.tobytes(): i for i, row in enumerate(self.elements)}
            E = self.elements
            table = np.empty((self.order, self.order), dtype=np.int64)
            for i in range(self.order):
                prods = Q.mul[E[i][None, :], E]
                for j in range(self.order):
                    table[i, j] = index[prods[j].tobytes()]
            self._table = FiniteLeftQuasigroup(table, name="F2", _checked=True)
        return self._table


def free_algebra_on_two(Q: FiniteLeftQuasigroup, cap: int = FREE_ALGEBRA_CAP,
                        raise_on_overflow: bool = True, stop_joined_after: int = -1) -> FreeAlgebra:
    """Close the projections x, y inside Q^(Q x Q).

    ``stop_joined_after >= 0`` ends the closure early (as incomplete) once x
    and y share an orbit and at least that many elements exist.
    """
    n = Q.order
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    gens = np.ascontiguousarray(np.stack([a, b]).astype(np.int64))
    closure = _fk.free_closure if NUMBA_ENABLED else _fk.free_closure_python
    elems, count, parent, left, right, op, overflow = closure(Q.mul, Q.ldiv, gens, cap, stop_joined_after)
    if overflow and raise_on_overflow:
        raise FreeAlgebraTooLarge(cap)
    parent = np.asarray(parent[:count], dtype=np.int64).copy()
    labels = _ck.canonical_labels(parent) if count else np.zeros(0, dtype=np.int64)
    return FreeAlgebra(Q, np.ascontiguousarray(elems[:count], dtype=np.int64), labels, not overflow,
                       np.asarray(left[:count]), np.asarray(right[:count]), np.asarray(op[:count]))


def malcev_decision_general(Q: FiniteLeftQuasigroup, cap: int = FREE_ALGEBRA_CAP) -> MalcevVerdict:
    """Mal'cev iff the free algebra on two generators is connected.

    Every element lies in the orbit of its rightmost variable, so F(2) has at
    most two orbits and a join of x and y already settles "yes"; past
    FREE_EXACT elements the closure stops there instead of running to the end.
    """
    F = free_algebra_on_two(Q, cap, raise_on_overflow=False, stop_joined_after=FREE_EXACT)
    if not F.complete:
        if F.generators_joined():
            return MalcevVerdict("yes", "free-algebra", {"partial_order": F.order}, None, 1,
                                 note=f"x and y joined in one orbit after {F.order} elements")
        return MalcevVerdict("unknown", "free-algebra", {"partial_order": F.order}, None, None,
                             note=f"free algebra exceeds {cap} elements")
    if F.num_orbits == 1:
        return MalcevVerdict("yes", "free-algebra", {"free_order": F.order, "orbits": 1}, F.order, 1)
    coloring = [int(F.orbit_labels[i] != F.orbit_labels[0]) for i in range(F.order)]
    sizes = [int((F.orbit_labels == k).sum()) for k in range(F.num_orbits)]
    witness = {"free_order": F.order, "orbits": F.num_orbits, "orbit_sizes": sizes, "map_to_P2": coloring}
    return MalcevVerdict("no", "free-algebra", witness, F.order, F.num_orbits)


def is_superfaithful(Q: FiniteLeftQuasigroup, max_order: int = SUBALGEBRA_MAX_ORDER) -> tuple[bool, Optional[dict]]:
    """Every subalgebra has pairwise distinct left translations."""
    for S in all_subalgebras(Q, max_order):
        idx = sorted(S)
        rows = Q.mul[np.ix_(idx, idx)]
        seen: dict[bytes, int] = {}
        for a, r in zip(idx, rows):
            prev = seen.setdefault(r.tobytes(), a)
            if prev != a:
                return False, {"subalgebra": idx, "equal_rows": [prev, a]}
    return True, None


def find_abelian_subquandle(Q: FiniteLeftQuasigroup, max_order: int = SUBALGEBRA_MAX_ORDER) -> Optional[list[int]]:
    """Smallest non-trivial abelian subquandle, or None."""
    from .congruence import is_abelian_algebra

    if not properties(Q).is_quandle:
        raise HypothesisNotMet("find_abelian_subquandle needs a quandle")
    if Q.order <= max_order:
        candidates = [S for S in all_subalgebras(Q, max_order) if len(S) > 1]
    else:
        cands = {subalgebra_closure(Q, (a, b)) for a in range(Q.order) for b in range(a + 1, Q.order)}
        candidates = sorted(cands, key=lambda s: (len(s), sorted(s)))
    for S in candidates:
        sub, elems = subalgebra(Q, S)
        if is_abelian_algebra(sub):
            return elems
    return None


def coset_reconstruction(Q: FiniteLeftQuasigroup) -> tuple[bool, Optional[dict]]:
    """Q is isomorphic to Q(Dis(Q), Dis(Q)_a, conjugation by L_a) for each a."""
    from .construct import displacement_coset_quandle

    for a in range(Q.order):
        R = displacement_coset_quandle(Q, a)
        if R.order != Q.order or find_isomorphism(R, Q) is None:
            return False, {"base_point": a, "coset_order": R.order}
    return True, None


def unipotent_checks(Q: FiniteLeftQuasigroup) -> list[LawCheck]:
    """Dis regular, Dis = {L_a L_e^-1}, Q latin, for unipotent semimedial Q."""
    e = int(Q.squares()[0])
    D = dis(Q)
    inv_e = _inverse(Q.row(e))
    translations = {_compose(Q.row(a), inv_e) for a in range(Q.order)}
    flags = properties(Q)
    return [
        LawCheck("unipotent: Dis regular", is_regular(D), {"dis_order": D.order()}),
        LawCheck("unipotent: Dis = {L_a L_e^-1}", translations == set(D.elements()),
                 {"dis_order": D.order(), "translations": len(translations)}),
        LawCheck("unipotent: latin", flags.is_latin, None),
    ]


@dataclass
class ClassificationReport:
    name: Optional[str]
    order: int
    flags: dict
    connected: bool
    superconnected: bool
    superconnected_witness: Optional[dict]
    superfaithful: Optional[bool]
    p2_in_hs: Optional[bool]
    p2_witness: Optional[dict]
    malcev: MalcevVerdict
    groups: dict
    congruences: Optional[list[str]]
    checks: list[LawCheck] = field(default_factory=list)
    obstructions: Optional[dict] = None
    abelian_subquandle: Optional[list[int]] = None
    skipped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "flags": self.flags,
            "connected": self.connected,
            "superconnected": self.superconnected,
            "superconnected_witness": self.superconnected_witness,
            "superfaithful": self.superfaithful,
            "p2_in_hs": self.p2_in_hs,
            "p2_witness": _jsonable(self.p2_witness),
            "malcev": self.malcev.to_dict(),
            "groups": self.groups,
            "congruences": self.congruences,
            "checks": [c.to_dict() for c in self.checks],
            "obstructions": self.obstructions,
            "abelian_subquandle": self.abelian_subquandle,
            "skipped": list(self.skipped),
            "passed": self.passed,
        }

    def render(self) -> str:
        lines = [f"algebra {self.name or '(unnamed)'} of order {self.order}"]
        on = [k[3:] if k.startswith("is_") else k for k, v in self.flags.items() if v is True]
        lines.append("  properties: " + (", ".join(on) or "none"))
        if self.flags.get("multipotency_degree") is not None:
            lines.append(f"  multipotency degree: {self.flags['multipotency_degree']}")
        lines.append(f"  connected: {_yn(self.connected)}   superconnected: {_yn(self.superconnected)}")
        if self.superconnected_witness:
            lines.append(f"    disconnected subalgebra {self.superconnected_witness['subalgebra']}"
                         f" with orbits {self.superconnected_witness['orbits']}")
        if self.p2_in_hs is not None:
            lines.append(f"  P2 in HS(Q): {_yn(self.p2_in_hs)}")
        m = self.malcev
        extra = f", |F(2)| = {m.free_order}" if m.free_order is not None else ""
        lines.append(f"  Mal'cev: {m.verdict} ({m.method}{extra})")
        if m.note:
            lines.append(f"    {m.note}")
        g = self.groups
        lines.append(f"  |LMlt| = {g['lmlt_order']}, |Dis| = {g['dis_order']}, Dis transitive: {_yn(g['dis_transitive'])}")
        if self.congruences is not None:
            lines.append(f"  congruences ({len(self.congruences)}): " + " ".join(self.congruences))
        if self.obstructions is not None:
            kinds = sorted({o["kind"] for o in self.obstructions["obstructions"]})
            lines.append("  distributivity obstructions: " + (", ".join(kinds) or "none"))
        if self.abelian_subquandle is not None:
            lines.append(f"  abelian subquandle: {self.abelian_subquandle}")
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.law}")
        for s in self.skipped:
            lines.append(f"  skipped: {s}")
        return "\n".join(lines)


def _yn(b) -> str:
    return "yes" if b else "no"


def _jsonable(w):
    if w is None:
        return None
    out = dict(w)
    if "map" in out:
        out["map"] = {str(k): v for k, v in out["map"].items()}
    return out


def classification_report(Q: FiniteLeftQuasigroup, free_cap: int = FREE_ALGEBRA_CAP,
                          galois: bool = True, obstructions: bool = True) -> ClassificationReport:
    from .congruence import (
        congruence_lattice,
        distributivity_obstructions,
        is_coherent,
        is_regular,
        is_uniform,
    )

    flags = properties(Q)
    skipped: list[str] = []
    checks: list[LawCheck] = []
    connected = is_connected(Q)
    superconnected, sc_w = is_superconnected(Q)

    p2 = p2_w = None
    if Q.order <= P2_MAX_ORDER:
        p2, p2_w = p2_in_HS(Q)
        checks.append(LawCheck("P2 in HS(Q) iff not superconnected", p2 == (not superconnected),
                               {"p2_in_hs": p2, "superconnected": superconnected}))
    else:
        skipped.append(f"P2 brute force (order > {P2_MAX_ORDER})")

    general = malcev_decision_general(Q, free_cap)
    if flags.is_idempotent:
        verdict = malcev_decision_idempotent(Q)
        verdict.free_order = general.free_order
        verdict.orbit_count = general.orbit_count
        if general.verdict == "unknown":
            skipped.append("free-algebra cross-check (cap reached)")
        else:
            checks.append(LawCheck("free-algebra verdict agrees with superconnectedness",
                                   general.verdict == verdict.verdict,
                                   {"free_algebra": general.verdict, "superconnected": verdict.verdict}))
    else:
        verdict = general

    superfaithful = None
    if Q.order <= SUBALGEBRA_MAX_ORDER:
        superfaithful = is_superfaithful(Q)[0]

    G = lmlt(Q)
    D = dis(Q)
    groups = {"lmlt_order": G.order(), "dis_order": D.order(), "dis_transitive": is_transitive(D)}

    lattice = None
    try:
        lattice = congruence_lattice(Q)
    except ResourceCapError as exc:
        skipped.append(f"congruence lattice ({exc})")

    if lattice is not None and connected:
        ok, w = is_uniform(Q, lattice)
        checks.append(LawCheck("connected: congruence uniform", ok, w))
        ok, w = is_regular(Q, lattice)
        checks.append(LawCheck("connected: congruence regular", ok, w))
    if superconnected:
        if lattice is not None and Q.order <= SUBALGEBRA_MAX_ORDER:
            ok, w = is_coherent(Q, lattice)
            checks.append(LawCheck("superconnected: coherent", ok, w))
        if verdict.verdict == "yes":
            checks.append(LawCheck("Mal'cev: Dis transitive", groups["dis_transitive"], None))
        if flags.is_idempotent:
            if superfaithful is not None:
                checks.append(LawCheck("idempotent superconnected: superfaithful", superfaithful, None))
            if lattice is not None:
                ok, bad = True, None
                for alpha in lattice:
                    lo = cn_relation(Q, dis_rel(Q, alpha))
                    hi = cn_relation(Q, dis_ker(Q, alpha))
                    if not (lo == alpha == hi):
                        ok, bad = False, {"alpha": str(alpha), "c_Dis_alpha": str(lo), "c_Dis^alpha": str(hi)}
                        break
                checks.append(LawCheck("idempotent superconnected: alpha = c(Dis_alpha) = c(Dis^alpha)", ok, bad))
    if connected and flags.is_quandle:
        ok, w = coset_reconstruction(Q)
        checks.append(LawCheck("connected quandle: coset reconstruction over Dis", ok, w))
    if flags.is_semimedial and flags.is_unipotent:
        checks.extend(unipotent_checks(Q))
    if galois and lattice is not None:
        rep = galois_check(Q, lattice, superconnected=superconnected)
        checks.extend(LawCheck("galois: " + c.law, c.passed, c.witness) for c in rep.checks)

    obs = None
    if obstructions and lattice is not None:
        obs = distributivity_obstructions(Q, lattice).to_dict()

    abel = None
    if flags.is_quandle:
        try:
            abel = find_abelian_subquandle(Q)
        except LQError as exc:
            skipped.append(f"abelian subquandle search ({exc})")

    return ClassificationReport(
        name=Q.name,
        order=Q.order,
        flags=flags.as_dict(),
        connected=connected,
        superconnected=superconnected,
        superconnected_witness=sc_w,
        superfaithful=superfaithful,
        p2_in_hs=p2,
        p2_witness=p2_w,
        malcev=verdict,
        groups=groups,
        congruences=[str(c) for c in lattice] if lattice is not None else None,
        checks=checks,
        obstructions=obs,
        abelian_subquandle=abel,
        skipped=skipped,
    )
