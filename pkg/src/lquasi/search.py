"""Finite model search for left quasigroups.

Usage::

    spec = SearchSpec(3, axioms={"quandle"}, up_to_iso=True)
    for Q in search(spec):
        ...
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .algebra import FiniteLeftQuasigroup
from .errors import InputError, TooLarge
from .kernels import search as _sk
from .terms import Identity, as_identity, compile_term

AXIOMS = ("idempotent", "rack", "quandle", "semimedial", "medial", "involutory", "latin", "unipotent")
MAX_EXHAUSTIVE_ORDER = 6
MAX_ISO_ORDER = 6

_AXIOM_IDENTITIES = {
    "semimedial": "((x*y)*(x*z))=((x*x)*(y*z))",
    "medial": "((x*y)*(z*t))=((x*z)*(y*t))",
    "unipotent": "(x*x)=(y*y)",
}


@dataclass
class SearchSpec:
    order: int
    axioms: frozenset = frozenset()
    identities: list = field(default_factory=list)
    limit: Optional[int] = None
    up_to_iso: bool = False
    allow_large: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise InputError("order must be at least 1")
        ax = frozenset(a.strip().lower() for a in self.axioms if a.strip())
        unknown = ax - set(AXIOMS)
        if unknown:
            raise InputError(f"unknown axioms {sorted(unknown)}; choose from {', '.join(AXIOMS)}")
        self.axioms = ax
        self.identities = [as_identity(i) for i in self.identities]
        if self.limit is not None and self.limit < 0:
            raise InputError("limit must be nonnegative")

    @property
    def effective_axioms(self) -> frozenset:
        ax = set(self.axioms)
        if "quandle" in ax:
            ax |= {"rack", "idempotent"}
        return frozenset(ax)

    def all_identities(self) -> list[Identity]:
        ax = self.effective_axioms
        extra = [as_identity(_AXIOM_IDENTITIES[a]) for a in AXIOMS if a in ax and a in _AXIOM_IDENTITIES]
        return extra + list(self.identities)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "axioms": sorted(self.axioms),
            "identities": [str(i) for i in self.identities],
            "limit": self.limit,
            "up_to_iso": self.up_to_iso,
        }


@lru_cache(maxsize=8)
def _perm_data(n: int):
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    invperms = np.argsort(perms, axis=1).astype(np.int64)
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    rank_of = np.full(n ** n, -1, dtype=np.int64)
    rank_of[perms @ weights] = np.arange(len(perms))
    return perms, invperms, weights, rank_of


@lru_cache(maxsize=8)
def _conj_table(n: int) -> np.ndarray:
    """conj[a, b] = rank of p_a p_b p_a^-1."""
    perms, invperms, weights, rank_of = _perm_data(n)
    P = len(perms)
    inner = perms[np.arange(P)[None, :, None], invperms[:, None, :]]   # p_b(p_a^-1(i))
    full = perms[np.arange(P)[:, None, None], inner]                    # p_a(...)
    return np.ascontiguousarray(rank_of[full @ weights])


def _candidates(n: int, ax: frozenset):
    perms, invperms, _, _ = _perm_data(n)
    P = len(perms)
    allowed = np.ones((n, P), dtype=np.bool_)
    if "idempotent" in ax:
        allowed &= perms.T == np.arange(n)[:, None]   # [r, k]: p_k(r) = r
    if "involutory" in ax:
        invol = np.all(perms[np.arange(P)[:, None], perms] == np.arange(n)[None, :], axis=1)
        allowed &= invol[None, :]
    ncand = allowed.sum(axis=1).astype(np.int64)
    cand = np.zeros((n, max(int(ncand.max()), 1)), dtype=np.int64)
    for r in range(n):
        idx = np.flatnonzero(allowed[r])
        cand[r, :len(idx)] = idx
    return cand, ncand, np.ascontiguousarray(allowed)


def _compile_identities(identities: Sequence[Identity]):
    codes: list[int] = []
    bounds = []
    nvars = []
    for ident in identities:
        names = ident.variables
        lhs = compile_term(ident.lhs, names).tolist()
        rhs = compile_term(ident.rhs, names).tolist()
        lo = len(codes)
        codes.extend(lhs)
        mid = len(codes)
        codes.extend(rhs)
        bounds.append((lo, mid, len(codes)))
        nvars.append(len(names))
    return (np.asarray(codes, dtype=np.int64), np.asarray(bounds, dtype=np.int64).reshape(-1, 3),
            np.asarray(nvars, dtype=np.int64))


class _Problem:
    def __init__(self, spec: SearchSpec):
        n = spec.order
        if n > MAX_EXHAUSTIVE_ORDER and not spec.allow_large:
            raise TooLarge(f"exhaustive search is limited to order {MAX_EXHAUSTIVE_ORDER} (use the override)")
        if spec.up_to_iso and n > MAX_ISO_ORDER:
            raise TooLarge(f"isomorph rejection is limited to order {MAX_ISO_ORDER}")
        ax = spec.effective_axioms
        self.n = n
        self.perms, self.invperms, _, _ = _perm_data(n)
        self.cand, self.ncand, self.allowed = _candidates(n, ax)
        self.rack = "rack" in ax
        self.conj = _conj_table(n) if self.rack else np.zeros((1, 1), dtype=np.int64)
        self.latin = "latin" in ax
        self.up_to_iso = spec.up_to_iso
        self.codes, self.bounds, self.nvars = _compile_identities(spec.all_identities())

    def subproblem_candidates(self, i: int):
        cand = self.cand.copy()
        ncand = self.ncand.copy()
        cand[0, 0] = self.cand[0, i]
        ncand[0] = 1
        return cand, ncand

    def run(self, cand=None, ncand=None, buffer: int = 256) -> Iterator[np.ndarray]:
        cand = self.cand if cand is None else cand
        ncand = self.ncand if ncand is None else ncand
        st = _sk.new_state(self.n, buffer)
        self.stats = st["stats"]
        while True:
            k = _sk.search_kernel(
                self.perms, self.invperms, cand, ncand, self.allowed, self.conj, self.rack, self.latin,
                self.up_to_iso, self.codes, self.bounds, self.nvars, st["state_int"], st["rowrank"],
                st["table"], st["ldtab"], st["colcount"], st["trail"], st["brow"], st["bidx"],
                st["bstart"], st["out"], st["stats"])
            for t in st["out"][:k]:
                yield t.copy()
            if st["state_int"][2]:
                return


@dataclass
class SearchStats:
    models: int = 0
    nodes: int = 0
    leaves: int = 0
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"models": self.models, "nodes": self.nodes, "leaves": self.leaves, "seconds": round(self.seconds, 4)}


def _to_algebra(t: np.ndarray) -> FiniteLeftQuasigroup:
    return FiniteLeftQuasigroup(np.ascontiguousarray(t), _checked=True)


def search(spec: SearchSpec, jobs: int = 1, stats: Optional[SearchStats] = None) -> Iterator[FiniteLeftQuasigroup]:
    """Stream the models of ``spec`` in a deterministic order.

    With ``jobs > 1`` the subtrees below each choice of row 0 are explored on
    a thread pool and emitted in subtree order, so the output matches the
    sequential run.
    """
    prob = _Problem(spec)
    stats = stats if stats is not None else SearchStats()
    t0 = time.perf_counter()
    limit = spec.limit
    if limit == 0:
        return
    emitted = 0
    try:
        if jobs <= 1:
            gen = prob.run()
            for t in gen:
                emitted += 1
                stats.models = emitted
                yield _to_algebra(t)
                if limit is not None and emitted >= limit:
                    break
            stats.nodes += int(prob.stats[0])
            stats.leaves += int(prob.stats[1])
        else:
            def job(i):
                sub = _Problem.__new__(_Problem)
                sub.__dict__.update(prob.__dict__)
                cand, ncand = prob.subproblem_candidates(i)
                models = list(sub.run(cand, ncand))
                return models, int(sub.stats[0]), int(sub.stats[1])

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                futures = [pool.submit(job, i) for i in range(int(prob.ncand[0]))]
                try:
                    for fut in futures:
                        models, nodes, leaves = fut.result()
                        stats.nodes += nodes
                        stats.leaves += leaves
                        for t in models:
                            emitted += 1
                            stats.models = emitted
                            yield _to_algebra(t)
                            if limit is not None and emitted >= limit:
                                return
                finally:
                    for fut in futures:
                        fut.cancel()
    finally:
        stats.seconds = time.perf_counter() - t0


def count(spec: SearchSpec, jobs: int = 1) -> int:
    return sum(1 for _ in search(spec, jobs))


def exists(spec: SearchSpec) -> Optional[FiniteLeftQuasigroup]:
    one = SearchSpec(spec.order, spec.axioms, spec.identities, 1, spec.up_to_iso, spec.allow_large)
    return next(search(one), None)


def lex_min_form(Q: FiniteLeftQuasigroup) -> FiniteLeftQuasigroup:
    """Smallest relabeled table (row-major), a canonical isomorphism-class representative."""
    n = Q.order
    if n > MAX_ISO_ORDER:
        raise TooLarge(f"canonical form is limited to order {MAX_ISO_ORDER}")
    perms, invperms, _, _ = _perm_data(n)
    T = Q.mul
    best = None
    for s, inv in zip(perms, invperms):
        cand = s[T[np.ix_(inv, inv)]]
        if best is None or tuple(cand.ravel()) < tuple(best.ravel()):
            best = cand
    return FiniteLeftQuasigroup(np.ascontiguousarray(best), Q.name, _checked=True)
