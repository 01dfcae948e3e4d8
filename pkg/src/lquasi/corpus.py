"""Named instances and small generated corpora.

The corpora are produced by the model finder with isomorph rejection, so
each list holds one representative per isomorphism class.
"""
from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional


from .algebra import FiniteLeftQuasigroup, direct_product, from_table, properties
from .construct import (affine_cyclic, cyclic_permutation, dihedral, one_element_quandle,
                        projection, subtraction)
from .errors import InputError
from .io import read_lqt
from .search import SearchSpec, search

# Rows 1, 3 and 4 coincide as printed; they are kept separately so that each
# row stays paired with its own witness.
TABLE1_IDENTITIES = {
    3: "L[x]^1(L[y]^2(L[x]^1(L[y]^1(L[x]^2(L[y]^1(L[x]^1(L[y]^2(x))))))))=y",
    4: "L[x]^2(L[y]^1(L[x]^1(L[y]^2(L[x]^1(L[y]^1(L[x]^2(L[y]^2(x))))))))=y",
    5: "L[x]^1(L[y]^2(L[x]^1(L[y]^1(L[x]^2(L[y]^1(L[x]^1(L[y]^2(x))))))))=y",
    6: "L[x]^1(L[y]^2(L[x]^1(L[y]^1(L[x]^2(L[y]^1(L[x]^1(L[y]^2(x))))))))=y",
}


def one_swap_quandle() -> FiniteLeftQuasigroup:
    """L_0 = L_2 = id, L_1 = (0 2)."""
    return from_table([[0, 1, 2], [2, 1, 0], [0, 1, 2]], name="Swap3")


def _d3xd3():
    D = dihedral(3)
    return direct_product(D, D)


NAMED: dict[str, Callable[[], FiniteLeftQuasigroup]] = {
    "T1": one_element_quandle,
    "P2": lambda: projection(2),
    "P3": lambda: projection(3),
    "D3": lambda: dihedral(3),
    "D4": lambda: dihedral(4),
    "D5": lambda: dihedral(5),
    "Aff4": lambda: affine_cyclic(4, -1),
    "Aff5_2": lambda: affine_cyclic(5, 2),
    "Sub3": lambda: subtraction(3),
    "Sub4": lambda: subtraction(4),
    "Cyc3": lambda: cyclic_permutation(3),
    "Swap3": one_swap_quandle,
    "D3xD3": _d3xd3,
}


def named_instances() -> list[FiniteLeftQuasigroup]:
    return [f() for f in NAMED.values()]


def get(name: str) -> FiniteLeftQuasigroup:
    try:
        return NAMED[name]()
    except KeyError:
        raise InputError(f"unknown named instance {name!r}; known: {', '.join(NAMED)}") from None


def _label(prefix, n, i, Q):
    return FiniteLeftQuasigroup(Q.mul, f"{prefix}{n}_{i}", _checked=True)


@lru_cache(maxsize=None)
def _iso_reps(n: int, axioms: frozenset) -> tuple:
    spec = SearchSpec(n, axioms=axioms, up_to_iso=True)
    tag = "".join(sorted(a[0].upper() for a in axioms)) or "LQ"
    return tuple(_label(tag, n, i, Q) for i, Q in enumerate(search(spec)))


def left_quasigroups(n: int) -> list[FiniteLeftQuasigroup]:
    """Isomorphism-class representatives of all left quasigroups of order n (n <= 4 is quick)."""
    return list(_iso_reps(n, frozenset()))


def quandles(n: int) -> list[FiniteLeftQuasigroup]:
    return list(_iso_reps(n, frozenset({"quandle"})))


def medial_algebras(n: int) -> list[FiniteLeftQuasigroup]:
    return list(_iso_reps(n, frozenset({"medial"})))


def quandles_up_to(max_order: int = 6) -> list[FiniteLeftQuasigroup]:
    return [Q for n in range(1, max_order + 1) for Q in quandles(n)]


def left_quasigroups_up_to(max_order: int = 4) -> list[FiniteLeftQuasigroup]:
    return [Q for n in range(1, max_order + 1) for Q in left_quasigroups(n)]


def connected_quandles_up_to(max_order: int = 6) -> list[FiniteLeftQuasigroup]:
    from .classify import is_connected
    return [Q for Q in quandles_up_to(max_order) if is_connected(Q)]


def corpus(max_quandle_order: int = 6) -> list[FiniteLeftQuasigroup]:
    """Named instances followed by the quandle corpus."""
    return named_instances() + quandles_up_to(max_quandle_order)


def semimedial_superconnected(max_quandle_order: int = 6) -> list[FiniteLeftQuasigroup]:
    from .classify import is_superconnected
    out = []
    for Q in corpus(max_quandle_order):
        if properties(Q).is_semimedial and is_superconnected(Q)[0]:
            out.append(Q)
    return out


RIG_ENV = "LQUASI_RIG_DIR"


def rig_path(order: int, index: int, directory: Optional[str] = None) -> Optional[Path]:
    d = directory or os.environ.get(RIG_ENV)
    if not d:
        return None
    for pattern in (f"SmallQuandle_{order}_{index}", f"SmallQuandle({order},{index})", f"Q{order}_{index}"):
        for ext in ("", ".txt", ".rig", ".lqt"):
            p = Path(d) / (pattern + ext)
            if p.is_file():
                return p
    return None


def load_rig(order: int, index: int, directory: Optional[str] = None) -> Optional[FiniteLeftQuasigroup]:
    """Read a rig-matrix export of SmallQuandle(order, index), or None if absent.

    RIG stores right-distributive quandles, i.e. columns are the translations;
    the matrix is read transposed unless its rows already form a rack.
    """
    p = rig_path(order, index, directory)
    if p is None:
        return None
    try:
        Q = read_lqt(p, fmt="rig", transpose=True)
        if properties(Q).is_rack:
            return Q
    except InputError:
        pass
    return read_lqt(p, fmt="rig", transpose=False)
