"""numba kernels against their numpy / pure-Python twins."""
import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest
from hypothesis import given, settings

from lquasi._accel import NUMBA_ENABLED
from lquasi.kernels import free as fk
from lquasi.kernels import laws as lk
from lquasi.kernels import sweep
from lquasi.kernels import terms as tk
from lquasi.terms import compile_term, parse_identity

from conftest import left_quasigroups

needs_numba = pytest.mark.skipif(not NUMBA_ENABLED, reason="numba disabled")


@pytest.fixture(scope="module")
def order3():
    mul = sweep.all_tables(3)
    return mul, sweep.ldiv_tables(mul)


@pytest.fixture(scope="module")
def order4_sample():
    mul = sweep.all_tables(4)
    rng = np.random.default_rng(7)
    pick = np.sort(rng.choice(len(mul), 3000, replace=False))
    idem = sweep.all_tables(4, idempotent=True)
    mul = np.concatenate([mul[pick], idem])
    return mul, sweep.ldiv_tables(mul)


def test_table_enumeration_counts():
    assert len(sweep.all_tables(2)) == 4
    assert len(sweep.all_tables(3)) == 216
    assert len(sweep.all_tables(3, idempotent=True)) == 8
    assert len(sweep.all_tables(4, idempotent=True)) == 1296
    assert [len(sweep.partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_ldiv_inverts_rows(order3):
    mul, ldiv = order3
    assert np.all(np.take_along_axis(ldiv, mul, axis=2) == np.arange(3))


@needs_numba
@pytest.mark.parametrize("which", ["order3", "order4_sample"])
def test_sweep_twins_agree(which, request):
    mul, ldiv = request.getfixturevalue(which)
    assert np.array_equal(sweep.batch_connected(mul, use_numba=True), sweep.batch_connected(mul, use_numba=False))
    sc = sweep.batch_superconnected(mul, ldiv, use_numba=True)
    assert np.array_equal(sc, sweep.batch_superconnected(mul, ldiv, use_numba=False))
    p2 = sweep.batch_p2(mul, ldiv, use_numba=True)
    assert np.array_equal(p2, sweep.batch_p2(mul, ldiv, use_numba=False))
    assert np.array_equal(sweep.batch_congruence_props(mul, ldiv, use_numba=True),
                          sweep.batch_congruence_props(mul, ldiv, use_numba=False))


def test_sweep_order3_counts(order3):
    mul, ldiv = order3
    sc = sweep.batch_superconnected(mul, ldiv)
    p2 = sweep.batch_p2(mul, ldiv)
    assert sc.sum() == 188 and p2.sum() == 28
    assert np.array_equal(sc, ~p2)


@needs_numba
@settings(max_examples=40)
@given(left_quasigroups(max_order=3))
def test_free_closure_twins(Q):
    n = Q.order
    gens = np.stack([np.repeat(np.arange(n), n), np.tile(np.arange(n), n)]).astype(np.int64)
    a = fk.free_closure(Q.mul, Q.ldiv, gens, 300)
    b = fk.free_closure_python(Q.mul, Q.ldiv, gens, 300)
    assert a[1] == b[1] and a[6] == b[6]
    assert np.array_equal(a[0][:a[1]], b[0][:b[1]])
    if not a[6]:
        from lquasi.kernels.closure import canonical_labels
        la = canonical_labels(np.asarray(a[2][:a[1]], dtype=np.int64).copy())
        lb = canonical_labels(np.asarray(b[2][:b[1]], dtype=np.int64).copy())
        assert np.array_equal(la, lb)


IDENTS = ["(x*y)=(y*x)", "(x*(y*z))=((x*y)*(x*z))", "(x\\(x*y))=y", "((x*y)*(z*t))=((x*z)*(y*t))", "x=y"]


@settings(max_examples=40)
@given(left_quasigroups(max_order=4))
def test_identity_scan_twins(Q):
    for s in IDENTS:
        ident = parse_identity(s)
        names = ident.variables
        lhs, rhs = compile_term(ident.lhs, names), compile_term(ident.rhs, names)
        out = np.zeros(max(len(names), 1), dtype=np.int64)
        bad = tk.identity_counterexample(Q.mul, Q.ldiv, lhs, rhs, len(names), out)
        cex = tk.identity_counterexample_numpy(Q.mul, Q.ldiv, lhs, rhs, len(names), chunk=7)
        assert bad == (cex is not None)
        if bad:
            assert tuple(out[:len(names)]) == cex


@settings(max_examples=60)
@given(left_quasigroups(max_order=5))
def test_law_twins(Q):
    m = Q.mul
    assert (lk.rack_violation(m)[0] < 0) == lk._rack_np(m)
    assert (lk.semimedial_violation(m)[0] < 0) == lk._semimedial_np(m)
    assert (lk.medial_violation(m)[0] < 0) == lk._medial_np(m)
    assert (lk.involutory_violation(m)[0] < 0) == lk._involutory_np(m)


SMOKE = textwrap.dedent("""
    import lquasi
    from lquasi.classify import malcev_decision_general, is_superconnected
    from lquasi.corpus import get
    from lquasi.kernels import sweep
    assert lquasi.backend() == "numpy"
    assert malcev_decision_general(get("Cyc3")).free_order == 6
    assert malcev_decision_general(get("D3")).verdict == "yes"
    assert is_superconnected(get("D3"))[0]
    mul = sweep.all_tables(3)
    assert int(sweep.batch_superconnected(mul).sum()) == 188
    from lquasi.search import SearchSpec, count
    assert count(SearchSpec(3, axioms=frozenset({"quandle"}))) == 5
    print("ok")
""")


def test_numpy_fallback_subprocess():
    env = dict(os.environ, LQUASI_DISABLE_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", SMOKE], env=env, capture_output=True, text=True, timeout=600)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip() == "ok"
