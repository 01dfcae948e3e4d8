import itertools
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lquasi.action import dis
from lquasi.algebra import find_isomorphism, properties
from lquasi.classify import is_connected
from lquasi.construct import (
    FiniteGroupTable,
    affine_cyclic,
    constant_power,
    constant_power_malcev_term,
    coset_quandle,
    cyclic_permutation,
    dihedral,
    multipotent_malcev_term,
    projection,
    subtraction,
)
from lquasi.errors import HNotFixed, InputError, NotAutomorphism, NotSubgroup, TooSmall
from lquasi.permgroup import is_regular
from lquasi.terms import is_malcev_term_for


def test_projection_and_affine_examples():
    assert projection(3).table() == [[0, 1, 2]] * 3
    assert affine_cyclic(3, -1).table() == [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    with pytest.raises(NotAutomorphism):
        affine_cyclic(4, 2)
    assert dihedral(5).table() == affine_cyclic(5, -1).table()


def test_subtraction_and_cyclic_tables():
    assert subtraction(3).table() == [[0, 2, 1], [1, 0, 2], [2, 1, 0]]
    assert cyclic_permutation(3).table() == [[1, 2, 0]] * 3
    f = properties(subtraction(5))
    assert f.is_unipotent and f.is_semimedial and f.is_latin and not f.is_idempotent


def test_coset_examples():
    Z3 = FiniteGroupTable.cyclic(3)
    Q = coset_quandle(Z3, [0], [0, 2, 1])
    assert find_isomorphism(Q, affine_cyclic(3, -1)) is not None
    S3, els = FiniteGroupTable.from_permutations(itertools.permutations(range(3)))
    H = [els.index((0, 1, 2)), els.index((1, 0, 2))]
    # conjugation by the transposition (0 1) fixes H pointwise
    t = els[H[1]]
    f = [els.index(tuple(t[g[t[i]]] for i in range(3))) for g in els]
    Q = coset_quandle(S3, H, f)
    assert Q.order == 3 and properties(Q).is_quandle
    assert coset_quandle(S3, range(6), list(range(6))).order == 1


def test_coset_errors():
    Z4 = FiniteGroupTable.cyclic(4)
    with pytest.raises(NotSubgroup):
        coset_quandle(Z4, [0, 1], [0, 1, 2, 3])
    with pytest.raises(NotAutomorphism):
        coset_quandle(Z4, [0], [0, 2, 1, 3])
    with pytest.raises(HNotFixed):
        coset_quandle(Z4, [0, 1, 2, 3], [0, 3, 2, 1])
    with pytest.raises(InputError):
        FiniteGroupTable([[0, 1], [0, 1]])


def test_constant_power_examples():
    Q = constant_power(1, 3)
    assert not properties(Q).is_latin
    with pytest.raises(TooSmall):
        constant_power(2, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_constant_power_malcev_term(n):
    Q = constant_power(n, n + 2)
    assert is_malcev_term_for(Q, constant_power_malcev_term(n))


def test_multipotent_term_on_subtraction():
    # s(Q) = {0} after one squaring, so the degree-1 term works
    for n in range(2, 7):
        assert is_malcev_term_for(subtraction(n), multipotent_malcev_term(1))


@pytest.mark.parametrize("n", range(1, 13))
def test_affine_connected_iff_unit(n):
    for k in range(n):
        if gcd(k, n) != 1:
            continue
        Q = affine_cyclic(n, k)
        assert is_connected(Q) == (gcd((1 - k) % n, n) == 1 or n == 1)
        assert properties(Q).is_latin == (gcd((1 - k) % n, n) == 1 or n == 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_subtraction_dis_regular(n):
    D = dis(subtraction(n))
    assert is_regular(D) and D.order() == n


@given(st.integers(1, 12), st.integers(1, 3))
def test_constant_power_identity(n_extra, n):
    Q = constant_power(n, n + n_extra)
    for a in range(Q.order):
        v = a
        for _ in range(n):
            v = Q.op(a, v)
        assert v == 0


def test_multipotent_term_by_degree():
    from lquasi.corpus import left_quasigroups_up_to
    seen = set()
    for Q in left_quasigroups_up_to(3) + [constant_power(2, 4)]:
        d = properties(Q).multipotency_degree
        if d is None:
            continue
        seen.add(d)
        assert is_malcev_term_for(Q, multipotent_malcev_term(max(d, 1))), (Q.table(), d)
    assert {1, 2} <= seen
