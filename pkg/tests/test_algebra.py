import numpy as np
import pytest
from hypothesis import given

from lquasi.algebra import (
    FiniteLeftQuasigroup,
    all_subalgebras,
    direct_product,
    find_isomorphism,
    from_table,
    is_isomorphism,
    ldiv,
    one_element,
    properties,
    quotient,
    relabel,
    subalgebra_closure,
)
from lquasi.construct import affine_cyclic, cyclic_permutation, projection, subtraction
from lquasi.errors import NotCongruence, NotLeftQuasigroup, ShapeError
from lquasi.partition import Partition

from conftest import all_tables, left_quasigroups


def test_from_table_examples():
    P2 = from_table([[0, 1], [0, 1]])
    assert properties(P2).is_projection
    D3 = from_table([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert D3 == affine_cyclic(3, -1)
    with pytest.raises(ShapeError):
        from_table([[0, 1], [1, 0], [0, 1]])


def test_from_table_rejects_bad_rows():
    with pytest.raises(NotLeftQuasigroup) as e:
        from_table([[0, 1, 2], [0, 0, 1], [2, 1, 0]])
    assert e.value.row == 1
    with pytest.raises(ShapeError):
        from_table([[0, 5], [1, 0]])
    with pytest.raises(ShapeError):
        from_table([[0, 1], [1]])


def test_ldiv_examples(P2, D3, Aff4):
    assert ldiv(P2, 0, 1) == 1
    assert ldiv(D3, 1, 0) == 2
    assert ldiv(Aff4, 1, 3) == 3


def test_properties_examples(D3, Sub3, P2):
    f = properties(D3)
    assert f.is_quandle and f.is_medial and f.is_latin and f.is_involutory and f.is_faithful
    f = properties(Sub3)
    assert f.is_semimedial and f.is_latin and not f.is_idempotent
    assert f.multipotency_degree == 1
    f = properties(P2)
    assert f.is_projection and f.is_permutation and f.is_semimedial and f.is_idempotent
    assert not f.is_faithful


def _law(Q, pred, k):
    n = Q.order
    import itertools
    return all(pred(Q.op, *t) for t in itertools.product(range(n), repeat=k))


def test_flags_against_direct_laws():
    # independent re-statement of the laws, swept over all order-3 tables
    rack = lambda m, x, y, z: m(x, m(y, z)) == m(m(x, y), m(x, z))
    semi = lambda m, x, y, z: m(m(x, y), m(x, z)) == m(m(x, x), m(y, z))
    medial = lambda m, x, y, z, t: m(m(x, y), m(z, t)) == m(m(x, z), m(y, t))
    for Q in all_tables(3):
        f = properties(Q)
        assert f.is_rack == _law(Q, rack, 3)
        assert f.is_semimedial == _law(Q, semi, 3)
        assert f.is_medial == _law(Q, medial, 4)
        # implications
        assert not f.is_quandle or f.is_rack
        assert not f.is_rack or f.is_semimedial
        assert not f.is_medial or f.is_semimedial
        assert not f.is_latin or f.is_faithful


def test_subalgebra_closure_examples(D3, Aff4, P2):
    assert subalgebra_closure(D3, {0}) == {0}
    assert subalgebra_closure(Aff4, {0, 1}) == {0, 1, 2, 3}
    assert subalgebra_closure(P2, {0}) == {0}


def test_all_subalgebras_examples(D3, P2, Cyc3):
    assert set(all_subalgebras(D3)) == {frozenset({0}), frozenset({1}), frozenset({2}), frozenset({0, 1, 2})}
    assert set(all_subalgebras(P2)) == {frozenset({0}), frozenset({1}), frozenset({0, 1})}
    assert all_subalgebras(Cyc3) == [frozenset({0, 1, 2})]


def test_quotient_examples(Aff4, D3):
    Q = quotient(Aff4, Partition.from_blocks([[0, 2], [1, 3]]))
    assert Q.table() == [[0, 1], [0, 1]]
    assert quotient(D3, Partition.discrete(3)) == D3
    assert quotient(D3, Partition.total(3)).order == 1
    with pytest.raises(NotCongruence):
        quotient(Aff4, Partition.from_blocks([[0, 1], [2, 3]]))


def test_direct_product_examples(P2, D3):
    PP = direct_product(P2, P2)
    assert properties(PP).is_projection and PP.order == 4
    DD = direct_product(D3, D3)
    f = properties(DD)
    assert DD.order == 9 and f.is_quandle and f.is_medial
    assert find_isomorphism(direct_product(D3, one_element()), D3) is not None


def test_find_isomorphism_examples(D3, P2, P3):
    R = relabel(D3, [1, 2, 0])
    sigma = find_isomorphism(D3, R)
    assert sigma is not None and is_isomorphism(D3, R, sigma)
    assert find_isomorphism(P2, affine_cyclic(2, -1)) is not None
    assert find_isomorphism(P3, D3) is None


@given(left_quasigroups())
def test_division_identities(Q):
    n = Q.order
    for a in range(n):
        for b in range(n):
            assert Q.op(a, Q.div(a, b)) == b
            assert Q.div(a, Q.op(a, b)) == b


@given(left_quasigroups())
def test_closure_is_closure_operator(Q):
    n = Q.order
    rng = np.random.default_rng(n)
    for _ in range(5):
        S = set(rng.choice(n, size=rng.integers(1, n + 1), replace=False).tolist())
        T = S | {int(rng.integers(n))}
        c = subalgebra_closure(Q, S)
        assert S <= c
        assert subalgebra_closure(Q, c) == c
        assert c <= subalgebra_closure(Q, T)


@given(left_quasigroups(max_order=5))
def test_self_isomorphism_and_relabel(Q):
    assert find_isomorphism(Q, Q) is not None
    sigma = list(np.random.default_rng(Q.order).permutation(Q.order))
    R = relabel(Q, sigma)
    tau = find_isomorphism(Q, R)
    assert tau is not None and is_isomorphism(Q, R, tau)


def test_quotients_are_left_quasigroups():
    from lquasi.congruence import congruence_lattice
    for Q in (affine_cyclic(4, -1), projection(3), subtraction(4), cyclic_permutation(4)):
        for theta in congruence_lattice(Q):
            R = quotient(Q, theta)
            assert isinstance(R, FiniteLeftQuasigroup)
            assert all(sorted(r) == list(range(R.order)) for r in R.table())
