import itertools

import pytest
from hypothesis import given

from lquasi.algebra import one_element
from lquasi.congruence import (
    commutator_guard,
    commutator_semimedial,
    congruence_lattice,
    congruences_bruteforce,
    distributivity_obstructions,
    is_abelian_algebra,
    is_abelian_congruence,
    is_coherent,
    is_congruence,
    is_regular,
    is_strongly_abelian_congruence,
    is_uniform,
    principal_congruence,
)
from lquasi.construct import affine_cyclic, cyclic_permutation, projection
from lquasi.errors import HypothesisNotMet
from lquasi.partition import Partition

from conftest import left_quasigroups

AFF4 = affine_cyclic(4, -1)
D3 = affine_cyclic(3, -1)


def naive_abelian(Q, alpha):
    """Diagonal criterion with a plain union-find saturation on A(alpha)."""
    n = Q.order
    lab = alpha.labels
    pairs = [(a, b) for a in range(n) for b in range(n) if lab[a] == lab[b]]
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for a, b in itertools.combinations(range(n), 2):
        if lab[a] == lab[b]:
            parent[find(index[(a, a)])] = find(index[(b, b)])
    changed = True
    while changed:
        changed = False
        classes = {}
        for i in range(len(pairs)):
            classes.setdefault(find(i), []).append(i)
        for members in classes.values():
            for i, j in itertools.combinations(members, 2):
                for c in pairs:
                    for f in (Q.op, Q.div):
                        (a1, b1), (a2, b2) = pairs[i], pairs[j]
                        for u, v in ((index[(f(a1, c[0]), f(b1, c[1]))], index[(f(a2, c[0]), f(b2, c[1]))]),
                                     (index[(f(c[0], a1), f(c[1], b1))], index[(f(c[0], a2), f(c[1], b2))])):
                            ru, rv = find(u), find(v)
                            if ru != rv:
                                parent[ru] = rv
                                changed = True
    diag = {find(index[(a, a)]) for a in range(n)}
    return all(find(index[p]) not in diag for p in pairs if p[0] != p[1])


def test_is_congruence_examples():
    assert is_congruence(AFF4, Partition.from_blocks([[0, 2], [1, 3]]))[0]
    ok, w = is_congruence(AFF4, Partition.from_blocks([[0, 1], [2, 3]]))
    assert not ok and w is not None
    assert is_congruence(D3, Partition.discrete(3))[0]


def test_lattice_examples():
    assert [str(c) for c in congruence_lattice(D3)] == ["{{0},{1},{2}}", "{{0,1,2}}"]
    got = {str(c) for c in congruence_lattice(AFF4)}
    assert got == {"{{0},{1},{2},{3}}", "{{0},{1,3},{2}}", "{{0,2},{1},{3}}", "{{0,2},{1,3}}", "{{0,1,2,3}}"}
    assert len(congruence_lattice(projection(2))) == 2


def test_uniform_regular_coherent_examples():
    assert is_uniform(D3)[0] and is_regular(D3)[0] and is_coherent(D3)[0]
    ok, w = is_regular(AFF4)
    assert not ok
    ok, w = is_uniform(AFF4)
    assert not ok and sorted(w["block_sizes"]) in ([1, 1, 2],)


def test_abelian_examples():
    assert is_abelian_algebra(D3)
    assert is_abelian_algebra(one_element())
    assert is_abelian_congruence(AFF4, Partition.discrete(4))
    assert is_abelian_congruence(AFF4, Partition.from_blocks([[0, 2], [1, 3]]))


def test_nonabelian_connected_quandle():
    from lquasi.corpus import connected_quandles_up_to
    from lquasi.permgroup import is_abelian
    from lquasi.action import lmlt
    found = [Q for Q in connected_quandles_up_to(6) if Q.order == 6]
    assert found
    for Q in found:
        assert not is_abelian(lmlt(Q))
        assert not is_abelian_algebra(Q)
        assert not naive_abelian(Q, Partition.total(6))


def test_strongly_abelian_examples():
    assert is_strongly_abelian_congruence(AFF4, Partition.from_blocks([[0], [2], [1, 3]]))
    assert is_strongly_abelian_congruence(AFF4, Partition.from_blocks([[0, 2], [1, 3]]))
    assert not is_strongly_abelian_congruence(D3, Partition.total(3))


def test_commutator_examples():
    assert commutator_semimedial(D3, Partition.total(3), Partition.total(3)) == Partition.discrete(3)
    assert commutator_semimedial(D3, Partition.discrete(3), Partition.total(3)) == Partition.discrete(3)


def test_commutator_guard_rejects_cyc3():
    # superconnected and semimedial, but not in a Mal'cev variety
    Q = cyclic_permutation(3)
    ok, reason = commutator_guard(Q)
    assert not ok
    with pytest.raises(HypothesisNotMet):
        commutator_semimedial(Q, Partition.total(3), Partition.total(3))
    with pytest.raises(HypothesisNotMet):
        commutator_semimedial(projection(3), Partition.total(3), Partition.total(3))


def test_commutator_on_nonabelian_superconnected():
    from lquasi.classify import is_superconnected
    from lquasi.corpus import quandles_up_to
    for Q in quandles_up_to(6):
        if Q.order > 1 and is_superconnected(Q)[0] and not is_abelian_algebra(Q):
            one = Partition.total(Q.order)
            assert commutator_semimedial(Q, one, one) == one


def test_obstruction_examples():
    rep = distributivity_obstructions(D3)
    assert {"abelian-congruence", "solvable-admissible"} <= rep.kinds()
    assert not distributivity_obstructions(one_element()).found


@given(left_quasigroups(max_order=5))
def test_lattice_matches_partition_scan(Q):
    assert list(congruence_lattice(Q)) == congruences_bruteforce(Q)


@given(left_quasigroups(max_order=5))
def test_lattice_closed(Q):
    L = congruence_lattice(Q)
    assert L.is_closed()
    assert L.bottom.is_discrete() and L.top.is_total()


@given(left_quasigroups(max_order=4))
def test_principal_congruence_is_least(Q):
    cons = congruences_bruteforce(Q)
    for a, b in itertools.combinations(range(Q.order), 2):
        p = principal_congruence(Q, a, b)
        assert p == min((c for c in cons if c.related(a, b)), key=lambda c: c.sort_key())
        assert all(p <= c for c in cons if c.related(a, b))


@given(left_quasigroups(max_order=3))
def test_abelian_matches_naive(Q):
    for alpha in congruence_lattice(Q):
        assert is_abelian_congruence(Q, alpha) == naive_abelian(Q, alpha)
        assert is_abelian_congruence(Q, alpha, use_filter=False) == naive_abelian(Q, alpha)


@given(left_quasigroups(max_order=4))
def test_strongly_abelian_implies_abelian(Q):
    for alpha in congruence_lattice(Q):
        if is_strongly_abelian_congruence(Q, alpha):
            assert is_abelian_congruence(Q, alpha)
