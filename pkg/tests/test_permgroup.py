import pytest
from hypothesis import given
from hypothesis import strategies as st

from lquasi.action import dis, lmlt
from lquasi.construct import affine_cyclic
from lquasi.errors import GroupTooLarge
from lquasi.partition import Partition
from lquasi.permgroup import (
    Permutation,
    PermutationGroup,
    center,
    commutator_subgroup,
    derived_series,
    is_abelian,
    is_regular,
    is_solvable,
    is_transitive,
    normal_closure,
    orbit,
    orbits,
    stabilizer,
    symmetric_group,
)


def cyc(n, *cycles):
    return tuple(Permutation.from_cycles(cycles, n))


def naive_closure(gens, n):
    """Multiply everything by everything until nothing new appears."""
    ident = tuple(range(n))
    S = {ident} | {tuple(g) for g in gens}
    while True:
        new = {tuple(a[b[i]] for i in range(n)) for a in S for b in S} | S
        if new == S:
            return S
        S = new


def test_orbits_examples():
    assert orbits(PermutationGroup(3, [cyc(3, (0, 1, 2))])).num_blocks == 1
    assert orbits(PermutationGroup.trivial(2)) == Partition.discrete(2)
    assert orbits(dis(affine_cyclic(4, -1))) == Partition.from_blocks([[0, 2], [1, 3]])


def test_elements_examples():
    G = PermutationGroup(2, [(1, 0)])
    assert G.elements() == {(0, 1), (1, 0)}
    D3 = affine_cyclic(3, -1)
    assert lmlt(D3).order() == 6
    R = dis(D3)
    assert R.order() == 3 and R.elements() == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


def test_group_cap():
    with pytest.raises(GroupTooLarge):
        PermutationGroup(5, symmetric_group(5).raw_generators, cap=50).elements()


def test_normal_closure_examples():
    S3 = PermutationGroup(3, [cyc(3, (0, 1, 2)), cyc(3, (0, 1))])
    assert normal_closure(S3, [cyc(3, (0, 1))]).order() == 6
    assert normal_closure(S3, [(0, 1, 2)]).is_trivial()
    C4 = PermutationGroup(4, [cyc(4, (0, 1, 2, 3))])
    N = normal_closure(C4, [cyc(4, (0, 2), (1, 3))])
    assert N.order() == 2


def test_commutator_examples():
    C3 = PermutationGroup(3, [cyc(3, (0, 1, 2))])
    assert commutator_subgroup(C3, C3).is_trivial()
    S3 = symmetric_group(3)
    A3 = commutator_subgroup(S3, S3)
    assert A3.elements() == C3.elements()
    assert commutator_subgroup(S3, PermutationGroup.trivial(3)).is_trivial()


def test_derived_series_examples():
    S3 = symmetric_group(3)
    assert [G.order() for G in derived_series(S3)] == [6, 3, 1]
    assert is_solvable(S3)
    S5 = PermutationGroup(5, [cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))])
    series = derived_series(S5)
    assert [G.order() for G in series] == [120, 60]
    assert not is_solvable(S5)
    assert [G.order() for G in derived_series(PermutationGroup.trivial(3))] == [1]


def test_center_examples():
    assert center(symmetric_group(3)).is_trivial()
    C3 = PermutationGroup(3, [cyc(3, (0, 1, 2))])
    assert center(C3).order() == 3 and is_abelian(C3)
    D8 = PermutationGroup(4, [cyc(4, (0, 1, 2, 3)), cyc(4, (1, 3))])
    assert D8.order() == 8 and center(D8).order() == 2


def test_stabilizer_examples():
    D3 = affine_cyclic(3, -1)
    R = dis(D3)
    assert is_transitive(R) and is_regular(R)
    G = lmlt(D3)
    assert is_transitive(G) and not is_regular(G)
    assert stabilizer(G, 0).elements() == {(0, 1, 2), (0, 2, 1)}
    assert not is_transitive(PermutationGroup.trivial(2))


def test_permutation_printing():
    p = Permutation.from_cycles([(0, 2)], 3)
    assert str(p) == "(0 2)"
    assert list(p.images) == [2, 1, 0]


perm_lists = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=0, max_size=3).map(lambda gs: (n, gs)))


@given(perm_lists)
def test_enumeration_matches_naive(ng):
    n, gens = ng
    G = PermutationGroup(n, gens)
    assert G.elements() == naive_closure(gens, n)


@given(perm_lists, st.permutations(list(range(6))))
def test_orbits_ignore_redundant_generators(ng, extra):
    n, gens = ng
    G = PermutationGroup(n, gens)
    h = next(iter(G.elements()))
    assert orbits(PermutationGroup(n, list(gens) + [h])) == orbits(G)


@given(perm_lists)
def test_orbit_stabilizer(ng):
    n, gens = ng
    G = PermutationGroup(n, gens)
    for a in range(n):
        assert G.order() == len(orbit(G, a)) * stabilizer(G, a).order()
    assert is_regular(G) == (is_transitive(G) and stabilizer(G, 0).is_trivial())


@given(perm_lists, st.data())
def test_normal_closure_is_normal(ng, data):
    n, gens = ng
    G = PermutationGroup(n, gens)
    els = sorted(G.elements())
    seed = data.draw(st.sampled_from(els))
    N = normal_closure(G, [seed])
    assert N.is_normal_in(G)
    assert seed in N


@given(perm_lists)
def test_derived_series_strictly_decreasing(ng):
    n, gens = ng
    orders = [H.order() for H in derived_series(PermutationGroup(n, gens))]
    assert all(a > b for a, b in zip(orders, orders[1:]))
