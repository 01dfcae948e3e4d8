import itertools

import pytest
from hypothesis import given

from lquasi.algebra import direct_product, find_isomorphism, one_element, properties
from lquasi.classify import (
    classification_report,
    coset_reconstruction,
    find_abelian_subquandle,
    free_algebra_on_two,
    is_connected,
    is_superconnected,
    malcev_decision_general,
    malcev_decision_idempotent,
    p2_in_HS,
    verify_p2_witness,
)
from lquasi.construct import affine_cyclic, cyclic_permutation, projection, subtraction
from lquasi.corpus import one_swap_quandle
from lquasi.errors import FreeAlgebraTooLarge

from conftest import left_quasigroups

D3 = affine_cyclic(3, -1)
AFF4 = affine_cyclic(4, -1)


def test_connectivity_examples():
    assert is_connected(D3) and is_superconnected(D3)[0]
    assert not is_connected(projection(2))
    Q = one_swap_quandle()
    assert not is_connected(Q)
    ok, w = is_superconnected(Q)
    assert not ok and w is not None


def test_superconnected_methods_agree():
    from lquasi.corpus import left_quasigroups_up_to
    for Q in left_quasigroups_up_to(3):
        assert is_superconnected(Q, method="generated")[0] == is_superconnected(Q, method="all")[0]


def test_p2_examples():
    ok, w = p2_in_HS(projection(3))
    assert ok and verify_p2_witness(projection(3), w)
    assert not p2_in_HS(D3)[0]
    ok, w = p2_in_HS(AFF4)
    assert ok and verify_p2_witness(AFF4, w)


def test_malcev_idempotent_examples():
    assert malcev_decision_idempotent(D3).verdict == "yes"
    v = malcev_decision_idempotent(projection(3))
    assert v.verdict == "no" and v.witness is not None
    assert malcev_decision_idempotent(one_swap_quandle()).verdict == "no"


def test_free_algebra_examples():
    F = free_algebra_on_two(projection(2))
    assert F.order == 2 and properties(F.algebra()).is_projection
    F = free_algebra_on_two(D3)
    assert F.order == 3 and find_isomorphism(F.algebra(), D3) is not None
    F = free_algebra_on_two(cyclic_permutation(3))
    assert F.order == 6 and F.num_orbits == 2


def test_free_algebra_terms_evaluate():
    from lquasi.terms import eval_term
    Q = cyclic_permutation(3)
    F = free_algebra_on_two(Q)
    n = Q.order
    for i in range(F.order):
        t = F.term(i)
        vals = [eval_term(Q, t, {"x": a, "y": b}) for a in range(n) for b in range(n)]
        assert vals == F.elements[i].tolist()


def test_free_algebra_cap():
    with pytest.raises(FreeAlgebraTooLarge):
        free_algebra_on_two(affine_cyclic(5, 2), cap=3)
    v = malcev_decision_general(affine_cyclic(5, 2), cap=3)
    assert v.verdict in ("unknown", "yes")


def test_malcev_general_examples():
    v = malcev_decision_general(cyclic_permutation(3))
    assert v.verdict == "no" and v.free_order == 6 and v.witness["orbits"] == 2
    v = malcev_decision_general(D3)
    assert v.verdict == "yes" and v.free_order == 3 and v.orbit_count == 1
    assert malcev_decision_general(projection(2)).verdict == "no"


def test_no_verdict_witness_is_p2_map():
    # the coloring of F(2) by orbit is a homomorphism onto P2
    Q = cyclic_permutation(3)
    v = malcev_decision_general(Q)
    F = free_algebra_on_two(Q).algebra()
    col = v.witness["map_to_P2"]
    for a, b in itertools.product(range(F.order), repeat=2):
        assert col[F.op(a, b)] == col[b]


def test_abelian_subquandle_examples():
    assert find_abelian_subquandle(D3) == [0, 1, 2]
    assert find_abelian_subquandle(one_element()) is None
    S = find_abelian_subquandle(direct_product(D3, D3))
    assert S is not None and len(S) == 3


def test_report_examples():
    r = classification_report(subtraction(3))
    assert r.passed
    laws = {c.law for c in r.checks}
    assert "unipotent: Dis regular" in laws and "unipotent: latin" in laws
    r = classification_report(D3)
    assert r.passed and r.malcev.verdict == "yes"
    assert any(c.law.startswith("connected quandle: coset") and c.passed for c in r.checks)
    r = classification_report(projection(2))
    assert r.malcev.verdict == "no" and r.passed
    assert not any(c.law.startswith("Mal'cev") for c in r.checks)


def test_report_no_verdict_always_has_witness():
    from lquasi.corpus import left_quasigroups_up_to
    for Q in left_quasigroups_up_to(3):
        r = classification_report(Q, galois=False, obstructions=False)
        assert r.passed, [c for c in r.checks if not c.passed]
        if r.malcev.verdict == "no":
            assert r.malcev.witness is not None
        if r.malcev.verdict == "yes" and r.malcev.method == "free-algebra":
            assert r.malcev.orbit_count == 1
            assert r.malcev.free_order or "joined" in r.malcev.note


def test_report_renders_and_serializes():
    import json
    r = classification_report(cyclic_permutation(3))
    json.dumps(r.to_dict())
    assert "Mal'cev: no" in r.render()


def test_coset_reconstruction_connected_quandles():
    from lquasi.corpus import connected_quandles_up_to
    for Q in connected_quandles_up_to(6):
        assert coset_reconstruction(Q)[0]


@given(left_quasigroups(max_order=5, idempotent=True))
def test_pi0_equivalence(Q):
    ok, w = p2_in_HS(Q)
    assert ok == (not is_superconnected(Q)[0])
    if ok:
        assert verify_p2_witness(Q, w)


@given(left_quasigroups(max_order=4, idempotent=True))
def test_free_algebra_agrees_with_teo_taylor(Q):
    g = malcev_decision_general(Q)
    if g.verdict != "unknown":
        assert g.verdict == malcev_decision_idempotent(Q).verdict


@given(left_quasigroups(max_order=3))
def test_free_algebra_satisfies_identities_of_q(Q):
    # F(2) lies in V(Q): every small identity of Q holds in F(2)
    F = free_algebra_on_two(Q, cap=200, raise_on_overflow=False)
    if not F.complete:
        return
    A = F.algebra()
    from lquasi.terms import satisfies_identity
    for ident in ("(x*(y*z))=((x*y)*(x*z))", "(x*x)=x", "((x*y)*(x*z))=((x*x)*(y*z))", "(x*y)=(y*y)"):
        assert satisfies_identity(Q, ident)[0] <= satisfies_identity(A, ident)[0]
