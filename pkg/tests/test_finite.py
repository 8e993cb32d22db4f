import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcgsym import certify
from mcgsym.finite import (
    ModMatrix,
    NotInGroupError,
    NotPrimeError,
    ResourceError,
    bsgs,
    check_budget,
    closure,
    enumerate_sp,
    sp_group_order,
    verdict_for_matrices,
)
from mcgsym.symplectic import transvection


def tv(v, p):
    return ModMatrix(transvection(v).rows, p)


HUMPHRIES_G2 = [(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (-1, 0, 1, 0)]


@pytest.mark.parametrize("g,p,n", [(1, 2, 6), (1, 3, 24), (2, 3, 51840), (3, 2, 1451520)])
def test_sp_group_order(g, p, n):
    assert sp_group_order(g, p) == n


def test_sp_group_order_matches_enumeration():
    for p in (2, 3):
        assert len(enumerate_sp(1, p)) == sp_group_order(1, p)


def test_non_prime_rejected():
    with pytest.raises(NotPrimeError):
        sp_group_order(2, 4)
    with pytest.raises(NotPrimeError):
        ModMatrix(np.eye(2), 9)


def test_non_symplectic_rejected_mod_p():
    with pytest.raises(NotInGroupError):
        ModMatrix([[2, 0], [0, 1]], 5)


def test_trivial_group():
    chain = bsgs([ModMatrix.identity(4, 3)])
    assert chain.order() == 1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_single_transvection_has_order_p(p):
    assert bsgs([tv((1, 0, 0, 1), p)]).order() == p


def test_humphries_twists_generate_sp4_3():
    chain = bsgs([tv(v, 3) for v in HUMPHRIES_G2])
    assert chain.complete
    assert chain.order() == 51840 == sp_group_order(2, 3)


def test_bsgs_matches_closure_on_small_subgroups():
    rng = random.Random(7)
    for _ in range(10):
        vs = [tuple(rng.randint(-1, 1) for _ in range(2)) for _ in range(2)]
        vs = [v for v in vs if any(v)]
        gens = [tv(v, 3) for v in vs]
        if gens:
            assert bsgs(gens).order() == len(closure(gens))


def test_membership_yes_with_witness():
    gens = [tv(v, 3) for v in HUMPHRIES_G2]
    chain = bsgs(gens, names=[f"t{i}" for i in range(5)])
    assert chain.contains(ModMatrix.identity(4, 3)).member
    for m in gens:
        res = chain.contains(m)
        assert res.member and chain.evaluate_word(res.word) == m
    m = tv((1, 1, 1, 0), 3)
    res = chain.contains(m)
    assert res.member and chain.evaluate_word(res.word) == m


def test_membership_no_matches_brute_force():
    gens = [tv((1, 0), 3)]
    chain = bsgs(gens)
    sub = closure(gens)
    outside = [m for m in enumerate_sp(1, 3) if m not in sub]
    assert len(outside) == 24 - 3
    for m in outside:
        assert not chain.contains(m).member
    for m in sub:
        assert chain.contains(m).member


def _random_gens(seed, k=2):
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        v = tuple(rng.randint(-1, 1) for _ in range(4))
        if any(v):
            out.append(tv(v, 3))
    return out


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_order_invariant_under_permutation_inversion_conjugation(seed):
    gens = _random_gens(seed)
    base = bsgs(gens).order()
    assert sp_group_order(2, 3) % base == 0  # Lagrange
    assert bsgs(gens[::-1]).order() == base
    assert bsgs([g.inverse() for g in gens]).order() == base
    c = tv((1, 1, 0, 1), 3) @ tv((0, 1, 1, 0), 3)
    assert bsgs([c @ g @ c.inverse() for g in gens]).order() == base


def test_chain_is_deterministic():
    gens = [tv(v, 3) for v in HUMPHRIES_G2]
    a, b = bsgs(gens, seed=3), bsgs(gens, seed=3)
    assert a.orbit_lengths() == b.orbit_lengths()
    assert [s.tolist() for s in a.strong] == [s.tolist() for s in b.strong]
    assert bsgs(gens, seed=11).order() == a.order()


def test_twist_images_are_involutions_mod_2():
    m = tv((1, 0, 1, 1), 2)
    assert (m @ m).is_identity()


def test_budget_error_is_explicit():
    with pytest.raises(ResourceError):
        check_budget(5, 7, 10**7)
    check_budget(3, 5, 10**7)
    with pytest.raises(ResourceError):
        verdict_for_matrices("x", {"t": transvection((1, 0, 0, 0)).rows}, 2, 3, orbit_budget=10)


def test_verdict_json_shape():
    v = certify.generation_verdict("wajnryb_pair", 3, 2)
    d = v.to_dict()
    assert set(d) == {"set", "g", "p", "subgroup_order", "full_order", "generates", "ms"}
    assert d["generates"] is True and d["full_order"] == str(sp_group_order(3, 2))


def test_negative_control_sets_are_proper():
    for name in ("rho1_only", "Q_only"):
        v = certify.generation_verdict(name, 3, 3)
        assert not v.generates
    assert certify.generation_verdict("rho1_only", 3, 3).subgroup_order == 2
    assert certify.generation_verdict("Q_only", 3, 3).subgroup_order == 8


def test_remark_variant_with_rotation_generates():
    assert certify.rotation_moves_alpha1_to_alpha2(3)
    assert certify.generation_verdict("three_torsion_rotation", 3, 3).generates


@pytest.mark.parametrize("name", certify.PRIMARY_SETS)
def test_sets_generate_at_p_5(name):
    # cross-check of the p = 2 verdicts where twists and involutions coincide mod 2
    assert certify.generation_verdict(name, 3, 5).generates
