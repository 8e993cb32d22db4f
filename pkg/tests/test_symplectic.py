import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcgsym import certify, intlin
from mcgsym.symplectic import (
    NotSymplecticError,
    SympMatrix,
    TrivialClassError,
    coxeter_probe,
    cyclotomic,
    cyclotomic_factorization,
    evaluate,
    matrix_order,
    transvection,
    verify_identity,
)
from mcgsym.words import SIX_INVOLUTIONS, MCGWord, Letter, inverse, twist


def test_transvection_torus_example():
    assert transvection((1, 0)).rows == ((1, -1), (0, 1))


def test_transvection_formula():
    v = (1, 2, 0, -1)
    t = transvection(v)
    for x in [(1, 0, 0, 0), (0, 3, 1, 1), (2, -1, 5, 0)]:
        expect = tuple(a + intlin.form(x, v) * b for a, b in zip(x, v))
        assert t(x) == expect


def test_zero_class_rejected():
    with pytest.raises(TrivialClassError, match="separating"):
        transvection((0, 0, 0, 0))
    assert transvection((0, 0), allow_trivial=True).is_identity()


def test_non_symplectic_rejected():
    with pytest.raises(NotSymplecticError):
        SympMatrix(((2, 0), (0, 1)))
    with pytest.raises(NotSymplecticError):
        SympMatrix(((1, 0, 0),) * 3)


def test_matrix_json_round_trip():
    m = transvection((1, 1, 0, 1))
    d = m.to_dict()
    assert d["basis"] == "symplectic-standard" and d["genus"] == 2
    assert SympMatrix.from_dict(d) == m


def _random_word(rng, table, length):
    names = sorted(table.matrices)
    return MCGWord(tuple((Letter.parse(rng.choice(names)), rng.choice((-2, -1, 1, 2))) for _ in range(length)))


def test_thousand_random_words_are_symplectic():
    rng = random.Random(20261016)
    for g in (3, 4):
        table = certify.table_for(g)
        for _ in range(500):
            w = _random_word(rng, table, rng.randint(0, 12))
            m = evaluate(w, table)
            assert intlin.is_symplectic(m.rows)
            assert (m @ evaluate(inverse(w), table)).is_identity()


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_conjugation_covariance(seed):
    rng = random.Random(seed)
    table = certify.table_for(3)
    h = _random_word(rng, table, rng.randint(1, 6))
    curve = rng.choice(["alpha1", "beta2", "gamma3", "x2", "a4"])
    hm = evaluate(h, table)
    v = certify.table_curve_classes(3)[curve]
    conj = h * MCGWord.of(twist(curve)) * inverse(h)
    assert evaluate(conj, table) == transvection(hm(v))


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_evaluation_is_a_homomorphism(seed):
    rng = random.Random(seed)
    table = certify.table_for(3)
    a, b = _random_word(rng, table, 5), _random_word(rng, table, 5)
    assert evaluate(a * b, table) == evaluate(a, table) @ evaluate(b, table)


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == [1, -1]
    assert cyclotomic(6) == [1, -1, 1]
    assert cyclotomic(12) == [1, 0, -1, 0, 1]
    assert cyclotomic_factorization([1, 0, 0, 0, 0, 0, -1]) == [1, 2, 3, 6]
    assert cyclotomic_factorization([1, -3, 1]) is None


def test_orders_of_small_matrices():
    assert matrix_order(SympMatrix(((1, -1), (1, 0)))).order == 6
    assert matrix_order(SympMatrix(((0, 1), (-1, 0)))).order == 4
    unip = matrix_order(transvection((1, 0)))
    assert unip.status == "infinite" and unip.cyclotomic  # certificate from M^N != I
    hyper = matrix_order(SympMatrix(((2, 1), (1, 1))))
    assert hyper.status == "infinite" and not hyper.cyclotomic


def test_order_cap_is_reported_not_hidden():
    r = matrix_order(SympMatrix(((1, -1), (1, 0))), cap=4)
    assert r.status == "exceeds-cap" and r.exact_order == 6


def test_failed_identity_names_first_differing_column():
    table = certify.table_for(3)
    v = verify_identity(MCGWord.of(twist("alpha1")), MCGWord.of(twist("alpha2")), table, "bogus")
    assert not v.holds
    assert v.column == 1  # T_alpha1 and T_alpha2 first differ on beta1
    assert v.lhs_column != v.rhs_column


def test_left_handed_hook_inverts_one_twist():
    table = certify.table_for(3)
    flipped = table.with_left_handed("x1")
    assert flipped["T_x1"] == table["T_x1"].inverse()
    assert flipped["T_x2"] == table["T_x2"]


def test_coxeter_probe_g3():
    t = certify.table_for(3)
    rep = coxeter_probe({n: t[n] for n in SIX_INVOLUTIONS})
    assert len(rep.table) == 6 and all(len(r) == 6 for r in rep.table)
    assert rep.entry("rho1", "rho2") == 3
    assert all(rep.table[i][i] == 1 for i in range(6))
    assert all(rep.table[i][j] == rep.table[j][i] for i in range(6) for j in range(6))


@pytest.mark.parametrize("g", [3, 4, 5, 6])
def test_all_witnesses_hold(g):
    table = certify.table_for(g)
    for ident in certify.witness_identities(g):
        assert verify_identity(ident.lhs, ident.rhs, table).holds, ident.name
