import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcgsym import words as W
from mcgsym.words import IDENTITY, Letter, MCGWord, inverse, power, sym, twist

LETTERS = [twist("alpha1"), twist("beta1"), sym("rho1"), sym("J2")]
syllable = st.tuples(st.sampled_from(LETTERS), st.integers(-3, 3))
words = st.lists(syllable, max_size=12).map(lambda xs: MCGWord(tuple(xs)))


@given(words)
def test_inverse_cancels(w):
    assert w * inverse(w) == IDENTITY
    assert inverse(inverse(w)) == w


@given(words, words, words)
def test_concatenation_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(words)
def test_json_round_trip(w):
    assert MCGWord.from_json(w.to_json()) == w


@given(words)
def test_reduced_form_has_no_adjacent_repeats(w):
    sy = w.syllables
    assert all(e != 0 for _, e in sy)
    assert all(a[0] != b[0] for a, b in zip(sy, sy[1:]))


def test_letter_parse():
    assert Letter.parse("T_gamma2") == twist("gamma2")
    assert Letter.parse("J4") == sym("J4")
    assert str(twist("x1")) == "T_x1"


def test_power_and_negative_power():
    a = MCGWord.of(twist("a1"), sym("rho1"))
    assert power(a, 3).letter_count() == 6
    assert power(a, -1) == inverse(a)
    assert power(a, 0) == IDENTITY


@pytest.mark.parametrize("g", range(2, 9))
def test_q_and_s_lengths(g):
    q, s = W.word_Q(g), W.word_S(g)
    assert q.letter_count() == 2 * g + 1
    assert s.letter_count() == 2 * g
    assert s * MCGWord.of(twist("alpha1")) == q
    assert str(q).startswith(f"T_alpha{g} T_beta{g}")
    assert str(q).endswith("T_beta1 T_alpha1")


def test_q_rejects_genus_one():
    with pytest.raises(W.UnsupportedGenusError, match="orders 4 and 6"):
        W.word_Q(1)


def test_six_involution_set_needs_genus_three():
    with pytest.raises(W.UnsupportedGenusError):
        W.six_involution_generators(2)


def test_six_involution_structure():
    gs = W.six_involution_generators(4)
    assert len(gs) == 6
    assert set(gs.elements) == set(W.SIX_INVOLUTIONS)
    assert W.seven_involution_count() == 7
    # witnesses use only the six involutions (plus defining K)
    six = set(W.SIX_INVOLUTIONS) | {"R_g"}
    for ident in gs.witnesses:
        if ident.name.startswith("T_"):
            assert {str(a) for a, _ in ident.rhs} <= six


def test_sandwich_is_palindromic():
    w = MCGWord.of(sym("K"), sym("rho1"))
    s = W.sandwich(w, "J3", "J2")
    assert str(s) == "J3 J2 K rho1 J2 J3"


def test_r_g_variant_needs_a_rotation_moving_alpha1():
    with pytest.raises(W.NotApplicableError):
        W.three_torsion_generators(3, "R_g", False)
    gs = W.three_torsion_generators(3, "R_g", True)
    assert set(gs.elements) == {"Q", "S", "R_g"}


def test_chain_exponents():
    lhs, rhs = W.chain_relation_words(W.q_chain(3))
    assert lhs.letter_count() == 7 * 8 and rhs == IDENTITY
    lhs, rhs = W.chain_relation_words(W.s_chain(3))
    assert lhs.letter_count() == 6 * 14
    open_lhs, open_rhs = W.chain_relation_words(W.ChainSpec(("c1", "c2"), closed=False))
    assert open_lhs.letter_count() == 2 * 6 and str(open_rhs) == "T_d"


def test_chain_check_rejects_non_chain():
    classes = {"u": (1, 0, 0, 0), "v": (0, 0, 1, 0)}
    with pytest.raises(W.InvalidChainError):
        W.check_chain(W.ChainSpec(("u", "v")), classes)


def test_check_alphabet():
    W.check_alphabet(W.word_U(2), ["T_alpha1", "T_alpha2"])
    with pytest.raises(W.UnknownGeneratorError):
        W.check_alphabet(W.word_U(2), ["T_alpha1"])


def test_identity_dict_round_trip():
    ident = W.lantern_words()["lantern_rearranged"]
    assert W.Identity.from_dict(ident.to_dict()) == ident
