from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gsp4cert.exactnum import ONE, ZERO, Poly, Scalar
from gsp4cert.forms import k_action, named_forms
from gsp4cert.gsp4 import bracket
from gsp4cert.uea import (LAMBDA, PBW_NAMES, PeriodReducer, UEAElt, UnknownSymbol, casimir, commutation_identity,
                          commutation_identity_substituted, commutator, e_beta_power_times_h, g0_algebra, g0_basis,
                          killing_form, stated_recursion_check, pbw_product, period_reduce, sl2_algebra, spin2_mu,
                          uea_dump)

A = g0_algebra()
GB = g0_basis()
BASIS = GB.ordered()
words = st.lists(st.integers(0, 9), min_size=0, max_size=5).map(tuple)
monomials = st.lists(st.integers(0, 9), max_size=3).map(lambda w: A.elt({tuple(sorted(w)): ONE}))


def test_basis_normalisation():
    for g, mg in (("a", "-a"), ("b", "-b"), ("a+b", "-a-b"), ("a-b", "-a+b")):
        assert killing_form(GB.elements["E_" + g], GB.elements["E_" + mg]) == Scalar(2)
    assert GB.b_value == Fraction(1, 3)


def test_killing_symmetric_and_invariant():
    for X, Y in product(BASIS, repeat=2):
        assert killing_form(X, Y) == killing_form(Y, X)
    for X, Y, Z in product(BASIS[:4], BASIS, BASIS[4:]):
        assert killing_form(bracket(X, Y), Z) == killing_form(X, bracket(Y, Z))


def test_degree_one_commutators_match_bracket():
    vecs = [b.vector() for b in BASIS]
    from gsp4cert import linalg
    L = linalg.left_inverse(vecs)
    for i, j in product(range(10), repeat=2):
        xy = commutator(A.gen(PBW_NAMES[i]), A.gen(PBW_NAMES[j]))
        c = linalg.matvec(L, bracket(BASIS[i], BASIS[j]).vector())
        want = A.elt({(k,): v for k, v in enumerate(c) if v})
        assert xy == want


@settings(max_examples=250)
@given(words)
def test_confluence(w):
    assert UEAElt(A, A.normalize_word(w, "left")) == UEAElt(A, A.normalize_word(w, "right"))


@given(monomials, monomials, monomials)
def test_associativity(x, y, z):
    assert pbw_product(pbw_product(x, y), z) == pbw_product(x, pbw_product(y, z))


def test_normal_form_is_sorted():
    u = A.word(["E_-a", "E_a", "H_b", "E_b"])
    assert all(list(k) == sorted(k) for k in u.terms)
    with pytest.raises(ValueError):
        UEAElt(A, {(3, 1): ONE})


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        A.gen("E_2a")


def test_casimir_centrality_and_shape():
    cas = casimir()
    assert all(cas.central.values()) and len(cas.central) == 10
    assert cas.shape_ok
    assert all(v == ONE for v in cas.pair_coefficients.values())
    assert cas.gram_det


def test_commutation_identities():
    for i in range(1, 6):
        assert commutation_identity(i).holds
        assert commutation_identity(i, symbolic=True).holds
        assert commutation_identity_substituted(i)
    r = commutation_identity(1)
    assert r.lhs == r.rhs == A.word(["E_b", "E_-b"])


def test_commutation_identity_detects_wrong_coefficient():
    S = sl2_algebra()
    b = Poly.var("b")
    lhs = S.word(["E_b", "E_b", "E_-b", "E_-b"])
    wrong = S.word(["E_b", "E_-b", "E_b", "E_-b"]) + S.word(["H_b", "E_b", "E_-b"]) - S.word(["E_b", "E_-b"]).scale(b * 2)
    assert lhs != wrong


def test_e_beta_power_times_h():
    for j in range(1, 4):
        lhs, rhs = e_beta_power_times_h(j)
        assert lhs == rhs


def test_mu_against_wedge_oracle():
    Ea, Ema = GB.elements["E_a"], GB.elements["E_-a"]
    v0 = k_action(Ema, k_action(Ema, named_forms()["eta_2"]))
    mu = spin2_mu()
    assert mu[0] == ONE
    assert k_action(Ea, k_action(Ema, v0)).proportional_to(v0) == mu[1]
    w = k_action(Ea, k_action(Ea, k_action(Ema, k_action(Ema, v0))))
    assert w.proportional_to(v0) == mu[2]
    assert mu[3] == mu[4] == ZERO


def test_period_reduce_basic():
    R = PeriodReducer("A")
    assert R.C(0) == Poly.const(1)
    assert R.C(1) == LAMBDA - spin2_mu()[1]
    for i in range(1, 5):
        assert R.C(i).degree("lambda") == i
        assert R.C(i).coefficient({"lambda": i}) == ONE


def test_period_reduce_rules():
    one = A.one()
    assert period_reduce(one) == Poly.const(1)
    assert period_reduce(A.word(["H_a"])) == Poly()  # h kills
    assert period_reduce(A.word(["E_b"])) == Poly()  # nonzero weight
    assert period_reduce(A.word(["E_a", "E_-a"])) == Poly.const(spin2_mu()[1])
    assert period_reduce(A.word(["E_b", "E_b", "E_-b", "E_-b"])) == PeriodReducer("A").C(2)


def test_strategies_agree_on_C():
    RA, RB = PeriodReducer("A"), PeriodReducer("B")
    for i in range(7):
        assert RA.C(i) == RB.C(i)


@st.composite
def weight_zero_words(draw):
    pairs = [("E_a", "E_-a"), ("E_b", "E_-b"), ("E_a+b", "E_-a-b"), ("E_a-b", "E_-a+b")]
    letters = []
    for _ in range(draw(st.integers(1, 3))):
        letters += list(draw(st.sampled_from(pairs)))
    perm = draw(st.permutations(letters))
    return tuple(A.index[x] for x in perm)


@given(st.one_of(weight_zero_words(), st.lists(st.integers(0, 9), max_size=6).map(tuple)))
def test_strategy_independence(w):
    assert PeriodReducer("A").reduce_word(w) == PeriodReducer("B").reduce_word(w)


def test_stated_recursion():
    R = PeriodReducer("A")
    for i in range(1, 5):
        lhs, rhs = stated_recursion_check(i, R)
        assert lhs == rhs


def test_bad_strategy():
    with pytest.raises(ValueError):
        PeriodReducer("C")


def test_dump_is_json_ready():
    import json
    d = uea_dump()
    assert json.loads(json.dumps(d)) == d
    assert d["C"]["0"] == Poly.const(1).to_json()
