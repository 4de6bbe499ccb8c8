from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from gsp4cert.exactnum import ONE, Poly, Scalar
from gsp4cert.forms import BOREL, Multivector, covector, named_forms, wedge, wedge_all
from gsp4cert.gsp4 import STD, Weight
from gsp4cert.invcalc import (TH1, TH2, CoeffFn, TwistedForm, ce_d, closedness_condition, d_table, derived_relation,
                              df, eisenstein_seed_closed, eta_o_squared, eta_tau, stated_d_table,
                              stated_higher_identities, stated_obstruction, stated_relation, structure_constants_b0,
                              top_five_form, twisted_d, weights_of_section6_forms)
from strategies import scalars

a, h, n0, n1, n2, n3 = (covector(x) for x in STD.borel_names)
MONOMIALS = [Multivector(BOREL, {key: ONE}) for k in range(7) for key in combinations(range(6), k)]


def test_d_squared_zero_on_all_monomials():
    assert len(MONOMIALS) == 64
    for m in MONOMIALS:
        assert not ce_d(ce_d(m))


def test_d_examples():
    assert not ce_d(a) and not ce_d(h)
    assert ce_d(n0) == -(h ^ n0) * 2
    assert ce_d(n1 ^ n2) == -wedge_all(a, n1, n2) * 4 - wedge_all(n0, n1 - n2, n3)


def test_d_table_against_display():
    got, want = d_table(), stated_d_table()
    agree = [x for x in STD.borel_names if got[x] == want[x]]
    assert agree == ["a", "h", "n0", "n1", "n2"]
    # n3: the n0*∧n2* term has the opposite sign
    assert got["n3"] == -(a ^ n3) * 2 - (n0 ^ (n1 - n2))


def test_higher_identities():
    for label, form, printed in stated_higher_identities():
        assert ce_d(form) == printed, label


def test_d_is_antiderivation():
    for u in MONOMIALS[1:7]:
        for v in MONOMIALS[7:22]:
            lhs = ce_d(wedge(u, v))
            rhs = wedge(ce_d(u), v) - wedge(u, ce_d(v))  # u has degree 1
            assert lhs == rhs


def test_structure_constants_antisymmetric():
    C = structure_constants_b0()
    for i in range(6):
        for j in range(6):
            assert C[i][j] == tuple(-x for x in C[j][i])


# ---------------------------------------------------------------- twisted calculus

ops = st.sampled_from([Poly.const(1), TH1, TH2, TH1 * TH2 + 3, TH1 * TH1 - TH2 * 2])
coeffs = st.builds(lambda s, p, q: CoeffFn.make(0, {s: p * q}),
                   st.sampled_from(["tau1", "tau2", "kappa"]), ops, scalars.map(Poly.const))


@st.composite
def twisted_forms(draw):
    pairs = []
    for _ in range(draw(st.integers(1, 3))):
        k = draw(st.integers(0, 4))
        key = tuple(sorted(draw(st.sets(st.integers(0, 5), min_size=k, max_size=k))))
        pairs.append((draw(coeffs), Multivector(BOREL, {key: ONE})))
    return TwistedForm.from_pairs(pairs)


@given(twisted_forms())
def test_twisted_d_squared_zero(W):
    assert not twisted_d(twisted_d(W))


def test_df_rule():
    F = CoeffFn.f("tau")
    d = df(F)
    assert d[0] == CoeffFn.f("tau", TH2 * 2)
    assert d[1] == CoeffFn.f("tau", TH1 * 2 - TH2 * 2)


def test_twisted_d_constant_form():
    assert not twisted_d(TwistedForm.from_pairs([(CoeffFn.make(3), a)]))


def test_closedness_obstruction():
    res = closedness_condition()
    assert res.obstruction == CoeffFn.make(0, {"tau1": -1, "tau2": TH2 * 2 - TH1 * 2})
    assert res.obstruction - stated_obstruction() == CoeffFn.make(0, {"tau2": -2})
    assert not res.matches_stated


def test_closedness_trivial_and_relations():
    res = closedness_condition()
    zero = {"tau1": CoeffFn.make(), "tau2": CoeffFn.make()}
    assert res.closed_under(zero)
    assert res.closed_under(derived_relation())
    rem = res.d_eta.substitute(stated_relation())
    assert rem == TwistedForm.from_pairs([(CoeffFn.f("tau2", -2), top_five_form())])


def test_seed_closed():
    rec = eisenstein_seed_closed()
    assert rec.closed
    assert rec.eta_o == covector("a") * 2
    assert not eta_o_squared()


def test_seed_with_domega_reports_remainder():
    rec = eisenstein_seed_closed(inject_domega=True)
    assert rec.remainder_with_domega == {("domega", "eta_o"): Poly.var("K")}


def test_section6_weights():
    W = weights_of_section6_forms()
    assert W.eta_lower == {"eta_+": Weight.of(1, 0), "eta_-": Weight.of(-1, 0)}
    assert W.eta_upper == {"eta^+": Weight.of(-1, 0), "eta^-": Weight.of(1, 0)}
    assert len(W.failures) == 2


def test_u_star_table_three_weights():
    W = weights_of_section6_forms()
    weights = sorted(w for _, w in W.u_star_table[:3])
    assert weights == [Weight.of(-1, 0), Weight.of(0, 0), Weight.of(1, 0)]
