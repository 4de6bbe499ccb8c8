from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gsp4cert.exactnum import (I, ONE, ZERO, MalformedInput, Poly, RatFun, Scalar, poly_substitute,
                               ratfun_eq)
from strategies import nonzero_polys, nonzero_scalars, polys, ratfuns, scalars

x, y = Poly.var("x"), Poly.var("y")
r1, r2, d = Poly.var("r1"), Poly.var("r2"), Poly.var("delta")


# ---------------------------------------------------------------- Scalar

def test_i_squared():
    assert I * I == -ONE


def test_scalar_str_parse_round_trip_examples():
    for s in (Scalar(0), Scalar(Fraction(-3, 7)), Scalar(0, 2), Scalar(1, -1), Scalar(Fraction(1, 2), Fraction(5, 3))):
        assert Scalar.parse(str(s)) == s


@given(scalars)
def test_scalar_parse_round_trip(a):
    assert Scalar.parse(str(a)) == a
    assert Scalar.from_json(a.to_json()) == a


@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + ZERO == a and a * ONE == a


@given(nonzero_scalars)
def test_scalar_inverse(a):
    assert a * a.inverse() == ONE


def test_scalar_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@given(scalars, scalars)
def test_conjugation_is_involutive_automorphism(a, b):
    assert a.conj().conj() == a
    assert (a + b).conj() == a.conj() + b.conj()
    assert (a * b).conj() == a.conj() * b.conj()


# ---------------------------------------------------------------- Poly

@given(polys(), polys(), polys())
def test_poly_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p + Poly() == p and p * Poly.const(1) == p


def test_poly_no_zero_terms_stored():
    p = x + y - x
    assert p == y
    assert all(c for c in p.terms.values())


def test_poly_degree_and_coefficients():
    p = (x + 1) ** 3
    assert p.degree("x") == 3
    assert p.coefficients_in("x")[2] == Poly.const(3)


@given(polys(), polys())
def test_poly_partial_substitution_is_ring_hom(p, q):
    b = {"x": y + 2}
    assert (p * q).partial_subs(b) == p.partial_subs(b) * q.partial_subs(b)
    assert (p + q).partial_subs(b) == p.partial_subs(b) + q.partial_subs(b)


# ---------------------------------------------------------------- RatFun

def test_ratfun_eq_factorization():
    assert ratfun_eq(RatFun(x * x - 1, x - 1), RatFun(x + 1))


def test_ratfun_eq_scaling_invariance():
    num, den = (r1 * r2 * d * 2) ** 2, (r1 * r1 + r2 * r2 * d * d) ** 2
    assert ratfun_eq(RatFun(num, den), RatFun(num * 3, den * 3))


def test_ratfun_eq_distinct_variables():
    assert not ratfun_eq(RatFun(Poly.const(1), x), RatFun(Poly.const(1), y))


def test_ratfun_zero_denominator_rejected():
    with pytest.raises(MalformedInput):
        RatFun(x, Poly())


@given(ratfuns, ratfuns, ratfuns)
def test_ratfun_field_axioms(f, g, h):
    assert ratfun_eq((f + g) + h, f + (g + h))
    assert ratfun_eq((f * g) * h, f * (g * h))
    assert ratfun_eq(f * (g + h), f * g + f * h)


@given(ratfuns, ratfuns)
def test_ratfun_eq_is_equivalence(f, g):
    assert ratfun_eq(f, f)
    assert ratfun_eq(f, g) == ratfun_eq(g, f)
    scaled = RatFun(f.num * 5, f.den * 5)
    assert ratfun_eq(f, scaled) and ratfun_eq(scaled, f)


# ---------------------------------------------------------------- substitution

TAN = RatFun(-r1, r2 * d)


def test_substitute_square():
    t = Poly.var("t")
    assert ratfun_eq(poly_substitute(t * t, {"t": TAN}), RatFun(r1 * r1, r2 * r2 * d * d))


def test_substitute_cos_double_angle_at_zero():
    t = Poly.var("t")
    f = RatFun(1 - t * t, 1 + t * t)
    val = RatFun(poly_substitute(f.num, {"t": RatFun(0)}).num, poly_substitute(f.den, {"t": RatFun(0)}).num)
    assert ratfun_eq(val, RatFun(1))


def test_substitute_one_minus_square():
    t = Poly.var("t")
    got = poly_substitute(1 - t * t, {"t": TAN})
    assert ratfun_eq(got, RatFun(r2 * r2 * d * d - r1 * r1, r2 * r2 * d * d))


def test_substitute_unbound_variable_named():
    with pytest.raises(KeyError, match="y"):
        poly_substitute(x * y, {"x": RatFun(1)})


@given(polys(variables=("x",)), polys(variables=("x",)))
def test_substitution_is_ring_hom(p, q):
    b = {"x": RatFun(y + 1, y - 3)}
    assert ratfun_eq(poly_substitute(p * q, b), poly_substitute(p, b) * poly_substitute(q, b))
    assert ratfun_eq(poly_substitute(p + q, b), poly_substitute(p, b) + poly_substitute(q, b))
