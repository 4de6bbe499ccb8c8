"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from gsp4cert.exactnum import Poly, RatFun, Scalar

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(Scalar, fractions, fractions)
nonzero_scalars = scalars.filter(bool)

VARS = ("x", "y", "z")


@st.composite
def polys(draw, max_terms=4, max_exp=3, variables=VARS):
    p = Poly()
    for _ in range(draw(st.integers(0, max_terms))):
        mono = Poly.const(draw(scalars))
        for v in variables:
            e = draw(st.integers(0, max_exp))
            if e:
                mono = mono * Poly.var(v) ** e
        p = p + mono
    return p


nonzero_polys = polys().filter(bool)
ratfuns = st.builds(RatFun, polys(max_terms=3, max_exp=2), polys(max_terms=3, max_exp=2).filter(bool))
