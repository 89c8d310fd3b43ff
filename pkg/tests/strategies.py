"""Hypothesis strategies for Laurent-Weyl elements."""

from fractions import Fraction

from hypothesis import strategies as st

from racahweyl.params import ParamPoly
from racahweyl.weyl import WeylElement

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def coefficients(draw, params=("a1", "a2")):
    c = ParamPoly.const(draw(rationals))
    if params and draw(st.booleans()):
        c = c + draw(rationals) * ParamPoly.symbol(draw(st.sampled_from(params)))
    return c


@st.composite
def elements(draw, n=2, max_terms=3, xrange=(-2, 2), max_d=2, params=("a1", "a2")):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        xexp = tuple(draw(st.integers(*xrange)) for _ in range(n))
        dexp = tuple(draw(st.integers(0, max_d)) for _ in range(n))
        terms[(xexp, dexp)] = draw(coefficients(params))
    return WeylElement(n, terms)
