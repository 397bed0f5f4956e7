from fractions import Fraction

from hypothesis import strategies as st

from ellhiggs.torus import ComplexRational, CotangentPoint, CurvePoint


@st.composite
def curve_points(draw, max_den=12):
    n = draw(st.integers(1, max_den))
    return CurvePoint(Fraction(draw(st.integers(0, n - 1)), n), Fraction(draw(st.integers(0, n - 1)), n))


@st.composite
def complex_rationals(draw):
    re = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
    im = Fraction(draw(st.integers(-3, 3)), draw(st.integers(1, 3)))
    return ComplexRational(re, im)


@st.composite
def cotangent_points(draw):
    return CotangentPoint(draw(curve_points()), draw(complex_rationals()))
