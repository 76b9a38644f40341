from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.polyring import (
    ConjugationMismatch,
    GaussianRational as G,
    Grading,
    I,
    ParseError,
    PolyCC,
    VarId,
    format_gaussian,
    parse_gaussian,
    parse_poly,
)

Z1, ZB1, U2, W2 = VarId("Z", 1), VarId("Zbar", 1), VarId("U", 2), VarId("W", 2)

fr = st.fractions(min_value=-4, max_value=4, max_denominator=3)
gauss = st.builds(G, fr, fr)
names = st.sampled_from(["z1", "zb1", "z2", "u2", "w2", "wb2", "u3"])


@st.composite
def polys(draw, max_terms=4):
    p = PolyCC()
    for _ in range(draw(st.integers(0, max_terms))):
        term = PolyCC.const(draw(gauss))
        for n in draw(st.lists(names, max_size=3)):
            term = term * parse_poly(n)
        p = p + term
    return p


# gaussian rationals


def test_gaussian_arithmetic():
    a, b = G(1, 2), G(Fraction(1, 2), -1)
    assert a * b == G(Fraction(5, 2), 0)
    assert a / a == G(1)
    assert (a ** 2) == G(-3, 4)
    assert a.conjugate() == G(1, -2)
    assert a.abs2() == 5


def test_gaussian_rejects_float():
    with pytest.raises(TypeError):
        G.coerce(0.5)


@pytest.mark.parametrize(
    "text,val",
    [("3/2-1/4I", G(Fraction(3, 2), Fraction(-1, 4))), ("2I", G(0, 2)), ("-I", G(0, -1)), ("7", G(7)), ("1+I", G(1, 1))],
)
def test_parse_gaussian(text, val):
    assert parse_gaussian(text) == val


@pytest.mark.parametrize("text", ["", "I2", "1.5", "3/", "abc"])
def test_parse_gaussian_rejects(text):
    with pytest.raises(ParseError):
        parse_gaussian(text)


@given(gauss)
def test_compact_literal_round_trip(c):
    assert parse_gaussian(format_gaussian(c, compact=True)) == c


# polynomials


def test_parse_and_print():
    p = parse_poly("Im(w2) - z*zb")
    assert p == (parse_poly("w2") - parse_poly("wb2")) * G(0, Fraction(-1, 2)) - parse_poly("z1*zb1")
    assert parse_poly("z^2/2") == parse_poly("z1*z1") * Fraction(1, 2)
    assert parse_poly("conj(I*z)") == parse_poly("-I*zb")


@pytest.mark.parametrize("text", ["z +", "q1", "z/z", "(z", "z0"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ZeroDivisionError, ValueError)):
        parse_poly(text)


def test_diff_and_evaluate():
    p = parse_poly("z^2*zb + 3*u2")
    assert p.diff(Z1) == parse_poly("2*z*zb")
    assert p.diff(Z1, 2) == parse_poly("2*zb")
    assert p.evaluate({Z1: G(1, 1), ZB1: G(1, -1), U2: G(2)}) == G(8, 2)


def test_substitute_checks_conjugate_pairs():
    p = parse_poly("z*zb")
    with pytest.raises(ConjugationMismatch):
        p.substitute({Z1: parse_poly("z2"), ZB1: parse_poly("z2")})
    assert p.substitute({Z1: parse_poly("I*z1"), ZB1: parse_poly("-I*zb1")}) == p


def test_weight_components_and_truncate():
    p = parse_poly("z*zb + u2 + z^2*zb^2 + w3*zb")
    parts = dict(p.weight_components())
    assert set(parts) == {2, 4}
    assert p.truncate(2) == parse_poly("z*zb + u2")
    assert p.min_weight() == 2


def test_grading_overrides_share_conjugates():
    g = Grading({VarId("Z", 2): 4})
    assert g.weight(VarId("Zbar", 2).code) == 4


def test_real_and_imag_parts():
    p = parse_poly("(1+2*I)*z")
    assert p.real_part() + p.imag_part() * I == p
    assert p.real_part().is_real() and p.imag_part().is_real()


def test_bidegree_part():
    p = parse_poly("z^2*zb + z*zb + zb^3")
    assert p.bidegree_part(2, 1) == parse_poly("z^2*zb")


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == PolyCC()


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_conjugation_is_ring_antiinvolution(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).is_real()


@settings(max_examples=40, deadline=None)
@given(polys(), polys())
def test_leibniz_rule(a, b):
    for v in (Z1, ZB1, U2, W2):
        assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_text_round_trip(p):
    assert parse_poly(p.to_text()) == p


@settings(max_examples=40, deadline=None)
@given(polys())
def test_weight_components_sum_and_euler(p):
    g = Grading()
    total = PolyCC()
    for w, part in p.weight_components(g):
        total = total + part
        euler = PolyCC()
        for v in part.variables():
            euler = euler + PolyCC.var(v) * part.diff(v) * g.weight(v.code)
        assert euler == part * w
    assert total == p


@settings(max_examples=30, deadline=None)
@given(polys(), polys(), gauss)
def test_substitute_is_homomorphism(a, b, c):
    bind = {Z1: PolyCC.var(Z1) * c + PolyCC.var(U2), ZB1: PolyCC.var(ZB1) * c.conjugate() + PolyCC.var(U2)}
    assert (a * b).substitute(bind) == a.substitute(bind) * b.substitute(bind)
