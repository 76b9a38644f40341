from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.polyring import GaussianRational as G, I, PolyCC, VarId
from crhom.surface import NAMED, make_named, make_q, parse_surface
from crhom.vfield import (
    PolyVectorField,
    bracket,
    check_cr_pair,
    cr_coefficients,
    cr_fields,
    evaluate,
)

z = PolyCC.var(VarId("Z", 1))
zb = PolyCC.var(VarId("Zbar", 1))


def test_hyperquadric_fields():
    s = make_named("HYPERQUADRIC")
    (A,), trunc = cr_coefficients(s, 1)
    assert A == zb * G(0, 2) and not trunc
    X, Y = cr_fields(s)
    assert X.components()["u1"] == (zb * G(0, 2)).real_part()
    assert Y.components()["y1"] == PolyCC.const(1)


def test_hyperquadric_bracket():
    X, Y = cr_fields(make_named("HYPERQUADRIC"))
    B = bracket(X, Y)
    assert not any(B.a)
    assert B.c == (PolyCC.const(-4),)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_cr_pairs(name):
    s = NAMED[name]
    fs = cr_fields(s)
    for X, Y in zip(fs[::2], fs[1::2]):
        assert check_cr_pair(s, X, Y)


def test_check_cr_pair_rejects_swapped():
    s = make_q((1, 2, 3))
    X, Y = cr_fields(s)
    assert not check_cr_pair(s, Y, X)


def test_u_dependent_neumann_series():
    # J nilpotent: Phi_3 depends on u2 only
    s = parse_surface("Im w2 = z1*zb1\nIm w3 = u2*z1*zb1\n")
    A, trunc = cr_coefficients(s, 1)
    assert not trunc
    X, Y = cr_fields(s)
    assert check_cr_pair(s, X, Y)


def test_truncated_neumann_series():
    # Phi_2 depends on u2 itself, so J is not nilpotent and the series is cut
    s = parse_surface("# w_weights: 2\nIm w2 = u2*z1*zb1 + z1*zb1\n")
    (A,), trunc = cr_coefficients(s, 1, truncate_weight=6)
    assert trunc
    assert max(s.grading().mono_weight(m) for m in A.terms) <= 6


def test_evaluate_exact():
    X, Y = cr_fields(make_named("HYPERQUADRIC"))
    assert evaluate(X, [G(1, 2)]) == [1, 0, 4]
    assert evaluate(Y, [G(1, 2)]) == [0, 1, -2]


def test_bracket_chart_mismatch():
    a = PolyVectorField.zero(1, (2,))
    b = PolyVectorField.zero(1, (2, 3))
    with pytest.raises(ValueError):
        bracket(a, b)


def _random_field(draw):
    coeff = st.fractions(min_value=-2, max_value=2, max_denominator=2)
    a = PolyCC()
    for m in (z, zb, z * zb, z * z):
        a = a + m * G(draw(coeff), draw(coeff))
    c = (z * zb * draw(coeff)) + (z * z * zb).real_part() * draw(coeff)
    return PolyVectorField([a], [c], (2,))


fields = st.composite(lambda draw: _random_field(draw))()


@settings(max_examples=25, deadline=None)
@given(fields, fields, fields)
def test_jacobi_identity(X, Y, W):
    total = bracket(X, bracket(Y, W)) + bracket(Y, bracket(W, X)) + bracket(W, bracket(X, Y))
    assert total.is_zero()


@settings(max_examples=25, deadline=None)
@given(fields, fields)
def test_bracket_antisymmetric(X, Y):
    assert (bracket(X, Y) + bracket(Y, X)).is_zero()
    assert bracket(X, X).is_zero()


@settings(max_examples=25, deadline=None)
@given(fields, fields, st.fractions(min_value=-2, max_value=2, max_denominator=3))
def test_bracket_bilinear(X, Y, r):
    assert bracket(X.scale(r), Y) == bracket(X, Y).scale(r)
