import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.analytic import DomainError, Z, Zb, const, eval_numeric, from_poly, numeric_hermitian_jet, shift
from crhom.polyring import parse_poly

pts = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(pts, pts)
def test_from_poly_matches(a, b):
    p = parse_poly("z1^2*zb1 + (2-I)*z2*zb1 + 3")
    e = from_poly(p)
    want = a * a * a.conjugate() + (2 - 1j) * b * a.conjugate() + 3
    assert cmath.isclose(eval_numeric(e, [a, b]), want, abs_tol=1e-9)


def test_rpow_and_domain():
    e = (Z() * Zb()).re().rpow("1/2")
    assert abs(eval_numeric(e, [3 + 4j]) - 5) < 1e-12
    with pytest.raises(DomainError):
        eval_numeric((const(-1) * Z() * Zb()).re().rpow("1/3"), [1j])


def test_shift():
    e = Z() * Zb()
    assert abs(eval_numeric(shift(e, [1 + 1j]), [0j]) - 2) < 1e-12


def test_jet_of_polynomial():
    # |z1|^2 + 2Re(z1 zb2) + 3|z2|^2 has Hermitian matrix [[1,1],[1,3]]
    e = from_poly(parse_poly("z1*zb1 + z1*zb2 + z2*zb1 + 3*z2*zb2 + z1^2*zb1"))
    jet = numeric_hermitian_jet([e], [0, 0])
    (M,) = jet.matrices
    want = [[1, 1], [1, 3]]
    for a in range(2):
        for b in range(2):
            assert abs(M[a][b] - want[a][b]) < 1e-6
    assert jet.asymmetry < 1e-6


def test_jet_fractional_power():
    # phi = (Re z)^(4/3) at z = 1: d^2/dz dzbar = (1/4)(4/3)(1/3)
    e = Z().re().rpow("4/3")
    (M,) = numeric_hermitian_jet([e], [1.0]).matrices
    assert abs(M[0][0].real - 1 / 9) < 1e-7


def test_richardson_improves():
    e = Z().re().rpow("5/2")
    exact = 0.25 * 2.5 * 1.5
    plain = numeric_hermitian_jet([e], [0.7], h=1e-2, richardson=False).matrices[0][0][0].real
    rich = numeric_hermitian_jet([e], [0.7], h=1e-2).matrices[0][0][0].real
    assert abs(rich - exact * 0.7 ** 0.5) < abs(plain - exact * 0.7 ** 0.5)
