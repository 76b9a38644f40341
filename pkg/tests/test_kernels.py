from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom import _kernels_py, kernels
from crhom.polyring import GaussianRational as G

codes = st.sampled_from([1001, 1002, 2001, 2002, 3002, 4003, 5003])
monos = st.lists(codes, max_size=4).map(lambda xs: tuple(sorted(xs)))
coeffs = st.builds(G, st.fractions(max_denominator=5), st.fractions(max_denominator=5))
polys = st.dictionaries(monos, coeffs, max_size=5).map(lambda d: {m: c for m, c in d.items() if c})
small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_backend_selection():
    assert kernels.BACKEND in ("python", "cython")


def test_mono_mul_merges_sorted(kern):
    assert kern.mono_mul((1001, 2001), (1001, 3002)) == (1001, 1001, 2001, 3002)
    assert kern.mono_mul((), (1001,)) == (1001,)


def test_poly_add_cancels(kern):
    p = {(1001,): G(1, 2)}
    assert kern.poly_add(p, {(1001,): G(-1, -2)}) == {}
    assert kern.poly_add(p, p, G(-1)) == {}


def test_rref_small(kern):
    red, piv = kern.rref([[Fraction(1, 2), 1], [1, 2]], 2)
    assert piv == [0]
    assert red == [[1, 2]]


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_poly_mul_matches_reference(kern, a, b):
    assert kern.poly_mul(a, b) == _kernels_py.poly_mul(a, b)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_poly_add_matches_reference(kern, a, b):
    assert kern.poly_add(a, b) == _kernels_py.poly_add(a, b)
    assert kern.poly_add(a, b, G(-1)) == _kernels_py.poly_add(a, b, G(-1))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), max_size=5)))
def test_rref_matches_reference(kern, rows):
    n = len(rows[0]) if rows else 3
    assert kern.rref(rows, n) == _kernels_py.rref(rows, n)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rref_is_reduced(kern, rows):
    red, piv = kern.rref(rows, 3)
    for i, c in enumerate(piv):
        assert red[i][c] == 1
        assert all(red[k][c] == 0 for k in range(len(red)) if k != i)
