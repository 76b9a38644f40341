import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.group import (
    GroupElement,
    SignedRoot,
    action_lines,
    apply,
    compare_generator_matrix,
    compose,
    derive_line,
    generator_matrix,
    inverse,
    invariants_PQR,
    line_residual,
    make_descriptor,
    orbit_descriptor,
    probe_point,
    to_real_coords,
    verify_action,
    verify_relative_invariance,
)
from crhom.polyring import GaussianRational as G
from crhom.surface import make_q, tube_to_q

rat = st.fractions(min_value=-3, max_value=3, max_denominator=3)
pos = st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=3)
gauss = st.builds(G, rat, rat)
elements = st.builds(GroupElement, pos, gauss, rat, rat, rat)
points = st.tuples(gauss, gauss, gauss, gauss)


def test_identity():
    pt = (G(1, 2), G(0, 1), G(3), G(-1, 1))
    assert apply(GroupElement.identity(), pt) == pt


def test_dilation():
    pt = (G(1, 2), G(0, 1), G(3), G(-1, 1))
    assert apply(GroupElement(2), pt) == (pt[0] * 2, pt[1] * 4, pt[2] * 8, pt[3] * 16)


def test_q2_shift():
    pt = (G(1, 2), G(0, 1), G(3), G(-1, 1))
    out = apply(GroupElement(1, q2=1), pt)
    assert out[1] == pt[1] + 1 and out[2:] == pt[2:] and out[0] == pt[0]


def test_lambda_nonzero():
    with pytest.raises(ValueError):
        GroupElement(0)


@settings(max_examples=30, deadline=None)
@given(elements, elements, points)
def test_compose_matches_action(g, h, pt):
    assert apply(compose(g, h), pt) == apply(g, apply(h, pt))


@settings(max_examples=20, deadline=None)
@given(elements, elements, elements)
def test_associativity(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)


@settings(max_examples=30, deadline=None)
@given(elements, points)
def test_inverse(g, pt):
    gi = inverse(g)
    assert compose(g, gi) == GroupElement.identity()
    assert apply(gi, apply(g, pt)) == pt


@settings(max_examples=30, deadline=None)
@given(elements, rat, rat, rat, rat, rat)
def test_action_preserves_surface(g, x, y, u2, u3, u4):
    s = make_q((3, 2, 0))
    z = G(x, y)
    w = {}
    from crhom.bloomgraham import surface_point

    zs, w = surface_point(s, [z], {2: u2, 3: u3, 4: u4})
    img = apply(g, (zs[0], w[2], w[3], w[4]))
    assert s.contains([img[0]], {2: img[1], 3: img[2], 4: img[3]})


def test_verify_action():
    rep = verify_action()
    assert rep.ok
    assert rep.final_residual_terms == {2: 0, 3: 0, 4: 0}
    # the printed w3 and w4 lines do not preserve the surface
    assert rep.printed_residual_terms[3] > 0 and rep.printed_residual_terms[4] > 0
    assert rep.corrections


def test_derive_line_unique():
    for j in (2, 3, 4):
        line, nullity = derive_line(j)
        assert nullity == 0
        assert not line_residual(j, line)
        assert not line_residual(j, action_lines("final")[j])


def test_relative_invariance():
    rep = verify_relative_invariance()
    assert len(rep) == 9 and not any(rep.values())


@pytest.mark.parametrize(
    "pt, want",
    [
        ((0, G(0, 1), 0, 0), (1, 0, 0)),
        ((0, 0, 0, G(0, 1)), (0, 0, 1)),
        ((0, 0, G(0, 1), 0), (0, 1, 0)),
    ],
)
def test_invariant_examples(pt, want):
    assert invariants_PQR(pt) == want


@settings(max_examples=30, deadline=None)
@given(rat, rat, rat, rat, rat)
def test_invariants_vanish_on_surface(x1, y1, y2, y3, y4):
    pt = tube_to_q(x1, y1, y2, y3, y4)
    assert invariants_PQR(pt) == (0, 0, 0)


@settings(max_examples=30, deadline=None)
@given(points)
def test_sign_flip_map(pt):
    z, w2, w3, w4 = pt
    P, Q, R = invariants_PQR(pt)
    assert invariants_PQR((-z, w2, -w3, w4)) == (P, -Q, R)


@settings(max_examples=30, deadline=None)
@given(elements, points)
def test_invariant_weights(g, pt):
    P, Q, R = invariants_PQR(pt)
    P2, Q2, R2 = invariants_PQR(apply(g, pt))
    assert (P2, Q2, R2) == (g.lam ** 2 * P, g.lam ** 3 * Q, g.lam ** 4 * R)


def test_generator_matrix_examples():
    assert generator_matrix((0,) * 8)[1] == 5
    assert generator_matrix((0, 0, 0, 1, 0, 0, 0, 0))[1] == 6


def test_generator_rank_on_and_off_surface():
    rng = random.Random(3)

    def r():
        return Fraction(rng.randint(-6, 6), rng.randint(1, 3))

    for _ in range(20):
        pt = tube_to_q(r(), r(), r(), r(), r())
        assert generator_matrix(to_real_coords(pt))[1] == 5
    for _ in range(100):
        pt = tuple(G(r(), r()) for _ in range(4))
        if invariants_PQR(pt) != (0, 0, 0):
            assert generator_matrix(to_real_coords(pt))[1] == 6


def test_generator_matrix_matches_derived():
    rng = random.Random(5)
    pts = [tuple(G(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(4)) for _ in range(10)]
    assert compare_generator_matrix(pts) == []
    assert compare_generator_matrix(pts, "printed") == [(4, 7)]


@pytest.mark.parametrize(
    "base, label",
    [
        ((0, G(0, 1), 0, 0), "POS(mu=0, sigma=0)"),
        ((0, 0, G(0, 1), 0), "RHO(rho=0)"),
        ((0, 0, 0, G(0, -1)), "OMINUS"),
        ((0, 0, 0, G(0, 1)), "OPLUS"),
        ((0, 0, 0, 0), "SURFACE_C"),
        ((0, G(0, -1), G(0, 2), G(0, 3)), "NEG(nu=2, sigma=3)"),
        ((0, 0, G(0, -1), G(0, 5)), "TAU(tau=5)"),
    ],
)
def test_descriptor_examples(base, label):
    assert orbit_descriptor(base).label() == label


def test_descriptor_irrational():
    d = orbit_descriptor((0, G(0, 2), G(0, 1), 0))
    mu = d.param("mu")
    assert not mu.is_rational and mu.power(2) == Fraction(1, 8)
    assert abs(float(mu) - 8 ** -0.5) < 1e-12


@pytest.mark.parametrize("branch, params", [("POS", (1, 2)), ("NEG", (-1, 0)), ("RHO", (3,)), ("TAU", (-2,))])
def test_probe_points_round_trip(branch, params):
    name = {"POS": "mu", "NEG": "nu", "RHO": "rho", "TAU": "tau"}[branch]
    d = orbit_descriptor(probe_point(branch, *params))
    want = dict(zip((name, "sigma"), params))
    assert d == make_descriptor(branch, **want)


def test_descriptor_constant_on_orbits():
    rng = random.Random(11)

    def r():
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))

    for _ in range(50):
        g = GroupElement(Fraction(rng.randint(1, 5), rng.randint(1, 3)), G(r(), r()), r(), r(), r())
        base = tuple(G(r(), r()) for _ in range(4))
        assert orbit_descriptor(apply(g, base)) == orbit_descriptor(base)


@settings(max_examples=50, deadline=None)
@given(st.integers(-1, 1), st.sampled_from([1, 2, 3]), st.fractions(min_value=0, max_value=50, max_denominator=5))
def test_signed_root_canonical(sign, k, r):
    x = SignedRoot.make(sign, k, r)
    # canonical forms of equal reals compare equal
    assert SignedRoot.make(sign, 2 * k, r * r) == x
    if x.is_rational:
        assert x.power(k * x.k) == x.value() ** (k * x.k)
    assert str(SignedRoot.make(-1, 2, 4)) == "-2"
    assert str(SignedRoot.make(1, 2, 2)) == "(2)^(1/2)"


def test_signed_root_errors():
    with pytest.raises(ValueError):
        SignedRoot.make(1, 2, -1)
    with pytest.raises(ValueError):
        SignedRoot.make(1, 2, 2).value()
    with pytest.raises(ValueError):
        SignedRoot.make(1, 2, 2).power(3)
