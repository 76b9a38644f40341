from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.polyring import GaussianRational as G, PolyCC, VarId
from crhom.surface import (
    NAMED,
    GeneralGermCoeffs,
    InvalidParams,
    InvalidSurface,
    ModelParams,
    UnsupportedAlgebraic,
    apply_change,
    general_germ,
    make_named,
    make_q,
    model_equivalence,
    parse_surface,
    q_to_tube,
    recenter,
    reduce_general_germ,
    residual_cubic_coefficient,
    serialize_surface,
    tube_to_q,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=2)
triples = st.tuples(small, small, small).filter(any)


def test_make_q_rejects_zero():
    with pytest.raises(InvalidParams):
        make_q((0, 0, 0))
    with pytest.raises(InvalidParams):
        ModelParams(G(1, 1), 0, 0)


def test_make_q_shape():
    s = make_q((1, 2, 3))
    s.validate()
    assert s.cr_dim == 1 and s.codim == 3 and s.w_weights == (2, 3, 4)
    assert s.label == "Q_{1,2,3}"


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_surfaces_valid(name):
    s = make_named(name.lower())
    s.validate()
    assert s.label == name


def test_unknown_named():
    with pytest.raises(KeyError):
        make_named("nope")


def test_tube_map_sends_q320_to_tube():
    # Re zeta_k = (Re zeta_1)^k on the image of Q_{3,2,0}
    s = make_q((3, 2, 0))
    onm = s.on_surface_bindings()
    imgs = {k: v.substitute(onm) for k, v in q_to_tube().items()}
    x1 = imgs["zeta1"].real_part()
    for k in (2, 3, 4):
        assert imgs[f"zeta{k}"].real_part() - x1 ** k == PolyCC()


@settings(max_examples=25, deadline=None)
@given(small, small, small, small, small)
def test_tube_inverse_lands_on_q320(x1, y1, y2, y3, y4):
    z, w2, w3, w4 = tube_to_q(x1, y1, y2, y3, y4)
    assert make_q((3, 2, 0)).contains([z], {2: w2, 3: w3, 4: w4})


def test_tube_round_trip():
    z, w2, w3, w4 = tube_to_q(Fraction(1, 2), 1, 2, -1, 3)
    vals = {VarId("Z", 1): z, VarId("W", 2): w2, VarId("W", 3): w3, VarId("W", 4): w4}
    zeta = {k: v.evaluate(vals) for k, v in q_to_tube().items()}
    assert zeta["zeta1"] == G(Fraction(1, 2), 1)
    assert zeta["zeta4"] == G(Fraction(1, 16), 3)


def test_reduce_general_germ_example():
    c = GeneralGermCoeffs(a=2, alpha=G(1), b=1, gamma=G(1, 1), delta=G(0, 2), chi=G(3), c=1, d=5)
    params, change = reduce_general_germ(c)
    assert apply_change(general_germ(c), change, 4).equations == make_q(params).equations


@settings(max_examples=20, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 2), max_value=3, max_denominator=2),
    st.sampled_from([G(1), G(-1), G(0, 1), G(0, -8), G(27)]),
    small,
    st.tuples(small, small),
)
def test_reduce_general_germ_property(a, alpha, b, beta):
    c = GeneralGermCoeffs(a=a, alpha=alpha, b=b, beta=G(*beta), d=1)
    params, change = reduce_general_germ(c)
    assert apply_change(general_germ(c), change, 4).equations == make_q(params).equations


def test_reduce_rejects():
    with pytest.raises(InvalidParams):
        reduce_general_germ(GeneralGermCoeffs(a=1, alpha=G(1)))
    with pytest.raises(UnsupportedAlgebraic):
        reduce_general_germ(GeneralGermCoeffs(a=1, alpha=G(2), b=1))


@pytest.mark.parametrize("params", [(3, 2, 0), (1, 0, 0), (1, 2, 3), (-1, 1, -2)])
@pytest.mark.parametrize("z0", [G(1), G(0, 1), G(1, -2)])
def test_recenter_residual_formula(params, z0):
    _, _, k = recenter(make_q(params), z0)
    assert k == residual_cubic_coefficient(params, z0)


def test_recenter_q320_real_axis():
    # along the real axis of the tube model the residual is real
    for x in (1, 2, Fraction(-1, 3)):
        assert residual_cubic_coefficient((3, 2, 0), x).is_real


def test_recenter_origin_identity():
    s = make_q((1, 2, 3))
    t, ch, k = recenter(s, 0)
    assert t is s and ch.is_identity() and not k


def test_recenter_rejects_other_types():
    with pytest.raises(InvalidSurface):
        recenter(make_named("E"), 1)


@settings(max_examples=30, deadline=None)
@given(triples, st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool))
def test_model_equivalence_proportional(p, k):
    q = tuple(k * x for x in p)
    m = model_equivalence(p, q)
    assert m is not None and m.verified and m.beta4 == k


@settings(max_examples=30, deadline=None)
@given(triples, triples)
def test_model_equivalence_relation(p, q):
    pq = model_equivalence(p, q)
    qp = model_equivalence(q, p)
    assert (pq is None) == (qp is None)
    assert model_equivalence(p, p) is not None
    if pq is not None:
        assert pq.beta4 * qp.beta4 == 1


def test_model_equivalence_examples():
    assert model_equivalence((1, 0, 0), (2, 0, 0)).beta4 == 2
    assert model_equivalence((3, 2, 0), (3, 2, 1)) is None
    assert model_equivalence((0, 1, 0), (0, 0, 1)) is None


@pytest.mark.parametrize("name", sorted(NAMED))
def test_file_round_trip(name):
    s = make_named(name)
    t = parse_surface(serialize_surface(s))
    assert t == s


def test_parse_errors():
    with pytest.raises(InvalidSurface):
        parse_surface("")
    with pytest.raises(InvalidSurface):
        parse_surface("Im w2 = z1*zb1\nnonsense")
    with pytest.raises(InvalidSurface):
        parse_surface("Im w2 = I*z1*zb1")


def test_parse_infers_weights():
    s = parse_surface("Im w2 = z1*zb1\nIm w3 = z1^2*zb1 + z1*zb1^2\n")
    assert s.z_weights == (1,) and s.w_weights == (2, 3)
