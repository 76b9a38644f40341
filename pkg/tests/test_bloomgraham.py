import pytest

from crhom.bloomgraham import BGType, Inconclusive, PointNotOnSurface, bg_type, format_type, surface_point
from crhom.polyring import GaussianRational as G
from crhom.surface import make_named, make_q, parse_surface


@pytest.mark.parametrize(
    "name, expected",
    [
        ("HYPERQUADRIC", "((2,1))"),
        ("TUBE_C", "((2,1),(3,1),(4,1))"),
        ("VPN_CUBIC", "((2,1),(3,2))"),
        ("E", "((2,1),(3,1))"),
        ("F", "((2,1),(3,1))"),
        ("Q_PLUS", "((2,2))"),
        ("Q_MINUS", "((2,2))"),
        ("Q_ZERO", "((2,2))"),
    ],
)
def test_named_types(name, expected):
    t = bg_type(make_named(name))
    assert t.finite and str(t) == expected


@pytest.mark.parametrize("params", [(1, 0, 0), (3, 2, 1), (0, 1, 0), (-2, 1, 5)])
def test_q_origin_type(params):
    t = bg_type(make_q(params))
    assert t.pairs == ((2, 1), (3, 1), (4, 1))
    assert t.dims == (2, 3, 4, 5)


def test_q_generic_point():
    s = make_q((1, 2, 3))
    t = bg_type(s, surface_point(s, [1], {2: 1}))
    assert t.pairs == ((2, 1), (3, 2))


def test_infinite_type():
    s = parse_surface("Im w2 = z1*zb1\nIm w3 = 2*z1*zb1\n")
    t = bg_type(s)
    assert not t.finite and "infinite" in str(t)


def test_point_not_on_surface():
    with pytest.raises(PointNotOnSurface):
        bg_type(make_q((1, 0, 0)), ([G(1)], {2: G(0), 3: G(0), 4: G(0)}))


def test_cap_validation():
    with pytest.raises(ValueError):
        bg_type(make_q((1, 0, 0)), cap=1)
    with pytest.raises(Inconclusive) as e:
        bg_type(make_q((1, 0, 0)), cap=2)
    assert e.value.dims == (2, 3)


def test_json_and_format():
    t = BGType(((2, 1), (3, 2)), True, (2, 3, 5))
    assert format_type(t.pairs) == "((2,1),(3,2))"
    assert t.to_json() == {"pairs": [[2, 1], [3, 2]], "finite": True, "dims": [2, 3, 5]}
