import pytest

from crhom.autalg import (
    CapExceeded,
    aut_basis,
    bracket_closure,
    field_values,
    holo_bracket,
    tangency_recheck,
)
from crhom.polyring import GaussianRational as G, PolyCC, VarId
from crhom.surface import make_named, make_q


@pytest.fixture(scope="module")
def q320():
    s = make_q((3, 2, 0))
    return s, aut_basis(s, 4)


def test_q320_dims(q320):
    _, b = q320
    assert b.dims == {-4: 1, -3: 1, -2: 1, -1: 2, 0: 1, 1: 0, 2: 0, 3: 0, 4: 0}
    assert b.total_dim == 6
    assert not b.degenerate


def test_q320_recheck_and_closure(q320):
    s, b = q320
    assert all(tangency_recheck(s, X) for X in b.fields())
    assert bracket_closure(b, s) == []


@pytest.mark.parametrize("params", [(1, 0, 0), (3, 2, 1), (1, 1, 1)])
def test_other_q_not_larger(params):
    b = aut_basis(make_q(params), 4)
    assert b.total_dim <= 6


def test_hyperquadric():
    b = aut_basis(make_named("HYPERQUADRIC"), 2)
    assert b.total_dim == 8
    assert not b.degenerate


def test_f_degenerate():
    s = make_named("F")
    b = aut_basis(s, 2)
    assert b.degenerate
    assert any("degenerate" in n for n in b.notes)
    assert all(tangency_recheck(s, X) for X in b.fields())


def test_cap():
    with pytest.raises(CapExceeded):
        aut_basis(make_q((1, 0, 0)), 7)


def test_recheck_rejects_non_tangent():
    s = make_q((3, 2, 0))
    z = PolyCC.var(VarId("Z", 1))
    X = (z * G(0, 1), PolyCC(), PolyCC(), PolyCC())
    assert not tangency_recheck(s, X)


def test_bracket_antisymmetric(q320):
    s, b = q320
    fs = b.fields()
    for X in fs:
        for Y in fs:
            B1 = holo_bracket(s, X, Y)
            B2 = holo_bracket(s, Y, X)
            assert all(not (p + q) for p, q in zip(B1, B2))


def test_field_values_and_json(q320):
    s, b = q320
    vals = field_values(s, b.spaces[-2].fields[0], [G(1)], {2: G(0), 3: G(0), 4: G(0)})
    assert len(vals) == 8
    js = b.to_json()
    assert js["total_dim"] == 6 and js["per_weight"]["-1"] == 2
    assert "per_weight" not in b.to_json(per_weight=False)
