from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from crhom.linalg import SparseEchelon, nullspace, rank, solve

fr = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(fr) for _ in range(c)] for _ in range(r)], c


def test_rank_small():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([]) == 0


def test_solve_inconsistent():
    assert solve([[1, 1], [1, 1]], [1, 2], 2) is None
    assert solve([[2, 0], [0, 4]], [1, 1], 2) == [Fraction(1, 2), Fraction(1, 4)]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(mc):
    m, c = mc
    ns = nullspace(m, c)
    assert rank(m, c) + len(ns) == c
    for v in ns:
        for row in m:
            assert sum(a * b for a, b in zip(row, v)) == 0


@settings(max_examples=40, deadline=None)
@given(matrices(), st.lists(fr, min_size=5, max_size=5))
def test_solve_recovers(mc, x):
    m, c = mc
    x = x[:c]
    b = [sum(a * t for a, t in zip(row, x)) for row in m]
    y = solve(m, b, c)
    assert y is not None
    assert [sum(a * t for a, t in zip(row, y)) for row in m] == b


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_sparse_echelon_matches_rank(mc):
    m, c = mc
    e = SparseEchelon()
    added = sum(e.add({k: v for k, v in enumerate(row)}) for row in m)
    assert added == len(e) == rank(m, c)
    for row in m:
        assert e.contains(dict(enumerate(row)))
