"""Exact rational linear algebra on top of the ``rref`` kernel."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Sequence

from .kernels import rref

__all__ = ["rank", "nullspace", "solve", "SparseEchelon"]


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{x : A x = 0}`` with one free variable set to 1 per vector."""
    red, piv = rref([list(r) for r in rows], ncols) if rows else ([], [])
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """One solution of ``A x = b`` (free variables zero), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1) if aug else ([], [])
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, piv):
        x[p] = row[ncols]
    return x


class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rational vectors.

    Vectors are dicts from hashable column keys to Fractions; ``add``
    reports whether the vector was independent of those already added.
    """

    def __init__(self):
        self._rows: Dict[Hashable, Dict[Hashable, Fraction]] = {}
        self._order: List[Hashable] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, vec: Dict[Hashable, Fraction]) -> Dict[Hashable, Fraction]:
        v = {k: Fraction(x) for k, x in vec.items() if x}
        for piv in self._order:
            c = v.get(piv)
            if not c:
                continue
            for k, x in self._rows[piv].items():
                nv = v.get(k, 0) - c * x
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=repr)
        c = v[piv]
        v = {k: x / c for k, x in v.items()}
        # keep earlier rows reduced against the new pivot
        for p in self._order:
            row = self._rows[p]
            f = row.get(piv)
            if f:
                for k, x in v.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self._rows[piv] = v
        self._order.append(piv)
        return True
