"""Real polynomial vector fields on a model surface.

The intrinsic chart of ``M = {Im w_j = Phi_j}`` is ``(z_a, u_j)``, i.e.
``(x_a, y_a, u_j)``.  A real field is stored as a complex coefficient
``a_a`` of ``d/dz_a`` (the ``d/dzbar_a`` coefficient is its conjugate)
plus a real coefficient ``c_j`` of ``d/du_j``; the x- and y-components
are ``Re a_a`` and ``Im a_a``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .polyring import GaussianRational, I, PolyCC, VarId
from .surface import ModelSurface

__all__ = [
    "PolyVectorField",
    "NonPolynomialInverse",
    "cr_fields",
    "cr_coefficients",
    "bracket",
    "evaluate",
    "check_cr_pair",
]


class NonPolynomialInverse(ArithmeticError):
    """``I - i dPhi/du`` has no polynomial inverse within the truncation."""


class PolyVectorField:
    __slots__ = ("a", "c", "u_indices")

    def __init__(self, a: Sequence[PolyCC], c: Sequence[PolyCC], u_indices: Sequence[int]):
        self.a = tuple(a)
        self.c = tuple(c)
        self.u_indices = tuple(u_indices)

    @classmethod
    def zero(cls, n: int, u_indices: Sequence[int]):
        return cls([PolyCC()] * n, [PolyCC()] * len(u_indices), u_indices)

    @property
    def n(self) -> int:
        return len(self.a)

    def components(self) -> Dict[str, PolyCC]:
        """Real coefficient per intrinsic coordinate name."""
        out = {}
        for k, a in enumerate(self.a, 1):
            out[f"x{k}"] = a.real_part()
            out[f"y{k}"] = a.imag_part()
        for j, c in zip(self.u_indices, self.c):
            out[f"u{j}"] = c
        return out

    def apply(self, f: PolyCC) -> PolyCC:
        """Derivative of the function ``f(z, zbar, u)`` along the field."""
        out = PolyCC()
        for k, a in enumerate(self.a, 1):
            if a:
                out = out + a * f.diff(VarId("Z", k)) + a.conjugate() * f.diff(VarId("Zbar", k))
        for j, c in zip(self.u_indices, self.c):
            if c:
                out = out + c * f.diff(VarId("U", j))
        return out

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.c)

    def __add__(self, other: "PolyVectorField"):
        return PolyVectorField(
            [x + y for x, y in zip(self.a, other.a)], [x + y for x, y in zip(self.c, other.c)], self.u_indices
        )

    def __sub__(self, other: "PolyVectorField"):
        return PolyVectorField(
            [x - y for x, y in zip(self.a, other.a)], [x - y for x, y in zip(self.c, other.c)], self.u_indices
        )

    def scale(self, r) -> "PolyVectorField":
        r = Fraction(r)
        return PolyVectorField([x * r for x in self.a], [x * r for x in self.c], self.u_indices)

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.a == other.a and self.c == other.c and self.u_indices == other.u_indices

    def __hash__(self):
        return hash((self.a, self.c, self.u_indices))

    def coefficient_vector(self) -> Dict[tuple, Fraction]:
        """Real coordinates of the field as an element of a Q-vector space."""
        vec = {}
        for k, a in enumerate(self.a):
            for m, c in a.terms.items():
                if c.re:
                    vec[("a", k, m, 0)] = c.re
                if c.im:
                    vec[("a", k, m, 1)] = c.im
        for k, p in enumerate(self.c):
            for m, c in p.terms.items():
                # c is real as a function, so its coefficients pair up under
                # conjugation; both parts are kept to stay injective
                if c.re:
                    vec[("c", k, m, 0)] = c.re
                if c.im:
                    vec[("c", k, m, 1)] = c.im
        return vec

    def evaluate(self, z: Sequence, u: Mapping[int, Fraction] | None = None) -> List[Fraction]:
        return evaluate(self, z, u)

    def __repr__(self):
        parts = []
        for k, (name, p) in enumerate(self.components().items()):
            if p:
                parts.append(f"({p})*d/d{name}")
        return "PolyVectorField(" + (" + ".join(parts) or "0") + ")"


def _point_values(n: int, u_indices: Sequence[int], z: Sequence, u: Mapping[int, Fraction] | None):
    vals = {}
    for k in range(n):
        zk = GaussianRational.coerce(z[k]) if k < len(z) else GaussianRational(0)
        vals[VarId("Z", k + 1)] = zk
        vals[VarId("Zbar", k + 1)] = zk.conjugate()
    for j in u_indices:
        vals[VarId("U", j)] = GaussianRational.coerce(Fraction((u or {}).get(j, 0)))
    return vals


def evaluate(X: PolyVectorField, z: Sequence, u: Mapping[int, Fraction] | None = None) -> List[Fraction]:
    """Exact value ``(x_1, y_1, ..., x_n, y_n, u_j...)`` of the field at a point."""
    vals = _point_values(X.n, X.u_indices, z, u)
    out: List[Fraction] = []
    for a in X.a:
        v = a.evaluate(vals)
        out.extend([v.re, v.im])
    for c in X.c:
        v = c.evaluate(vals)
        if v.im:
            raise ValueError("u-coefficient of a real field took a non-real value")
        out.append(v.re)
    return out


def bracket(X: PolyVectorField, Y: PolyVectorField) -> PolyVectorField:
    """Lie bracket, coefficientwise ``X(Y^i) - Y(X^i)``."""
    if X.u_indices != Y.u_indices or X.n != Y.n:
        raise ValueError("fields live on different charts")
    a = [X.apply(ya) - Y.apply(xa) for xa, ya in zip(X.a, Y.a)]
    c = [X.apply(yc) - Y.apply(xc) for xc, yc in zip(X.c, Y.c)]
    return PolyVectorField(a, c, X.u_indices)


def _mat_vec(J, vec):
    out = []
    for row in J:
        acc = PolyCC()
        for jk, vk in zip(row, vec):
            if jk and vk:
                acc = acc + jk * vk
        out.append(acc)
    return out


def cr_coefficients(s: ModelSurface, alpha: int, truncate_weight: int | None = None):
    """Solve ``(I - iJ) A = 2i dPhi/dz_alpha`` with ``J = dPhi/du``.

    Returns ``(A, truncated)``.  The Neumann series is summed exactly when
    it terminates within ``codim`` steps (nilpotent J); otherwise it is
    summed in the ring truncated above ``truncate_weight`` (default twice
    the largest equation weight), and NonPolynomialInverse is raised if it
    still does not terminate.
    """
    idx = s.w_indices
    phis = s.phis
    J = [[phi.diff(VarId("U", k)) * I for k in idx] for phi in phis]
    rhs = [phi.diff(VarId("Z", alpha)) * GaussianRational(0, 2) for phi in phis]
    k = len(idx)
    total = list(rhs)
    term = list(rhs)
    for _ in range(k):
        term = _mat_vec(J, term)
        if not any(term):
            return total, False
        total = [t + x for t, x in zip(total, term)]
    g = s.grading()
    T = truncate_weight if truncate_weight is not None else 2 * max(s.w_weights)
    total = [t.truncate(T, g) for t in total]
    term = [t.truncate(T, g) for t in term]
    for _ in range(T + 1):
        term = [t.truncate(T, g) for t in _mat_vec(J, term)]
        if not any(term):
            return total, True
        total = [t + x for t, x in zip(total, term)]
    raise NonPolynomialInverse(f"Neumann series did not terminate below weight {T}")


def cr_fields(s: ModelSurface) -> List[PolyVectorField]:
    """Real and imaginary parts ``X_a, Y_a`` of the CR operators ``L_a``.

    In the intrinsic chart ``L_a = d/dz_a + sum_j (A_j/2) d/du_j`` and
    ``X_a = 2 Re L_a``, ``Y_a = -2 Im L_a``.
    """
    n = s.cr_dim
    idx = s.w_indices
    out = []
    for alpha in range(1, n + 1):
        A, _ = cr_coefficients(s, alpha)
        unit = [PolyCC.const(1) if k == alpha else PolyCC() for k in range(1, n + 1)]
        iunit = [PolyCC.const(I) if k == alpha else PolyCC() for k in range(1, n + 1)]
        out.append(PolyVectorField(unit, [x.real_part() for x in A], idx))
        out.append(PolyVectorField(iunit, [-x.imag_part() for x in A], idx))
    return out


def check_cr_pair(s: ModelSurface, X: PolyVectorField, Y: PolyVectorField) -> bool:
    """``L = (X - iY)/2`` annihilates every ``conj(w_j) = u_j - i Phi_j`` on M."""
    for j, phi in s.equations:
        wbar = PolyCC.var(VarId("U", j)) - phi * I
        val = (X.apply(wbar) - Y.apply(wbar) * I) * Fraction(1, 2)
        if val:
            return False
        zbar_ok = all(
            not ((xa.conjugate() - ya.conjugate() * I))
            for xa, ya in zip(X.a, Y.a)
        )
        if not zbar_ok:
            return False
    return True
