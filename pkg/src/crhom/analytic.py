"""Floating-point evaluation of real-analytic expressions with fractional
powers, and finite-difference extraction of Hermitian (1,1)-jets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .polyring import PolyCC, VarId

__all__ = [
    "AnalyticExpr",
    "DomainError",
    "Z",
    "Zb",
    "const",
    "from_poly",
    "eval_numeric",
    "shift",
    "numeric_hermitian_jet",
    "NumericJet",
]


class DomainError(ValueError):
    """A fractional power met a non-positive argument."""


class AnalyticExpr:
    """Immutable expression tree; build with the helpers and operators."""

    __slots__ = ("op", "args")

    def __init__(self, op: str, *args):
        self.op = op
        self.args = args

    # construction helpers
    @staticmethod
    def _lift(x) -> "AnalyticExpr":
        if isinstance(x, AnalyticExpr):
            return x
        if isinstance(x, PolyCC):
            return from_poly(x)
        return AnalyticExpr("const", complex(x))

    def __add__(self, o):
        return AnalyticExpr("add", self, AnalyticExpr._lift(o))

    __radd__ = __add__

    def __sub__(self, o):
        return AnalyticExpr("add", self, AnalyticExpr("neg", AnalyticExpr._lift(o)))

    def __rsub__(self, o):
        return AnalyticExpr._lift(o) - self

    def __neg__(self):
        return AnalyticExpr("neg", self)

    def __mul__(self, o):
        return AnalyticExpr("mul", self, AnalyticExpr._lift(o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("use rpow for non-integer powers")
        return AnalyticExpr("pow", self, n)

    def rpow(self, e) -> "AnalyticExpr":
        """Real power ``t^e`` of a real, positive subexpression."""
        return AnalyticExpr("rpow", self, Fraction(e))

    def re(self):
        return AnalyticExpr("re", self)

    def im(self):
        return AnalyticExpr("im", self)

    def abs2(self):
        return AnalyticExpr("abs2", self)

    def __repr__(self):
        if self.op == "const":
            return repr(self.args[0])
        if self.op == "var":
            return f"{self.args[0]}{self.args[1]}"
        return f"{self.op}({', '.join(map(repr, self.args))})"


def Z(k: int = 1) -> AnalyticExpr:
    return AnalyticExpr("var", "Z", k)


def Zb(k: int = 1) -> AnalyticExpr:
    return AnalyticExpr("var", "Zb", k)


def const(x) -> AnalyticExpr:
    return AnalyticExpr("const", complex(x))


def from_poly(p: PolyCC) -> AnalyticExpr:
    """Convert a polynomial in z and zbar to an expression tree."""
    total = const(0)
    for m, c in p.sorted_terms():
        term = const(complex(c))
        for code in m:
            v = VarId.from_code(code)
            if v.kind == "Z":
                term = term * Z(v.index)
            elif v.kind == "Zbar":
                term = term * Zb(v.index)
            else:
                raise ValueError(f"{v} is not a complex coordinate")
        total = total + term
    return total


_RE_TOL = 1e-12


def eval_numeric(e: AnalyticExpr, point: Sequence[complex]) -> complex:
    op, args = e.op, e.args
    if op == "const":
        return args[0]
    if op == "var":
        v = complex(point[args[1] - 1])
        return v if args[0] == "Z" else v.conjugate()
    if op == "add":
        return eval_numeric(args[0], point) + eval_numeric(args[1], point)
    if op == "neg":
        return -eval_numeric(args[0], point)
    if op == "mul":
        return eval_numeric(args[0], point) * eval_numeric(args[1], point)
    if op == "pow":
        return eval_numeric(args[0], point) ** args[1]
    if op == "re":
        return complex(eval_numeric(args[0], point).real)
    if op == "im":
        return complex(eval_numeric(args[0], point).imag)
    if op == "abs2":
        v = eval_numeric(args[0], point)
        return complex(v.real * v.real + v.imag * v.imag)
    if op == "rpow":
        v = eval_numeric(args[0], point)
        if abs(v.imag) > _RE_TOL * max(1.0, abs(v.real)):
            raise DomainError(f"fractional power of a non-real value {v}")
        if v.real <= 0:
            raise DomainError(f"fractional power of non-positive value {v.real}")
        return complex(math.pow(v.real, float(args[1])))
    raise ValueError(f"unknown node {op}")


def shift(e: AnalyticExpr, offsets: Sequence[complex]) -> AnalyticExpr:
    """Substitute ``Z_k -> Z_k + offsets[k-1]`` throughout."""
    if e.op == "var":
        k = e.args[1]
        c = complex(offsets[k - 1]) if k - 1 < len(offsets) else 0j
        if not c:
            return e
        return e + const(c if e.args[0] == "Z" else c.conjugate())
    if e.op == "const":
        return e
    new = tuple(shift(a, offsets) if isinstance(a, AnalyticExpr) else a for a in e.args)
    return AnalyticExpr(e.op, *new)


@dataclass(frozen=True)
class NumericJet:
    """Hermitian (1,1)-parts of several graph functions at one point."""

    matrices: Tuple[Tuple[Tuple[complex, complex], Tuple[complex, complex]], ...]
    asymmetry: float
    richardson_delta: float


def _levi_value(f: Callable, base: List[complex], v: Sequence[complex], h: float) -> float:
    """``d^2/dzeta dzetabar f(base + zeta v)`` at 0 by a 5-point Laplacian."""

    def at(zeta: complex) -> float:
        pt = [b + zeta * vk for b, vk in zip(base, v)]
        return f(pt).real

    c = at(0j)
    lap = (at(complex(h, 0)) + at(complex(-h, 0)) + at(complex(0, h)) + at(complex(0, -h)) - 4 * c) / (h * h)
    return lap / 4.0


def _raw_jet(f: Callable, base: List[complex], h: float):
    n = len(base)
    H = [[0j] * n for _ in range(n)]
    units = [[1.0 if i == a else 0.0 for i in range(n)] for a in range(n)]
    for a in range(n):
        for b in range(n):
            if a == b:
                H[a][a] = complex(_levi_value(f, base, units[a], h))
                continue
            # polarisation H(e_a, e_b) = 1/4 sum_k i^k L(e_a + i^k e_b)
            acc = 0j
            for k in range(4):
                ik = 1j ** k
                v = [ua + ik * ub for ua, ub in zip(units[a], units[b])]
                acc += ik * _levi_value(f, base, v, h)
            H[a][b] = acc / 4.0
    return H


def numeric_hermitian_jet(
    graph: Sequence[AnalyticExpr], origin: Sequence[complex], h: float = 1e-4, richardson: bool = True
) -> NumericJet:
    """Mixed derivatives ``d^2 phi_j / dZ_a dZbar_b`` at ``origin``.

    Central differences with step ``h``; with ``richardson`` the values at
    ``h`` and ``h/2`` are combined to cancel the O(h^2) term.  Matrices are
    symmetrised; the largest pre-symmetrisation asymmetry is reported.
    """
    base = [complex(x) for x in origin]
    mats = []
    worst = 0.0
    delta = 0.0
    for phi in graph:
        f = lambda pt, phi=phi: eval_numeric(phi, pt)
        H1 = _raw_jet(f, base, h)
        if richardson:
            H2 = _raw_jet(f, base, h / 2)
            n = len(base)
            H = [[(4 * H2[a][b] - H1[a][b]) / 3 for b in range(n)] for a in range(n)]
            delta = max(delta, max(abs(H1[a][b] - H2[a][b]) for a in range(n) for b in range(n)))
        else:
            H = H1
        n = len(base)
        for a in range(n):
            for b in range(n):
                worst = max(worst, abs(H[a][b] - H[b][a].conjugate()))
        S = tuple(
            tuple((H[a][b] + H[b][a].conjugate()) / 2 for b in range(n)) for a in range(n)
        )
        mats.append(S)
    return NumericJet(tuple(mats), worst, delta)


def raw_jet(graph_fn: Callable, origin: Sequence[complex], h: float):
    """Single central-difference jet without extrapolation (for error studies)."""
    return _raw_jet(graph_fn, [complex(x) for x in origin], h)
