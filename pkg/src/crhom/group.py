"""The six-parameter automorphism group of ``Q_{3,2,0}`` and its orbits.

Symbolic work uses these variables besides ``z = z1`` and ``w2..w4``:
``lambda = u11``, ``p = z2`` (so ``conj p = zb2``), ``q_j = u1j`` for
j = 2, 3, 4, and ``u15`` for the undefined symbol printed in the
published third line of the action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import analytic as an
from .linalg import nullspace, rank, solve
from .polyring import GaussianRational, I, PolyCC, VarId, iter_monomials, parse_poly
from .surface import _exact_root, make_q

__all__ = [
    "GroupElement",
    "SignedRoot",
    "OrbitDescriptor",
    "ActionReport",
    "IdentityFailure",
    "NoSolution",
    "action_lines",
    "apply",
    "apply_symbolic",
    "compose",
    "inverse",
    "verify_action",
    "invariants_PQR",
    "invariant_polys",
    "verify_relative_invariance",
    "generator_matrix",
    "derived_generators",
    "compare_generator_matrix",
    "orbit_descriptor",
    "orbit_graph",
    "probe_point",
    "to_real_coords",
]

G = GaussianRational


class IdentityFailure(AssertionError):
    def __init__(self, what: str, residual: PolyCC):
        super().__init__(f"{what}: nonzero residual with {len(residual)} terms")
        self.residual = residual


class NoSolution(ArithmeticError):
    pass


LAM = VarId("U", 11)
P_ = VarId("Z", 2)
PB = VarId("Zbar", 2)
Q_ = {2: VarId("U", 12), 3: VarId("U", 13), 4: VarId("U", 14)}
A_SYM = VarId("U", 15)
Z1 = VarId("Z", 1)
ZB1 = VarId("Zbar", 1)


def _W(j):
    return VarId("W", j)


def _Wb(j):
    return VarId("Wbar", j)


# Published lines with the two typographic slips resolved: the undefined
# symbol in the third line read as z, and the Re in the fourth line
# covering only p*conj(p)^2.
_FINAL_TEXT = {
    2: "u11^2*w2 + 2*I*u11*z1*zb2 + I*z2*zb2 + u12",
    3: "u11^3*w3 + 2*u11^2*w2*(z2 + zb2) + 2*I*u11^2*z1^2*zb2"
    " + 2*I*u11*z1*(zb2^2 + 2*z2*zb2) + 2*I*z2^2*zb2 + u13",
    4: "u11^4*w4 + 6*u11^3*w3*(z2 + zb2) + 12*u11^2*w2*Re(z2^2 + z2*zb2)"
    " + 4*I*u11^3*z1^3*zb2 + 6*I*u11^2*z1^2*(zb2^2 + 2*z2*zb2)"
    " + 4*I*u11*z1*(6*Re(z2*zb2^2) + zb2^3) + 3*I*z2^2*zb2^2 + 4*I*Re(z2^3*zb2) + u14",
}

# The same lines read literally.
_PRINTED_TEXT = {
    2: _FINAL_TEXT[2],
    3: "u11^3*w3 + 2*u11^2*w2*(z2 + zb2) + 2*I*u11^2*z1^2*zb2"
    " + 2*I*u11*u15*(zb2^2 + 2*z2*zb2) + 2*I*z2^2*zb2 + u13",
    4: "u11^4*w4 + 6*u11^3*w3*(z2 + zb2) + 12*u11^2*w2*Re(z2^2 + z2*zb2)"
    " + 4*I*u11^3*z1^3*zb2 + 6*I*u11^2*z1^2*(zb2^2 + 2*z2*zb2)"
    " + 4*I*u11*z1*(6*Re(z2*zb2^2 + zb2^3)) + 3*I*z2^2*zb2^2 + 4*I*Re(z2^3*zb2) + u14",
}


@lru_cache(maxsize=None)
def action_lines(variant: str = "final") -> Dict[int, PolyCC]:
    """``{1: z', 2: w2', 3: w3', 4: w4'}`` as polynomials."""
    if variant == "final":
        text = _FINAL_TEXT
    elif variant == "printed":
        text = _PRINTED_TEXT
    else:
        raise ValueError(variant)
    out = {1: parse_poly("u11*z1 + z2")}
    for j, t in text.items():
        out[j] = parse_poly(t)
    return out


# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class GroupElement:
    lam: Fraction
    p: GaussianRational = G(0)
    q2: Fraction = Fraction(0)
    q3: Fraction = Fraction(0)
    q4: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if not self.lam:
            raise ValueError("lambda must be nonzero")
        object.__setattr__(self, "p", G.coerce(self.p))
        for n in ("q2", "q3", "q4"):
            object.__setattr__(self, n, Fraction(getattr(self, n)))

    @staticmethod
    def identity() -> "GroupElement":
        return GroupElement(1)

    @property
    def in_identity_component(self) -> bool:
        return self.lam > 0

    def bindings(self) -> Dict[VarId, GaussianRational]:
        return {
            LAM: G(self.lam),
            P_: self.p,
            PB: self.p.conjugate(),
            Q_[2]: G(self.q2),
            Q_[3]: G(self.q3),
            Q_[4]: G(self.q4),
        }

    def q(self, j):
        return {2: self.q2, 3: self.q3, 4: self.q4}[j]


def _specialize(g: GroupElement, variant="final") -> Dict[int, PolyCC]:
    b = {k: PolyCC.const(v) for k, v in g.bindings().items()}
    return {j: line.substitute(b) for j, line in action_lines(variant).items()}


def apply(g: GroupElement, pt: Sequence) -> Tuple[GaussianRational, ...]:
    """Image of ``(z, w2, w3, w4)`` under ``g`` (exact)."""
    z, w2, w3, w4 = (G.coerce(x) for x in pt)
    vals = g.bindings()
    vals.update({Z1: z, _W(2): w2, _W(3): w3, _W(4): w4})
    lines = action_lines("final")
    return tuple(lines[j].evaluate(vals) for j in (1, 2, 3, 4))


def apply_symbolic(g: GroupElement, pt: Dict[int, PolyCC] | None = None) -> Dict[int, PolyCC]:
    """Image of a symbolic point given as ``{1: z, 2: w2, ...}`` polynomials."""
    lines = _specialize(g)
    if pt is None:
        return lines
    bind = {Z1: pt[1], _W(2): pt[2], _W(3): pt[3], _W(4): pt[4]}
    return {j: lines[j].substitute(bind) for j in lines}


def _pure_constant(lam: Fraction, p: GaussianRational) -> Tuple[GaussianRational, ...]:
    return apply(GroupElement(lam, p), (0, 0, 0, 0))


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """``compose(g, h)`` acts as ``g`` after ``h``."""
    lam = g.lam * h.lam
    p = h.p * g.lam + g.p
    img = apply(g, apply(h, (0, 0, 0, 0)))
    base = _pure_constant(lam, p)
    qs = []
    for j in (1, 2, 3):
        d = img[j] - base[j]
        if d.im:
            raise ArithmeticError("composite is not of the parametrised form")
        qs.append(d.re)
    return GroupElement(lam, p, *qs)


def inverse(g: GroupElement) -> GroupElement:
    lam = 1 / g.lam
    p = -g.p / g.lam
    q = {2: Fraction(0), 3: Fraction(0), 4: Fraction(0)}
    for idx, j in enumerate((2, 3, 4), 1):
        h = GroupElement(lam, p, q[2], q[3], q[4])
        r = apply(g, apply(h, (0, 0, 0, 0)))[idx]
        if r.im:
            raise ArithmeticError("inverse is not of the parametrised form")
        q[j] -= r.re / g.lam ** j
    h = GroupElement(lam, p, q[2], q[3], q[4])
    if apply(g, apply(h, (0, 0, 0, 0))) != (G(0),) * 4:
        raise ArithmeticError("inverse check failed")
    return h


# ---------------------------------------------------------------------------
# surface preservation and re-derivation


def _surface():
    return make_q((3, 2, 0))


def _onm():
    return _surface().on_surface_bindings()


def _im_on_surface(line: PolyCC) -> PolyCC:
    return line.imag_part().substitute(_onm())


def _phi_of_image(j: int) -> PolyCC:
    lam, p = PolyCC.var(LAM), PolyCC.var(P_)
    zimg = lam * PolyCC.var(Z1) + p
    return _surface().phi(j).substitute({Z1: zimg, ZB1: zimg.conjugate()})


def line_residual(j: int, line: PolyCC) -> PolyCC:
    """``Im w_j' - Phi_j(z')`` on the surface; zero iff the line is tangent."""
    return _im_on_surface(line) - _phi_of_image(j)


def _weight(code_list):
    w = 0
    for c in code_list:
        v = VarId.from_code(c)
        w += 1 if v.kind == "Z" else v.index
    return w


def derive_line(j: int):
    """Undetermined-coefficient solve for line ``j``.

    Ansatz: ``lambda^j w_j + sum lambda^k m c_{m,a,b} p^a conj(p)^b + q_j``
    over holomorphic monomials m of weight k < j in z, w_2..w_{j-1}, with
    ``a + b = j - k``.  The real part of the pure-p term is fixed to zero
    (it is absorbed by q_j).  Returns ``(line, nullity)``.
    """
    gens = [Z1.code] + [_W(k).code for k in range(2, j)]
    monos = []
    for deg in range(0, j):
        for m in iter_monomials(gens, deg):
            if _weight(m) < j:
                monos.append(m)
    monos = sorted(set(monos), key=lambda m: (_weight(m), m))
    lam = PolyCC.var(LAM)
    basis: List[PolyCC] = []
    for m in monos:
        k = _weight(m)
        mono = PolyCC({m: G(1)}) * lam ** k
        e = j - k
        for a in range(e + 1):
            b = e - a
            pp = PolyCC.var(P_) ** a * PolyCC.var(PB) ** b
            if k == 0:
                # pure-p: c_ab p^a pb^b - conj(c_ab) p^b pb^a
                if a > b:
                    continue
                if a == b:
                    basis.append(pp * I)
                else:
                    mirror = PolyCC.var(P_) ** b * PolyCC.var(PB) ** a
                    basis.append(pp - mirror)
                    basis.append((pp + mirror) * I)
            else:
                basis.append(mono * pp)
                basis.append(mono * pp * I)
    fixed = lam ** j * PolyCC.var(_W(j))
    r0 = line_residual(j, fixed)
    cols = [_im_on_surface(b) for b in basis]
    keys = sorted(set(r0.terms).union(*[c.terms for c in cols]))
    rows, rhs = [], []
    for key in keys:
        for part in ("re", "im"):
            rows.append([getattr(c.terms.get(key, G(0)), part) for c in cols])
            rhs.append(-getattr(r0.terms.get(key, G(0)), part))
    sol = solve(rows, rhs, len(basis))
    if sol is None:
        raise NoSolution(f"no tangent line {j} within the ansatz")
    nullity = len(nullspace(rows, len(basis)))
    line = fixed + PolyCC.var(Q_[j])
    for t, b in zip(sol, basis):
        if t:
            line = line + b * t
    return line, nullity


@dataclass
class ActionReport:
    printed_residual_terms: Dict[int, int]
    derived_nullity: Dict[int, int]
    final_residual_terms: Dict[int, int]
    derived_matches_final: Dict[int, bool]
    corrections: List[str]
    derived_lines: Dict[int, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(v == 0 for v in self.final_residual_terms.values())
            and all(self.derived_matches_final.values())
            and all(v == 0 for v in self.derived_nullity.values())
        )

    def to_json(self):
        return {
            "ok": self.ok,
            "printed_residual_terms": {str(k): v for k, v in self.printed_residual_terms.items()},
            "final_residual_terms": {str(k): v for k, v in self.final_residual_terms.items()},
            "derived_nullity": {str(k): v for k, v in self.derived_nullity.items()},
            "derived_matches_final": {str(k): v for k, v in self.derived_matches_final.items()},
            "corrections": list(self.corrections),
            "derived_lines": {str(k): v for k, v in self.derived_lines.items()},
        }


def _pure_p_real(poly: PolyCC) -> bool:
    return poly.is_real() and all(v in (P_, PB) for v in poly.variables())


def verify_action() -> ActionReport:
    """Check the printed action, re-derive it, and check the shipped lines."""
    printed = action_lines("printed")
    final = action_lines("final")
    pres, fres, null, match, derived = {}, {}, {}, {}, {}
    # z' = lambda z + p preserves nothing by itself; lines 2..4 carry the test
    for j in (2, 3, 4):
        pres[j] = len(line_residual(j, printed[j]))
        fres[j] = len(line_residual(j, final[j]))
        line, nullity = derive_line(j)
        null[j] = nullity
        derived[j] = line.to_text()
        match[j] = _pure_p_real(line - final[j])
    corrections = []
    if pres[3]:
        corrections.append("w3: undefined symbol in the term 2i*lambda*?*(conj(p)^2 + 2|p|^2) must be z")
    if pres[4]:
        corrections.append("w4: the Re in 4i*lambda*z*(6 Re(p conj(p)^2) + conj(p)^3) covers only p conj(p)^2")
    return ActionReport(pres, null, fres, match, corrections, derived)


# ---------------------------------------------------------------------------
# invariants

_INV_TEXT = {
    "P": "Im(w2) - z*zb",
    "Q": "Im(w3) - 4*Re(z)*Im(w2) + 2*Re(z^2*zb)",
    "R": "Im(w4) - (3*z^2*zb^2 + 4*Re(z^3*zb)) + 12*Re(z)*(2*Im(w2)*Re(z) - Im(w3))",
}
_INV_WEIGHT = {"P": 2, "Q": 3, "R": 4}


@lru_cache(maxsize=None)
def invariant_polys() -> Dict[str, PolyCC]:
    return {k: parse_poly(t) for k, t in _INV_TEXT.items()}


def _pt_values(pt) -> Dict[VarId, GaussianRational]:
    z, w2, w3, w4 = (G.coerce(x) for x in pt)
    vals = {Z1: z, ZB1: z.conjugate()}
    for j, w in zip((2, 3, 4), (w2, w3, w4)):
        vals[_W(j)] = w
        vals[_Wb(j)] = w.conjugate()
    return vals


def invariants_PQR(pt) -> Tuple[Fraction, Fraction, Fraction]:
    vals = _pt_values(pt)
    out = []
    for k in ("P", "Q", "R"):
        v = invariant_polys()[k].evaluate(vals)
        if v.im:
            raise ArithmeticError("invariant took a non-real value")
        out.append(v.re)
    return tuple(out)


def _pullback(poly: PolyCC, zimg: PolyCC, wimg: Dict[int, PolyCC]) -> PolyCC:
    b = {Z1: zimg, ZB1: zimg.conjugate()}
    for j, w in wimg.items():
        b[_W(j)] = w
        b[_Wb(j)] = w.conjugate()
    return poly.substitute(b)


def verify_relative_invariance(variant: str = "final") -> Dict[str, int]:
    """Residual term counts of ``F(g.zeta) - lambda^k F(zeta)`` for F = P, Q, R,
    plus ``P, Q, R`` under the involution ``z -> -z, w3 -> -w3`` and on the surface.
    Raises IdentityFailure on the first nonzero residual."""
    lines = action_lines(variant)
    lam = PolyCC.var(LAM)
    out = {}
    for name, poly in invariant_polys().items():
        res = _pullback(poly, lines[1], {j: lines[j] for j in (2, 3, 4)}) - poly * lam ** _INV_WEIGHT[name]
        out[f"{name}(g.zeta) - lambda^{_INV_WEIGHT[name]} {name}"] = len(res)
        if res:
            raise IdentityFailure(f"relative invariance of {name}", res)
    z = PolyCC.var(Z1)
    ws = {2: PolyCC.var(_W(2)), 3: -PolyCC.var(_W(3)), 4: PolyCC.var(_W(4))}
    signs = {"P": 1, "Q": -1, "R": 1}
    for name, poly in invariant_polys().items():
        res = _pullback(poly, -z, ws) - poly * signs[name]
        out[f"map (z,w3) -> (-z,-w3): {name}"] = len(res)
        if res:
            raise IdentityFailure(f"involution on {name}", res)
    onm = _surface().on_surface_bindings()
    for name, poly in invariant_polys().items():
        res = poly.substitute(onm)
        out[f"{name} on Q_(3,2,0)"] = len(res)
        if res:
            raise IdentityFailure(f"{name} on the surface", res)
    return out


# ---------------------------------------------------------------------------
# Lie algebra generators


def to_real_coords(pt) -> Tuple[Fraction, ...]:
    out = []
    for x in pt:
        x = G.coerce(x)
        out.extend([x.re, x.im])
    return tuple(out)


def generator_matrix(pt: Sequence, variant: str = "corrected") -> Tuple[List[List[Fraction]], int]:
    """The six generator rows at ``(x, y, u2, v2, u3, v3, u4, v4)`` and their rank.

    ``variant="printed"`` uses the published ``s3 = 4(3 v3 + x^3 - x y^2)``;
    the default uses ``s3 = 4(3 v3 + x^3 - 3 x y^2)``, which is what the
    action differentiates to.
    """
    x, y, u2, v2, u3, v3, u4, v4 = (Fraction(t) for t in pt)
    s1 = 2 * (2 * v2 + x * x - y * y)
    s2 = 4 * (3 * u3 - 3 * x * x * y + y ** 3)
    if variant == "printed":
        s3 = 4 * (3 * v3 + x ** 3 - x * y * y)
    elif variant == "corrected":
        s3 = 4 * (3 * v3 + x ** 3 - 3 * x * y * y)
    else:
        raise ValueError(variant)
    s4 = 4 * x * y
    s5 = 4 * (x ** 3 - 3 * x * y * y)
    s6 = 4 * (3 * x * x * y - y ** 3)
    rows = [
        [x, y, 2 * u2, 2 * v2, 3 * u3, 3 * v3, 4 * u4, 4 * v4],
        [0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [1, 0, -2 * y, 2 * x, 4 * u2 - 4 * x * y, s1, s2, s3],
        [0, 1, 2 * x, 2 * y, 2 * (x * x - y * y), s4, s5, s6],
    ]
    rows = [[Fraction(v) for v in r] for r in rows]
    return rows, rank(rows, 8)


@lru_cache(maxsize=None)
def derived_generators() -> Tuple[Tuple[PolyCC, ...], ...]:
    """Holomorphic generators ``(f, g2, g3, g4)`` obtained by differentiating
    the action at the identity along lambda, q2, q3, q4, Re p, Im p."""
    lines = action_lines("final")
    ident = {LAM: PolyCC.const(1), P_: PolyCC(), PB: PolyCC(), Q_[2]: PolyCC(), Q_[3]: PolyCC(), Q_[4]: PolyCC()}

    def at_id(poly):
        return poly.substitute(ident)

    out = []
    out.append(tuple(at_id(lines[j].diff(LAM)) for j in (1, 2, 3, 4)))
    for k in (2, 3, 4):
        out.append(tuple(at_id(lines[j].diff(Q_[k])) for j in (1, 2, 3, 4)))
    out.append(tuple(at_id(lines[j].diff(P_) + lines[j].diff(PB)) for j in (1, 2, 3, 4)))
    out.append(tuple(at_id((lines[j].diff(P_) - lines[j].diff(PB)) * I) for j in (1, 2, 3, 4)))
    return tuple(out)


def holomorphic_field_values(field: Sequence[PolyCC], pt) -> List[Fraction]:
    """Real 8-vector of ``2 Re(f d/dz + sum g_j d/dw_j)`` at ``pt`` in C^4."""
    vals = _pt_values(pt)
    out = []
    for comp in field:
        v = comp.evaluate(vals)
        out.extend([v.re, v.im])
    return out


def compare_generator_matrix(points: Sequence, variant: str = "corrected") -> List[Tuple[int, int]]:
    """Entries ``(row, col)`` where the matrix differs from the derived generators."""
    bad = set()
    for pt in points:
        rows, _ = generator_matrix(to_real_coords(pt), variant)
        for r, fld in enumerate(derived_generators()):
            vals = holomorphic_field_values(fld, pt)
            for c in range(8):
                if vals[c] != rows[r][c]:
                    bad.add((r, c))
    return sorted(bad)


# ---------------------------------------------------------------------------
# orbit descriptors


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SignedRoot:
    """The real number ``sign * r^(1/k)`` with ``r >= 0`` rational, canonical."""

    sign: int
    k: int
    r: Fraction

    @staticmethod
    def make(sign: int, k: int, r) -> "SignedRoot":
        r = Fraction(r)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        if sign == 0 or r == 0:
            return SignedRoot(0, 1, Fraction(0))
        for d in range(1, k + 1):
            if k % d:
                continue
            t = _exact_root(r, k // d)
            if t is not None:
                return SignedRoot(_sign(sign), d, t)
        raise AssertionError("unreachable")

    @staticmethod
    def rational(x) -> "SignedRoot":
        x = Fraction(x)
        return SignedRoot.make(_sign(x), 1, abs(x))

    @property
    def is_rational(self) -> bool:
        return self.k == 1

    def value(self) -> Fraction:
        if self.k != 1:
            raise ValueError("irrational value")
        return self.sign * self.r

    def power(self, n: int) -> Fraction:
        """Exact ``x^n`` when it is rational (k divides n)."""
        if n % self.k:
            raise ValueError(f"x^{n} is irrational")
        return Fraction(self.sign) ** n * self.r ** (n // self.k)

    def __float__(self):
        return self.sign * float(self.r) ** (1.0 / self.k)

    def __str__(self):
        if self.k == 1:
            return str(self.sign * self.r)
        s = "-" if self.sign < 0 else ""
        return f"{s}({self.r})^(1/{self.k})"


BRANCHES = ("POS", "NEG", "RHO", "TAU", "OPLUS", "OMINUS", "SURFACE_C")


@dataclass(frozen=True)
class OrbitDescriptor:
    branch: str
    params: Tuple[Tuple[str, SignedRoot], ...]
    base_point: Tuple[GaussianRational, ...] = field(default=(), compare=False)
    invariants: Tuple[Fraction, Fraction, Fraction] = field(default=(), compare=False)

    def param(self, name: str) -> SignedRoot:
        return dict(self.params)[name]

    def floats(self) -> Dict[str, float]:
        return {k: float(v) for k, v in self.params}

    def to_json(self):
        return {
            "branch": self.branch,
            "params": {k: {"exact": str(v), "float": float(v)} for k, v in self.params},
            "base_point": [str(x) for x in self.base_point],
            "invariants": {"P": str(self.invariants[0]), "Q": str(self.invariants[1]), "R": str(self.invariants[2])}
            if self.invariants
            else {},
        }

    def label(self) -> str:
        if not self.params:
            return self.branch
        return f"{self.branch}(" + ", ".join(f"{k}={v}" for k, v in self.params) + ")"


def make_descriptor(branch: str, **params) -> OrbitDescriptor:
    """Descriptor from explicit parameter values (rationals or SignedRoots)."""
    ps = []
    for k, v in params.items():
        ps.append((k, v if isinstance(v, SignedRoot) else SignedRoot.rational(v)))
    return OrbitDescriptor(branch.upper(), tuple(ps))


def orbit_descriptor(base) -> OrbitDescriptor:
    P, Q, R = invariants_PQR(base)
    base = tuple(G.coerce(x) for x in base)
    inv = (P, Q, R)
    if P > 0:
        ps = (("mu", SignedRoot.make(_sign(Q), 2, Q * Q / P ** 3)), ("sigma", SignedRoot.rational(R / P ** 2)))
        return OrbitDescriptor("POS", ps, base, inv)
    if P < 0:
        ps = (("nu", SignedRoot.make(_sign(Q), 2, Q * Q / (-P) ** 3)), ("sigma", SignedRoot.rational(R / P ** 2)))
        return OrbitDescriptor("NEG", ps, base, inv)
    if Q > 0:
        return OrbitDescriptor("RHO", (("rho", SignedRoot.make(_sign(R), 3, abs(R) ** 3 / Q ** 4)),), base, inv)
    if Q < 0:
        return OrbitDescriptor("TAU", (("tau", SignedRoot.make(_sign(R), 3, abs(R) ** 3 / Q ** 4)),), base, inv)
    if R > 0:
        return OrbitDescriptor("OPLUS", (), base, inv)
    if R < 0:
        return OrbitDescriptor("OMINUS", (), base, inv)
    return OrbitDescriptor("SURFACE_C", (), base, inv)


def probe_point(branch: str, *params) -> Tuple[GaussianRational, ...]:
    """Base points ``(0, i, i mu, i sigma)``, ``(0, -i, i nu, i sigma)``,
    ``(0, 0, i, i rho)``, ``(0, 0, -i, i tau)`` for rational parameters."""
    b = branch.upper()
    ps = [Fraction(x) for x in params]
    if b == "POS":
        return (G(0), G(0, 1), G(0, ps[0]), G(0, ps[1]))
    if b == "NEG":
        return (G(0), G(0, -1), G(0, ps[0]), G(0, ps[1]))
    if b == "RHO":
        return (G(0), G(0), G(0, 1), G(0, ps[0]))
    if b == "TAU":
        return (G(0), G(0), G(0, -1), G(0, ps[0]))
    raise ValueError(branch)


def orbit_graph(branch: str, *params: float):
    """Graph functions of an orbit over its CR coordinates and the probe origin.

    POS/NEG: coordinates ``(Z1, Z2) = (z, w2)``; the graphs give ``Im w3``
    and ``Im w4``.  RHO/TAU: coordinates ``(z, w3)``; the graphs give
    ``Im w2`` and ``Im w4``.
    """
    b = branch.upper()
    z, zb = an.Z(1), an.Zb(1)
    x = z.re()
    mod2 = z.abs2()
    rez2zb = (z * z * zb).re()
    rez3zb = (z * z * z * zb).re()
    if b in ("POS", "NEG"):
        m, sigma = (float(t) for t in params)
        P = an.Z(2).im() - mod2
        base = P if b == "POS" else -P
        r32 = base.rpow(Fraction(3, 2))
        phi1 = 4 * x * an.Z(2).im() - 2 * rez2zb + m * r32
        phi2 = 3 * mod2 * mod2 + 4 * rez3zb + 24 * x * x * P + 12 * m * x * r32 + sigma * P * P
        origin = (0j, 1j if b == "POS" else -1j)
        return (phi1, phi2), origin
    if b in ("RHO", "TAU"):
        (r,) = (float(t) for t in params)
        Q = an.Z(2).im() - 2 * x * mod2
        base = Q if b == "RHO" else -Q
        phi1 = mod2
        phi2 = 3 * mod2 * mod2 + 4 * rez3zb + 12 * x * Q + r * base.rpow(Fraction(4, 3))
        origin = (0j, 1j if b == "RHO" else -1j)
        return (phi1, phi2), origin
    raise ValueError(branch)
