"""Model surfaces in graph form ``Im w_j = Phi_j(z, zbar, u)``.

Besides the :class:`ModelSurface` container this module knows the named
surfaces used throughout the package, the reduction of a general
weight-4 germ of type ((2,1),(3,1),(4,1)) to ``Q_{a,b,c}``, recentering
of ``Q_{a,b,c}`` at a surface point, the moduli equivalence test and the
polynomial change relating the tube surface to ``Q_{3,2,0}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .polyring import (
    GaussianRational,
    Grading,
    I,
    PolyCC,
    VarId,
    parse_poly,
)

__all__ = [
    "ModelSurface",
    "ModelParams",
    "GeneralGermCoeffs",
    "HolomorphicChange",
    "EquivalenceMap",
    "InvalidParams",
    "InvalidSurface",
    "UnsupportedAlgebraic",
    "make_q",
    "make_named",
    "NAMED",
    "apply_change",
    "general_germ",
    "reduce_general_germ",
    "recenter",
    "residual_cubic_coefficient",
    "model_equivalence",
    "parse_surface",
    "serialize_surface",
    "tube_to_q",
    "q_to_tube",
]


class InvalidParams(ValueError):
    pass


class InvalidSurface(ValueError):
    pass


class UnsupportedAlgebraic(ValueError):
    """A normalising constant is not a Gaussian rational."""


def _z(a=1):
    return PolyCC.var(VarId("Z", a))


def _zb(a=1):
    return PolyCC.var(VarId("Zbar", a))


def _u(j):
    return PolyCC.var(VarId("U", j))


def _w(j):
    return PolyCC.var(VarId("W", j))


# ---------------------------------------------------------------------------
# container


@dataclass(frozen=True)
class ModelSurface:
    """Generic real submanifold of C^{n+k}: ``Im w_j = Phi_j`` for each j.

    ``equations`` holds ``(j, Phi_j)`` pairs in increasing order of j.
    ``z_weights`` are the weights of z_1..z_n and ``w_weights`` those of
    the transverse variables, in equation order.
    """

    cr_dim: int
    equations: Tuple[Tuple[int, PolyCC], ...]
    z_weights: Tuple[int, ...] = ()
    w_weights: Tuple[int, ...] = ()
    label: Optional[str] = None
    z_names: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = self.cr_dim
        if not self.z_weights:
            object.__setattr__(self, "z_weights", (1,) * n)
        if len(self.z_weights) != n:
            raise InvalidSurface("z_weights length must equal cr_dim")
        eqs = tuple(sorted(self.equations, key=lambda e: e[0]))
        object.__setattr__(self, "equations", eqs)
        if not self.w_weights:
            object.__setattr__(self, "w_weights", self._infer_w_weights())
        if len(self.w_weights) != len(eqs):
            raise InvalidSurface("w_weights length must equal codim")

    def _infer_w_weights(self):
        known: Dict[int, int] = {}
        out = []
        zg = {VarId("Z", a + 1): w for a, w in enumerate(self.z_weights)}
        for j, phi in self.equations:
            g = Grading({**zg, **{VarId("U", k): w for k, w in known.items()}})
            best = None
            for m in phi.terms:
                if any(VarId.from_code(c).kind == "U" and (VarId.from_code(c).index not in known) for c in m):
                    continue
                wt = g.mono_weight(m)
                best = wt if best is None else min(best, wt)
            wt = best if best is not None else j
            known[j] = wt
            out.append(wt)
        return tuple(out)

    # shape
    @property
    def codim(self) -> int:
        return len(self.equations)

    @property
    def dim(self) -> int:
        return 2 * self.cr_dim + self.codim

    @property
    def w_indices(self) -> Tuple[int, ...]:
        return tuple(j for j, _ in self.equations)

    def phi(self, j: int) -> PolyCC:
        for k, p in self.equations:
            if k == j:
                return p
        raise KeyError(j)

    @property
    def phis(self) -> List[PolyCC]:
        return [p for _, p in self.equations]

    def grading(self) -> Grading:
        ov = {VarId("Z", a + 1): w for a, w in enumerate(self.z_weights)}
        for j, w in zip(self.w_indices, self.w_weights):
            ov[VarId("U", j)] = w
        return Grading(ov)

    def validate(self) -> None:
        for j, phi in self.equations:
            if not phi.is_real():
                raise InvalidSurface(f"Phi_{j} is not real")
            for m in phi.terms:
                if len(m) < 2:
                    raise InvalidSurface(f"Phi_{j} has a constant or linear term")
            for v in phi.variables():
                if v.kind in ("W", "Wbar"):
                    raise InvalidSurface("defining functions must use u, not w")
                if v.kind in ("Z", "Zbar") and v.index > self.cr_dim:
                    raise InvalidSurface(f"variable {v} exceeds cr_dim")
                if v.kind == "U" and v.index not in self.w_indices:
                    raise InvalidSurface(f"u{v.index} has no equation")

    def on_surface_bindings(self) -> Dict[VarId, PolyCC]:
        """``w_j -> u_j + i Phi_j`` and its conjugate; valid for u-free Phi."""
        b = {}
        for j, phi in self.equations:
            b[VarId("W", j)] = _u(j) + phi * I
            b[VarId("Wbar", j)] = _u(j) - phi * I
        return b

    def contains(self, z: Sequence[GaussianRational], w: Mapping[int, GaussianRational]) -> bool:
        """Exact membership test for an ambient point."""
        vals = {}
        for a, za in enumerate(z):
            za = GaussianRational.coerce(za)
            vals[VarId("Z", a + 1)] = za
            vals[VarId("Zbar", a + 1)] = za.conjugate()
        for j in self.w_indices:
            vals[VarId("U", j)] = GaussianRational(GaussianRational.coerce(w[j]).re)
        for j, phi in self.equations:
            if phi.evaluate(vals) != GaussianRational(GaussianRational.coerce(w[j]).im):
                return False
        return True

    def rename(self, label: str) -> "ModelSurface":
        return ModelSurface(self.cr_dim, self.equations, self.z_weights, self.w_weights, label, self.z_names)


@dataclass(frozen=True)
class ModelParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if isinstance(v, GaussianRational):
                if v.im:
                    raise InvalidParams(f"{name} must be real")
                v = v.re
            object.__setattr__(self, name, Fraction(v))

    def is_valid(self) -> bool:
        return bool(self.a or self.b or self.c)

    def as_tuple(self):
        return (self.a, self.b, self.c)


def _params(p) -> ModelParams:
    if isinstance(p, ModelParams):
        return p
    return ModelParams(*p)


@dataclass(frozen=True)
class GeneralGermCoeffs:
    """Weight-4 coefficients of a general germ of type ((2,1),(3,1),(4,1))."""

    a: Fraction
    alpha: GaussianRational
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)
    beta: GaussianRational = GaussianRational(0)
    gamma: GaussianRational = GaussianRational(0)
    delta: GaussianRational = GaussianRational(0)
    chi: GaussianRational = GaussianRational(0)

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        for name in ("alpha", "beta", "gamma", "delta", "chi"):
            object.__setattr__(self, name, GaussianRational.coerce(getattr(self, name)))

    def validate(self):
        if not self.a or not self.alpha:
            raise InvalidParams("a and alpha must be nonzero")
        if not any([self.b, self.c, self.d, self.beta, self.gamma, self.delta, self.chi]):
            raise InvalidParams("(b, c, d, beta, gamma, delta, chi) must not vanish")


# ---------------------------------------------------------------------------
# constructors


def _re(p: PolyCC) -> PolyCC:
    return p.real_part()


def _im(p: PolyCC) -> PolyCC:
    return p.imag_part()


def _q_phis(a, b, c):
    z, zb = _z(), _zb()
    phi2 = z * zb
    phi3 = _re(z * z * zb) * 2
    z3zb = z ** 3 * zb
    phi4 = (z * zb) ** 2 * a + _re(z3zb) * (2 * b) - _im(z3zb) * (2 * c)
    return phi2, phi3, phi4


def make_q(params) -> ModelSurface:
    """The surface ``Q_{a,b,c}`` of CR type (1,3)."""
    p = _params(params)
    if not p.is_valid():
        raise InvalidParams("(a, b, c) must not be zero")
    phi2, phi3, phi4 = _q_phis(p.a, p.b, p.c)
    label = f"Q_{{{p.a},{p.b},{p.c}}}"
    return ModelSurface(1, ((2, phi2), (3, phi3), (4, phi4)), (1,), (2, 3, 4), label)


def _named():
    z1, z2, zb1, zb2 = _z(1), _z(2), _zb(1), _zb(2)
    out = {}
    q = make_q((3, 2, 0))
    out["TUBE_C"] = q.rename("TUBE_C")
    out["VPN_CUBIC"] = ModelSurface(
        1,
        ((2, z1 * zb1), (3, _re(z1 * z1 * zb1) * 2), (4, _im(z1 * z1 * zb1) * 2)),
        label="VPN_CUBIC",
    )
    out["E"] = ModelSurface(
        2,
        ((1, z1 * zb2 + z2 * zb1), (2, _re(z1 * z1 * zb2 + z1 * z2 * zb1 * 2) * 2)),
        (1, 1),
        (2, 3),
        "E",
    )
    # the second CR coordinate of F is w4, a free complex direction of weight 4
    out["F"] = ModelSurface(
        2,
        ((2, z1 * zb1), (3, _re(z1 * z1 * zb1) * 2)),
        (1, 4),
        (2, 3),
        "F",
        ("z", "w4"),
    )
    herm = z1 * zb2 + z2 * zb1
    out["Q_PLUS"] = ModelSurface(2, ((1, z1 * zb1 + z2 * zb2), (2, herm)), (1, 1), (2, 2), "Q_PLUS")
    out["Q_MINUS"] = ModelSurface(2, ((1, z1 * zb1 - z2 * zb2), (2, herm)), (1, 1), (2, 2), "Q_MINUS")
    out["Q_ZERO"] = ModelSurface(2, ((1, z1 * zb1), (2, herm)), (1, 1), (2, 2), "Q_ZERO")
    out["HYPERQUADRIC"] = ModelSurface(1, ((1, z1 * zb1),), (1,), (2,), "HYPERQUADRIC")
    return out


NAMED = _named()


def make_named(name: str) -> ModelSurface:
    try:
        return NAMED[name.upper()]
    except KeyError:
        raise KeyError(f"unknown surface {name!r}; known: {sorted(NAMED)}") from None


# ---------------------------------------------------------------------------
# tube surface


def q_to_tube() -> Dict[str, PolyCC]:
    """Holomorphic map sending ``Q_{3,2,0}`` onto the tube ``Re zeta_k = (Re zeta_1)^k``.

    Returned as the images of ``zeta_1..zeta_4`` in the ``(z, w2, w3, w4)``
    coordinates.
    """
    z = _z()
    return {
        "zeta1": z * 2,
        "zeta2": z ** 2 * 2 - _w(2) * GaussianRational(0, 2),
        "zeta3": z ** 3 * 2 - _w(3) * GaussianRational(0, 3),
        "zeta4": z ** 4 * 2 - _w(4) * GaussianRational(0, 2),
    }


def tube_to_q(x1, y1, y2, y3, y4):
    """Inverse map applied to the tube point with real parameters ``x1, y1..y4``.

    Arguments may be PolyCC (for symbolic checks) or rationals; the result
    is the tuple ``(z, w2, w3, w4)``.
    """
    zeta1 = x1 + y1 * I
    zeta2 = x1 * x1 + y2 * I
    zeta3 = x1 * x1 * x1 + y3 * I
    zeta4 = x1 * x1 * x1 * x1 + y4 * I
    z = zeta1 * Fraction(1, 2)
    w2 = (zeta2 - z * z * 2) * GaussianRational(0, Fraction(1, 2))
    w3 = (zeta3 - z * z * z * 2) * GaussianRational(0, Fraction(1, 3))
    w4 = (zeta4 - z * z * z * z * 2) * GaussianRational(0, Fraction(1, 2))
    return z, w2, w3, w4


# ---------------------------------------------------------------------------
# holomorphic coordinate changes


@dataclass(frozen=True)
class HolomorphicChange:
    """Old coordinates as holomorphic polynomials in the new ones.

    ``z`` maps each old ``z_a`` index to its image; ``w`` maps each old
    ``w_j`` index to ``s_j * w_j + h_j`` with real ``s_j`` and ``h_j`` free
    of ``w_k`` for ``k >= j``.  Missing entries mean the identity.
    """

    z: Tuple[Tuple[int, PolyCC], ...] = ()
    w: Tuple[Tuple[int, PolyCC], ...] = ()
    note: str = ""

    @staticmethod
    def of(z: Mapping[int, PolyCC] | None = None, w: Mapping[int, PolyCC] | None = None, note: str = ""):
        return HolomorphicChange(tuple(sorted((z or {}).items())), tuple(sorted((w or {}).items())), note)

    def z_map(self):
        return dict(self.z)

    def w_map(self):
        return dict(self.w)

    def is_identity(self) -> bool:
        return all(p == _z(a) for a, p in self.z) and all(p == _w(j) for j, p in self.w)

    def then(self, other: "HolomorphicChange") -> "HolomorphicChange":
        """Composite change: first ``self``, then ``other`` on the new side."""
        bind = {}
        for a, p in other.z:
            bind[VarId("Z", a)] = p
        for j, p in other.w:
            bind[VarId("W", j)] = p
        zs = {a: p.substitute(bind) for a, p in self.z}
        ws = {j: p.substitute(bind) for j, p in self.w}
        for a, p in other.z:
            zs.setdefault(a, p)
        for j, p in other.w:
            ws.setdefault(j, p)
        return HolomorphicChange.of(zs, ws, "; ".join(x for x in (self.note, other.note) if x))

    def to_text(self) -> str:
        parts = [f"z{a} -> {p}" for a, p in self.z] + [f"w{j} -> {p}" for j, p in self.w]
        return ", ".join(parts) if parts else "identity"


_T = VarId("U", 999)


def apply_change(s: ModelSurface, change: HolomorphicChange, max_weight: int | None = None) -> ModelSurface:
    """Rewrite ``s`` in new coordinates, truncating above ``max_weight``."""
    g = s.grading()
    zmap = change.z_map()
    wmap = change.w_map()
    zb = {}
    for a in range(1, s.cr_dim + 1):
        img = zmap.get(a, _z(a))
        zb[a] = img
    new_phi: Dict[int, PolyCC] = {}
    onm: Dict[VarId, PolyCC] = {}
    for j, phi in s.equations:
        img = wmap.get(j, _w(j))
        sj = img.coefficient({VarId("W", j): 1})
        if not sj or not sj.is_real:
            raise InvalidSurface(f"w{j} change must have a nonzero real leading coefficient")
        rest = img - _w(j) * sj
        if any(VarId("W", k) in rest.variables() for k in range(j, 100)):
            raise InvalidSurface("change is not triangular")
        # placeholder for the not yet known Phi'_j; it must cancel
        local = dict(onm)
        tph = PolyCC.var(_T)
        local[VarId("W", j)] = _u(j) + tph * I
        local[VarId("Wbar", j)] = _u(j) - tph * I
        bind = {}
        for a, zimg in zb.items():
            zi = zimg.substitute(local)
            bind[VarId("Z", a)] = zi
            bind[VarId("Zbar", a)] = zi.conjugate()
        for k, _ in s.equations:
            kimg = wmap.get(k, _w(k))
            if VarId("U", k) in phi.variables():
                bind[VarId("U", k)] = kimg.real_part().substitute(local)
        lhs = phi.substitute(bind)
        rest_im = rest.imag_part().substitute(local)
        out = (lhs - rest_im) / sj.re
        if _T in out.variables():
            raise InvalidSurface(f"Phi_{j} depends on u{j}")
        if max_weight is not None:
            out = out.truncate(max_weight, g)
        new_phi[j] = out
        onm[VarId("W", j)] = _u(j) + out * I
        onm[VarId("Wbar", j)] = _u(j) - out * I
    eqs = tuple((j, new_phi[j]) for j, _ in s.equations)
    return ModelSurface(s.cr_dim, eqs, s.z_weights, s.w_weights, s.label, s.z_names)


# ---------------------------------------------------------------------------
# general germ reduction


def general_germ(c: GeneralGermCoeffs) -> ModelSurface:
    """The general germ truncated at weight 4 (higher terms are dropped)."""
    z, zb = _z(), _zb()
    u2, u3 = _u(2), _u(3)
    phi2 = z * zb * c.a
    phi3 = _re(z * z * zb * c.alpha) * 2
    phi4 = (
        (z * zb) ** 2 * c.b
        + _re(z ** 3 * zb * c.beta) * 2
        + _re(z ** 4 * c.gamma) * 2
        + _re(z ** 2 * u2 * c.delta) * 2
        + z * zb * u2 * c.c
        + _re(z * u3 * c.chi) * 2
        + u2 * u2 * c.d
    )
    return ModelSurface(1, ((2, phi2), (3, phi3), (4, phi4)), (1,), (2, 3, 4), "germ")


def _exact_root(q: Fraction, k: int) -> Optional[Fraction]:
    if q < 0:
        return None

    def iroot(n):
        r = round(n ** (1.0 / k)) if n else 0
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** k == n:
                return cand
        return None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _normalising_rotation(alpha: GaussianRational) -> GaussianRational:
    """omega with ``|omega|^2 omega = 1/alpha``."""
    mod = _exact_root(alpha.abs2(), 2)
    if mod is None:
        raise UnsupportedAlgebraic(f"|alpha| is irrational for alpha = {alpha}")
    r = _exact_root(mod, 3)
    if r is None:
        raise UnsupportedAlgebraic(f"|alpha|^(1/3) is irrational for alpha = {alpha}")
    return alpha.conjugate() / (mod * r)


def reduce_general_germ(c: GeneralGermCoeffs):
    """Bring a general germ to ``Q_{a,b,c}``.

    Returns ``(ModelParams, HolomorphicChange)`` where the change expresses
    the original coordinates in terms of the normalised ones.
    """
    c.validate()
    germ = general_germ(c)
    omega = _normalising_rotation(c.alpha)
    s2 = omega.abs2() * c.a
    step1 = HolomorphicChange.of({1: _z() * omega}, {2: _w(2) * s2}, "rotate and scale")
    g1 = apply_change(germ, step1, 4)

    phi4 = g1.phi(4)
    z, zb, u2, u3 = _z(), _zb(), _u(2), _u(3)
    gam = phi4.coefficient({VarId("Z", 1): 4})
    dlt = phi4.coefficient({VarId("Z", 1): 2, VarId("U", 2): 1})
    chi = phi4.coefficient({VarId("Z", 1): 1, VarId("U", 3): 1})
    cc = phi4.coefficient({VarId("Z", 1): 1, VarId("Zbar", 1): 1, VarId("U", 2): 1})
    dd = phi4.coefficient({VarId("U", 2): 2})
    # each 2Re(k m) in Phi_4 is Im(2i k m); |z|^2 u2 and u2^2 come from Im(w2^2)
    h = (
        z ** 4 * (gam * GaussianRational(0, 2))
        + z ** 2 * _w(2) * (dlt * GaussianRational(0, 2))
        + z * _w(3) * (chi * GaussianRational(0, 2))
        + _w(2) ** 2 * (cc * Fraction(1, 2) + dd * I)
    )
    step2 = HolomorphicChange.of({}, {4: _w(4) + h}, "absorb pluriharmonic and u-terms")
    g2 = apply_change(g1, step2, 4)

    phi4 = g2.phi(4)
    a = phi4.coefficient({VarId("Z", 1): 2, VarId("Zbar", 1): 2})
    beta = phi4.coefficient({VarId("Z", 1): 3, VarId("Zbar", 1): 1})
    if not a.is_real:
        raise InvalidSurface("reduced |z|^4 coefficient is not real")
    params = ModelParams(a.re, beta.re, beta.im)
    target = make_q(params)
    if g2.equations != target.equations:
        raise InvalidSurface("reduction did not reach the Q_{a,b,c} normal form")
    return params, step1.then(step2)


# ---------------------------------------------------------------------------
# recentering


def _split_bidegree(p: PolyCC):
    """Return ``{(holo, anti): part}`` for a u-free polynomial in z, zbar."""
    out: Dict[Tuple[int, int], Dict] = {}
    for m, c in p.terms.items():
        h = sum(1 for code in m if code // 1000 == 1)
        a = sum(1 for code in m if code // 1000 == 2)
        out.setdefault((h, a), {})[m] = c
    return {k: PolyCC(v) for k, v in out.items()}


def residual_cubic_coefficient(params, z0) -> GaussianRational:
    """K with the (2,1)-part of the recentred fourth equation equal to ``2 Re(K z^2 zbar)``
    before any absorption; homogeneity at z0 requires K real."""
    p = _params(params)
    z0 = GaussianRational.coerce(z0)
    return z0.conjugate() * (2 * p.a) + z0 * (3 * p.b) + z0 * GaussianRational(0, 3 * p.c)


def recenter(s: ModelSurface, z0) -> Tuple[ModelSurface, HolomorphicChange, GaussianRational]:
    """Germ of ``Q_{a,b,c}`` at the point over ``z0`` (u = 0), renormalised.

    Returns the new surface, the change (old coordinates in terms of new,
    with the base point at the new origin) and the residual coefficient K
    of the (2,1)-part ``2 Re(K z^2 zbar)`` met in the fourth equation.
    """
    if s.cr_dim != 1 or s.w_indices != (2, 3, 4):
        raise InvalidSurface("recenter expects a Q_{a,b,c} surface")
    z0 = GaussianRational.coerce(z0)
    if not z0:
        return s, HolomorphicChange(), GaussianRational(0)
    z, zb = _z(), _zb()
    vals = {VarId("Z", 1): z0, VarId("Zbar", 1): z0.conjugate()}
    base = {j: phi.evaluate(vals) for j, phi in s.equations}
    # translation to the base point
    shift = {VarId("Z", 1): z + z0, VarId("Zbar", 1): zb + z0.conjugate()}
    phis = {j: phi.substitute(shift) - base[j] for j, phi in s.equations}
    change = HolomorphicChange.of(
        {1: z + z0}, {j: _w(j) + base[j] * I for j in (2, 3, 4)}, "translate"
    )
    t = ModelSurface(1, tuple(phis.items()), (1,), (2, 3, 4), s.label)
    assert apply_change(s, change).equations == t.equations

    residual = GaussianRational(0)
    for j in (2, 3, 4):
        phi = t.phi(j)
        parts = _split_bidegree(phi)
        h = PolyCC()
        for (hd, ad), part in parts.items():
            if ad == 0 and hd > 0:
                # pluriharmonic: 2Re(hol) = Im(2i hol)
                h = h + part * GaussianRational(0, 2)
        c11 = parts.get((1, 1)) if j > 2 else None
        if c11:
            k = c11.coefficient({VarId("Z", 1): 1, VarId("Zbar", 1): 1})
            h = h + _w(2) * k.re
        if j == 4:
            c21 = parts.get((2, 1))
            if c21:
                kk = c21.coefficient({VarId("Z", 1): 2, VarId("Zbar", 1): 1})
                residual = kk
                # Re(kk) part is Re(kk) * 2Re(z^2 zbar) = Im(Re(kk) w3)
                h = h + _w(3) * kk.re
        if h:
            step = HolomorphicChange.of({}, {j: _w(j) + h}, f"normalise w{j}")
            t = apply_change(t, step)
            change = change.then(step)
    return t.rename(f"{s.label}@{z0}"), change, residual


# ---------------------------------------------------------------------------
# moduli


@dataclass(frozen=True)
class EquivalenceMap:
    """``z -> beta z, w2 -> beta^2 w2, w3 -> beta^3 w3, w4 -> beta4 w4 + gamma4 w2^2``."""

    beta: Fraction
    beta2: Fraction
    beta3: Fraction
    beta4: Fraction
    gamma4: Fraction = Fraction(0)
    verified: bool = False

    def to_text(self) -> str:
        return (
            f"z -> {self.beta}*z, w2 -> {self.beta2}*w2, w3 -> {self.beta3}*w3, "
            f"w4 -> {self.beta4}*w4 + {self.gamma4}*w2^2"
        )


def verify_equivalence_map(src: ModelSurface, dst: ModelSurface, m: EquivalenceMap) -> bool:
    """Check that the map sends ``src`` into ``dst`` as a polynomial identity."""
    onm = src.on_surface_bindings()
    img_z = _z() * m.beta
    img_w = {
        2: _w(2) * m.beta2,
        3: _w(3) * m.beta3,
        4: _w(4) * m.beta4 + _w(2) ** 2 * m.gamma4,
    }
    zbind = {VarId("Z", 1): img_z, VarId("Zbar", 1): img_z.conjugate()}
    for j, phi in dst.equations:
        lhs = img_w[j].imag_part().substitute(onm)
        rhs = phi.substitute(zbind)
        if lhs - rhs:
            return False
    return True


def model_equivalence(p, q) -> Optional[EquivalenceMap]:
    """Witness map ``Q_p -> Q_q`` when the triples are proportional, else None."""
    p, q = _params(p), _params(q)
    for x in (p, q):
        if not x.is_valid():
            raise InvalidParams("(a, b, c) must not be zero")
    pt, qt = p.as_tuple(), q.as_tuple()
    k = next(i for i in range(3) if pt[i])
    if not qt[k]:
        return None
    ratio = qt[k] / pt[k]
    if any(pt[i] * ratio != qt[i] for i in range(3)):
        return None
    # beta = 1, beta4 * (a, b, c) = (a', b', c')
    m = EquivalenceMap(Fraction(1), Fraction(1), Fraction(1), ratio)
    ok = verify_equivalence_map(make_q(p), make_q(q), m)
    if not ok:
        raise AssertionError("witness map failed substitution check")
    return EquivalenceMap(m.beta, m.beta2, m.beta3, m.beta4, m.gamma4, True)


# ---------------------------------------------------------------------------
# file format

_EQ_RE = re.compile(r"^\s*Im\s*\(?\s*w(\d+)\s*\)?\s*=\s*(.+)$")


def parse_surface(text: str) -> ModelSurface:
    """Parse the ``Im w<j> = <poly>`` file format."""
    label = None
    cr_dim = None
    zw = None
    ww = None
    eqs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, _, val = body.partition(":")
            key = key.strip().lower()
            val = val.strip()
            if key == "name":
                label = val
            elif key == "cr_dim":
                cr_dim = int(val)
            elif key == "z_weights":
                zw = tuple(int(x) for x in val.replace(",", " ").split())
            elif key == "w_weights":
                ww = tuple(int(x) for x in val.replace(",", " ").split())
            continue
        m = _EQ_RE.match(line)
        if not m:
            raise InvalidSurface(f"line {lineno}: expected 'Im w<j> = <polynomial>'")
        eqs.append((int(m.group(1)), parse_poly(m.group(2))))
    if not eqs:
        raise InvalidSurface("no equations")
    if cr_dim is None:
        cr_dim = max(
            [v.index for _, p in eqs for v in p.variables() if v.kind in ("Z", "Zbar")] or [1]
        )
    s = ModelSurface(cr_dim, tuple(eqs), zw or (), ww or (), label)
    s.validate()
    return s


def serialize_surface(s: ModelSurface) -> str:
    lines = []
    if s.label:
        lines.append(f"# name: {s.label}")
    lines.append(f"# cr_dim: {s.cr_dim}")
    lines.append("# z_weights: " + ", ".join(str(w) for w in s.z_weights))
    lines.append("# w_weights: " + ", ".join(str(w) for w in s.w_weights))
    for j, phi in s.equations:
        lines.append(f"Im w{j} = {phi.to_text()}")
    return "\n".join(lines) + "\n"
