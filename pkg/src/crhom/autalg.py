"""Graded infinitesimal automorphisms of a weighted-homogeneous model surface.

A field ``X = 2 Re(sum f_a d/dz_a + sum g_j d/dw_j)`` with holomorphic
polynomial coefficients is tangent to ``Im w_j = Phi_j`` iff
``Im g_j - 2 Re(sum f_a dPhi_j/dz_a) - sum Re(g_k) dPhi_j/du_k`` vanishes
after ``w -> u + i Phi``.  For each weight d the general homogeneous
ansatz is solved over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .linalg import SparseEchelon, nullspace, rank
from .polyring import GaussianRational, Grading, I, PolyCC, VarId, iter_monomials
from .surface import ModelSurface

__all__ = [
    "CapExceeded",
    "GradedAutBasis",
    "HoloField",
    "aut_basis",
    "tangency_recheck",
    "holo_bracket",
    "bracket_closure",
    "field_values",
]

MAX_CAP = 6


class CapExceeded(ValueError):
    pass


# a holomorphic field is a tuple of PolyCC: (f_1..f_n, g_j in equation order)
HoloField = Tuple[PolyCC, ...]


def _holo_vars(s: ModelSurface) -> List[VarId]:
    return [VarId("Z", a) for a in range(1, s.cr_dim + 1)] + [VarId("W", j) for j in s.w_indices]


def _grading(s: ModelSurface) -> Grading:
    ov = {VarId("Z", a + 1): w for a, w in enumerate(s.z_weights)}
    for j, w in zip(s.w_indices, s.w_weights):
        ov[VarId("W", j)] = w
        ov[VarId("U", j)] = w
    return Grading(ov)


def _slot_weights(s: ModelSurface) -> List[int]:
    return list(s.z_weights) + list(s.w_weights)


def _monomials_of_weight(s: ModelSurface, weight: int) -> List[tuple]:
    if weight < 0:
        return []
    g = _grading(s)
    codes = [v.code for v in _holo_vars(s)]
    minw = min(g.weight(c) for c in codes)
    out = []
    for deg in range(0, weight // minw + 1):
        for m in iter_monomials(codes, deg):
            if g.mono_weight(m) == weight:
                out.append(m)
    return sorted(out)


def _tangency_terms(s: ModelSurface, slot: int, poly: PolyCC) -> List[PolyCC]:
    """Contribution of ``poly`` in ``slot`` to each tangency expression, on M."""
    n = s.cr_dim
    onm = s.on_surface_bindings()
    out = []
    for j, phi in s.equations:
        if slot < n:
            t = poly * phi.diff(VarId("Z", slot + 1))
            expr = -(t + t.conjugate())
        else:
            k = s.w_indices[slot - n]
            expr = PolyCC()
            if k == j:
                expr = poly.imag_part()
            d = phi.diff(VarId("U", k))
            if d:
                expr = expr - poly.real_part() * d
        out.append(expr.substitute(onm))
    return out


@dataclass
class WeightSpace:
    weight: int
    fields: List[HoloField]
    unknowns: int
    degenerate: bool


@dataclass
class GradedAutBasis:
    surface_label: str
    weight_cap: int
    spaces: Dict[int, WeightSpace]
    notes: List[str] = field(default_factory=list)

    @property
    def dims(self) -> Dict[int, int]:
        return {d: len(w.fields) for d, w in sorted(self.spaces.items())}

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def degenerate(self) -> bool:
        return any(w.degenerate for w in self.spaces.values())

    def fields(self) -> List[HoloField]:
        return [f for d in sorted(self.spaces) for f in self.spaces[d].fields]

    def to_json(self, per_weight: bool = True):
        out = {
            "surface": self.surface_label,
            "weight_cap": self.weight_cap,
            "total_dim": self.total_dim,
            "holomorphically_degenerate": self.degenerate,
            "notes": list(self.notes),
        }
        if per_weight:
            out["per_weight"] = {str(d): n for d, n in self.dims.items()}
            out["degenerate_weights"] = [d for d, w in sorted(self.spaces.items()) if w.degenerate]
        return out


def _solve_weight(s: ModelSurface, d: int) -> WeightSpace:
    slots = _slot_weights(s)
    basis: List[Tuple[int, tuple, GaussianRational]] = []
    for slot, w in enumerate(slots):
        for m in _monomials_of_weight(s, d + w):
            basis.append((slot, m, GaussianRational(1)))
            basis.append((slot, m, I))
    if not basis:
        return WeightSpace(d, [], 0, False)
    cols = []
    for slot, m, c in basis:
        cols.append(_tangency_terms(s, slot, PolyCC({m: c})))
    rows = []
    for j in range(s.codim):
        keys = sorted(set().union(*[col[j].terms for col in cols]))
        for key in keys:
            for part in ("re", "im"):
                row = [getattr(col[j].terms.get(key, GaussianRational(0)), part) for col in cols]
                if any(row):
                    rows.append(row)
    ns = nullspace(rows, len(basis)) if rows else [
        [Fraction(int(i == k)) for i in range(len(basis))] for k in range(len(basis))
    ]
    fields = []
    for vec in ns:
        comps = [dict() for _ in slots]
        for t, (slot, m, c) in zip(vec, basis):
            if t:
                comps[slot][m] = comps[slot].get(m, GaussianRational(0)) + c * t
        fields.append(tuple(PolyCC({m: v for m, v in cp.items() if v}) for cp in comps))
    # S cap iS: multiplication by i swaps the (1, i) pair of each monomial
    deg = False
    if ns:
        rot = []
        for vec in ns:
            r = list(vec)
            for k in range(0, len(vec), 2):
                r[k], r[k + 1] = -vec[k + 1], vec[k]
            rot.append(r)
        deg = rank(ns + rot, len(basis)) < 2 * len(ns)
    return WeightSpace(d, fields, len(basis), deg)


def aut_basis(s: ModelSurface, weight_cap: int = 4) -> GradedAutBasis:
    """Weighted-homogeneous tangent fields of weights ``-max(w) .. weight_cap``."""
    if weight_cap > MAX_CAP:
        raise CapExceeded(f"weight cap {weight_cap} exceeds {MAX_CAP}")
    lo = -max(list(s.w_weights) + list(s.z_weights))
    spaces = {d: _solve_weight(s, d) for d in range(lo, weight_cap + 1)}
    out = GradedAutBasis(s.label or "", weight_cap, spaces)
    out.notes.append(f"weights above {weight_cap} not computed")
    if out.degenerate:
        out.notes.append("holomorphically degenerate: some weight space is closed under multiplication by i")
    return out


# ---------------------------------------------------------------------------
# independent checks


def _ambient_rho(s: ModelSurface) -> List[PolyCC]:
    half = Fraction(1, 2)
    ubind = {
        VarId("U", j): (PolyCC.var(VarId("W", j)) + PolyCC.var(VarId("Wbar", j))) * half for j in s.w_indices
    }
    out = []
    for j, phi in s.equations:
        im_w = (PolyCC.var(VarId("W", j)) - PolyCC.var(VarId("Wbar", j))) * GaussianRational(0, Fraction(-1, 2))
        out.append(im_w - phi.substitute(ubind))
    return out


def tangency_recheck(s: ModelSurface, X: HoloField) -> bool:
    """Apply ``X + conj X`` as an ambient derivation to ``Im w_j - Phi_j(z, zbar, Re w)``
    and restrict to the surface."""
    hv = _holo_vars(s)
    onm = s.on_surface_bindings()
    for rho in _ambient_rho(s):
        acc = PolyCC()
        for v, comp in zip(hv, X):
            if comp:
                acc = acc + comp * rho.diff(v) + comp.conjugate() * rho.diff(v.conj())
        if acc.substitute(onm):
            return False
    return True


def holo_bracket(s: ModelSurface, X: HoloField, Y: HoloField) -> HoloField:
    hv = _holo_vars(s)

    def der(V, p):
        out = PolyCC()
        for v, c in zip(hv, V):
            if c:
                out = out + c * p.diff(v)
        return out

    return tuple(der(X, y) - der(Y, x) for x, y in zip(X, Y))


def _vec(X: HoloField) -> Dict[tuple, Fraction]:
    v = {}
    for k, comp in enumerate(X):
        for m, c in comp.terms.items():
            if c.re:
                v[(k, m, 0)] = c.re
            if c.im:
                v[(k, m, 1)] = c.im
    return v


def bracket_closure(b: GradedAutBasis, s: ModelSurface) -> List[Tuple[int, int]]:
    """Weight pairs ``(d, e)`` with ``d + e`` in range whose brackets leave the span."""
    bad = []
    ws = sorted(b.spaces)
    for d in ws:
        for e in ws:
            if e < d or d + e > max(ws):
                continue
            target = SparseEchelon()
            for F in b.spaces.get(d + e, WeightSpace(d + e, [], 0, False)).fields:
                target.add(_vec(F))
            for X in b.spaces[d].fields:
                for Y in b.spaces[e].fields:
                    B = holo_bracket(s, X, Y)
                    if any(B) and not target.contains(_vec(B)):
                        bad.append((d, e))
                        break
                else:
                    continue
                break
    return bad


def field_values(s: ModelSurface, X: HoloField, z: Sequence, w: Dict[int, GaussianRational]) -> List[Fraction]:
    """Real ambient vector ``(Re f_1, Im f_1, ..., Re g_j, Im g_j, ...)`` at a point."""
    vals = {}
    for a, za in enumerate(z, 1):
        za = GaussianRational.coerce(za)
        vals[VarId("Z", a)] = za
    for j in s.w_indices:
        vals[VarId("W", j)] = GaussianRational.coerce(w[j])
    out = []
    for comp in X:
        v = comp.evaluate(vals)
        out.extend([v.re, v.im])
    return out
