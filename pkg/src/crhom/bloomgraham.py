"""Bloom–Graham type of a polynomial model surface at a rational point."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple

from .linalg import SparseEchelon
from .polyring import GaussianRational
from .surface import ModelSurface
from .vfield import PolyVectorField, bracket, cr_fields, evaluate

__all__ = ["BGType", "PointNotOnSurface", "Inconclusive", "bg_type", "surface_point", "format_type"]


class PointNotOnSurface(ValueError):
    pass


class Inconclusive(RuntimeError):
    def __init__(self, cap: int, dims):
        super().__init__(f"type not resolved within {cap} bracket layers (dims {list(dims)})")
        self.cap = cap
        self.dims = tuple(dims)


@dataclass(frozen=True)
class BGType:
    pairs: Tuple[Tuple[int, int], ...]
    finite: bool
    dims: Tuple[int, ...] = ()

    def __str__(self):
        body = format_type(self.pairs)
        return body if self.finite else body + " infinite"

    def to_json(self):
        return {"pairs": [list(p) for p in self.pairs], "finite": self.finite, "dims": list(self.dims)}


def format_type(pairs) -> str:
    return "(" + ",".join(f"({m},{k})" for m, k in pairs) + ")"


def surface_point(s: ModelSurface, z: Sequence, u: Mapping[int, Fraction] | None = None):
    """Ambient point of ``s`` over ``(z, u)`` as ``(z, {j: w_j})``."""
    from .polyring import VarId

    zs = [GaussianRational.coerce(x) for x in z] + [GaussianRational(0)] * (s.cr_dim - len(z))
    vals = {}
    for k, zk in enumerate(zs, 1):
        vals[VarId("Z", k)] = zk
        vals[VarId("Zbar", k)] = zk.conjugate()
    u = {j: Fraction((u or {}).get(j, 0)) for j in s.w_indices}
    for j in s.w_indices:
        vals[VarId("U", j)] = GaussianRational(u[j])
    w = {j: GaussianRational(u[j], phi.evaluate(vals).re) for j, phi in s.equations}
    return zs, w


def bg_type(s: ModelSurface, pt=None, cap: int = 8) -> BGType:
    """Pointwise Bloom–Graham type.

    ``pt`` is an ambient point ``(z, {j: w_j})`` (default: the origin).
    The type is finite when the bracket filtration fills the tangent space
    within ``cap`` layers.  It is declared infinite when a new layer adds
    nothing to the real span of the fields already generated, since the
    filtration is then constant from that layer on.  Anything else raises
    Inconclusive.
    """
    if cap < 2:
        raise ValueError("cap must be at least 2")
    if pt is None:
        z = [GaussianRational(0)] * s.cr_dim
        w = {j: GaussianRational(0) for j in s.w_indices}
    else:
        z, w = pt
        z = [GaussianRational.coerce(x) for x in z]
        w = {j: GaussianRational.coerce(v) for j, v in w.items()}
    if not s.contains(z, w):
        raise PointNotOnSurface("point does not satisfy the defining equations")
    u = {j: w[j].re for j in s.w_indices}
    full = s.dim

    d1 = cr_fields(s)
    fields_span = SparseEchelon()
    point_span = SparseEchelon()

    def add_point(X: PolyVectorField) -> None:
        vals = evaluate(X, z, u)
        point_span.add({i: v for i, v in enumerate(vals) if v})

    layer: List[PolyVectorField] = []
    for X in d1:
        if fields_span.add(X.coefficient_vector()):
            layer.append(X)
            add_point(X)
    dims = [len(point_span)]
    gens = list(layer)
    finite = dims[-1] == full
    stable = False
    nu = 1
    while not finite and nu < cap:
        nu += 1
        new = []
        for X in layer:
            for G in gens:
                B = bracket(X, G)
                if B.is_zero():
                    continue
                if fields_span.add(B.coefficient_vector()):
                    new.append(B)
                    add_point(B)
        dims.append(len(point_span))
        if dims[-1] < dims[-2]:
            raise AssertionError("dimension sequence decreased")
        if dims[-1] == full:
            finite = True
            break
        if not new:
            stable = True
            break
        layer = new
    if not finite and not stable:
        raise Inconclusive(cap, dims)
    pairs = []
    prev = 0
    for m, d in enumerate(dims, 1):
        if m == 1:
            prev = d
            continue
        if d > prev:
            pairs.append((m, d - prev))
        prev = d
    return BGType(tuple(pairs), finite, tuple(dims))
