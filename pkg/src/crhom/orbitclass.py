"""Model surfaces of the orbits: pencil backend, printed table backend, sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .group import OrbitDescriptor, SignedRoot, make_descriptor
from .hermitian import (
    HermitianPencil,
    PencilClass,
    classify_pencil,
    levi_pair,
    pencil_discriminant,
    probe_pair,
    rationalized_pair,
)

__all__ = [
    "ModelTag",
    "Backend",
    "TableResult",
    "classify",
    "classify_table",
    "orbit_pencil",
    "degeneracy_flags",
    "sweep",
    "parse_range",
    "disc_boundary",
    "TABLE_ROWS",
]


class ModelTag(str, Enum):
    E = "E"
    Q_PLUS = "Q_PLUS"
    Q_MINUS = "Q_MINUS"
    Q_ZERO = "Q_ZERO"
    F = "F"
    C_SELF = "C_SELF"

    def __str__(self):
        return self.value


class Backend(str, Enum):
    PENCIL = "PENCIL"
    PAPER_TABLE = "PAPER_TABLE"
    LEVI = "LEVI"

    def __str__(self):
        return self.value


_FROM_PENCIL = {
    PencilClass.DEPENDENT: ModelTag.E,
    PencilClass.Q_PLUS: ModelTag.Q_PLUS,
    PencilClass.Q_MINUS: ModelTag.Q_MINUS,
    PencilClass.Q_ZERO: ModelTag.Q_ZERO,
}


def orbit_pencil(d: OrbitDescriptor, kind: str = "published") -> HermitianPencil:
    """Probe pencil of a (2,2) orbit; irrational parameters go through a
    class-preserving rational congruence."""
    if d.branch in ("POS", "NEG"):
        m = d.params[0][1]
        sigma = d.param("sigma").value()
        if m.is_rational:
            fn = probe_pair if kind == "published" else levi_pair
            return fn(d.branch, m.value(), sigma)
        return rationalized_pair(kind, d.branch, m.power(2), sigma)
    if d.branch in ("RHO", "TAU"):
        r = d.params[0][1]
        if r.is_rational:
            fn = probe_pair if kind == "published" else levi_pair
            return fn(d.branch, r.value())
        return rationalized_pair(kind, d.branch, r.power(3))
    raise ValueError(f"branch {d.branch} has no probe pencil")


# ---------------------------------------------------------------------------
# the printed table
#
# Each row is (id, predicate(m2, s, m_nonzero), tag, malformed).  Every
# printed condition depends on mu (or nu) only through mu^2 and mu != 0.


@dataclass(frozen=True)
class TableRow:
    id: str
    text: str
    tag: ModelTag
    malformed: bool
    pred: Callable = field(compare=False, repr=False)


def _rows_pos():
    X = lambda m2, s: Fraction(81, 2) * m2 - 24 * s
    return [
        TableRow("POS.1", "mu = 0, sigma = 0", ModelTag.E, False, lambda m2, s, nz: not nz and s == 0),
        TableRow("POS.2", "mu = 0, sigma != 0", ModelTag.Q_ZERO, False, lambda m2, s, nz: not nz and s != 0),
        TableRow("POS.3", "mu != 0, sigma = 0", ModelTag.Q_MINUS, False, lambda m2, s, nz: nz and s == 0),
        TableRow(
            "POS.4", "sigma >= 27 mu^2/16 > 0", ModelTag.Q_PLUS, False,
            lambda m2, s, nz: s >= Fraction(27, 16) * m2 and Fraction(27, 16) * m2 > 0,
        ),
        TableRow(
            "POS.5", "mu != 0, sigma^2 > 81 mu^2/2 - 24 sigma > 0", ModelTag.Q_PLUS, True,
            lambda m2, s, nz: nz and s * s > X(m2, s) > 0,
        ),
        TableRow(
            "POS.6", "mu != 0, sigma^2 = 81 mu^2/2 - 24 sigma > 0", ModelTag.Q_ZERO, True,
            lambda m2, s, nz: nz and s * s == X(m2, s) and X(m2, s) > 0,
        ),
        TableRow(
            "POS.7", "mu != 0, 81 mu^2/2 - 24 sigma > sigma^2 > 0", ModelTag.Q_MINUS, True,
            lambda m2, s, nz: nz and X(m2, s) > s * s > 0,
        ),
    ]


def _rows_neg():
    Y = lambda m2, s: 24 * s - Fraction(81, 2) * m2
    return [
        TableRow("NEG.1", "nu = 0, sigma = 0", ModelTag.E, False, lambda m2, s, nz: not nz and s == 0),
        TableRow("NEG.2", "nu = 0, sigma != 0", ModelTag.Q_ZERO, False, lambda m2, s, nz: not nz and s != 0),
        TableRow("NEG.3", "nu != 0, sigma = 0", ModelTag.Q_PLUS, False, lambda m2, s, nz: nz and s == 0),
        TableRow(
            "NEG.4", "nu, sigma != 0, sigma <= 27 nu^2/16", ModelTag.Q_PLUS, False,
            lambda m2, s, nz: nz and s != 0 and s <= Fraction(27, 16) * m2,
        ),
        TableRow(
            "NEG.5", "nu != 0, sigma^2 > 24 sigma - 81 nu^2/2 > 0", ModelTag.Q_PLUS, False,
            lambda m2, s, nz: nz and s * s > Y(m2, s) > 0,
        ),
        TableRow(
            "NEG.6", "nu != 0, sigma^2 = 24 sigma - 81 nu^2/2 > 0", ModelTag.Q_ZERO, False,
            lambda m2, s, nz: nz and s * s == Y(m2, s) and Y(m2, s) > 0,
        ),
        TableRow(
            "NEG.7", "nu != 0, 24 sigma - 81 nu^2/2 > sigma^2 > 0", ModelTag.Q_MINUS, False,
            lambda m2, s, nz: nz and Y(m2, s) > s * s > 0,
        ),
    ]


TABLE_ROWS = {"POS": _rows_pos(), "NEG": _rows_neg()}
_CONST_ROWS = {
    "RHO": ("RHO.1", ModelTag.Q_PLUS),
    "TAU": ("TAU.1", ModelTag.Q_PLUS),
    "OPLUS": ("OPM.1", ModelTag.F),
    "OMINUS": ("OPM.1", ModelTag.F),
    "SURFACE_C": ("C.1", ModelTag.C_SELF),
}


@dataclass(frozen=True)
class TableResult:
    tag: Optional[ModelTag]
    status: str  # "ok", "ambiguous" or "uncovered"
    rows: Tuple[str, ...]
    malformed: bool

    def to_json(self):
        return {
            "tag": str(self.tag) if self.tag else None,
            "status": self.status,
            "rows": list(self.rows),
            "malformed": self.malformed,
        }


def classify_table(d: OrbitDescriptor) -> TableResult:
    if d.branch in _CONST_ROWS:
        rid, tag = _CONST_ROWS[d.branch]
        return TableResult(tag, "ok", (rid,), False)
    m = d.params[0][1]
    m2 = m.power(2)
    s = d.param("sigma").value()
    hits = [r for r in TABLE_ROWS[d.branch] if r.pred(m2, s, m.sign != 0)]
    malformed = any(r.malformed for r in hits)
    tags = {r.tag for r in hits}
    ids = tuple(r.id for r in hits)
    if not hits:
        return TableResult(None, "uncovered", (), False)
    if len(tags) > 1:
        return TableResult(None, "ambiguous", ids, malformed)
    return TableResult(tags.pop(), "ok", ids, malformed)


def classify(d: OrbitDescriptor, backend: Backend | str = Backend.PENCIL):
    """Model surface tag of an orbit.

    PENCIL classifies the published probe pair, LEVI the exact Levi pair
    of the orbit graph; PAPER_TABLE returns a TableResult.
    """
    backend = Backend(str(backend).upper())
    if backend is Backend.PAPER_TABLE:
        return classify_table(d)
    if d.branch in ("OPLUS", "OMINUS"):
        return ModelTag.F
    if d.branch == "SURFACE_C":
        return ModelTag.C_SELF
    kind = "published" if backend is Backend.PENCIL else "levi"
    return _FROM_PENCIL[classify_pencil(orbit_pencil(d, kind))]


def degeneracy_flags(d: OrbitDescriptor) -> Dict[str, object]:
    if d.branch in ("OPLUS", "OMINUS"):
        return {
            "holomorphically_degenerate": True,
            "cr_type": [2, 2],
            "dimension": 6,
            "witness": "2 Re f(z, w2, w3, w4) d/dw4 on the model F",
        }
    if d.branch == "SURFACE_C":
        return {"holomorphically_degenerate": False, "cr_type": [1, 3], "dimension": 5, "witness": None}
    return {"holomorphically_degenerate": False, "cr_type": [2, 2], "dimension": 6, "witness": None}


# ---------------------------------------------------------------------------
# sweeps


def parse_range(text: str) -> List[Fraction]:
    """``lo:hi:step`` with rational literals, inclusive of both ends."""
    try:
        lo, hi, step = (Fraction(t) for t in text.split(":"))
    except ValueError as exc:
        raise ValueError(f"bad range {text!r}, expected lo:hi:step") from exc
    if step <= 0 or hi < lo:
        raise ValueError(f"bad range {text!r}")
    out = []
    x = lo
    while x <= hi:
        out.append(x)
        x += step
    return out


def disc_boundary(branch: str) -> Dict[str, object]:
    """The curve where the published probe pencil changes class."""
    b = branch.upper()
    if b == "POS":
        return {
            "disc": "(9 mu^2/16) (sigma^2 + 24 sigma - 81 mu^2/2)",
            "zero_set": "mu = 0 or sigma = -12 +- sqrt(144 + 81 mu^2/2)",
            "sigma_of": lambda m: (-12 - math.sqrt(144 + 40.5 * m * m), -12 + math.sqrt(144 + 40.5 * m * m)),
        }
    if b == "NEG":
        return {
            "disc": "(9 nu^2/16) (sigma^2 + 24 sigma + 81 nu^2/2)",
            "zero_set": "nu = 0 or sigma = -12 +- sqrt(144 - 81 nu^2/2), |nu| <= 4 sqrt(2)/3",
            "sigma_of": lambda m: ()
            if 144 - 40.5 * m * m < 0
            else (-12 - math.sqrt(144 - 40.5 * m * m), -12 + math.sqrt(144 - 40.5 * m * m)),
        }
    if b in ("RHO", "TAU"):
        return {"disc": "rho^2/81", "zero_set": "rho = 0", "sigma_of": None}
    raise ValueError(branch)


def _descriptors(branch: str, grid_a: Sequence[Fraction], grid_b: Sequence[Fraction]):
    b = branch.upper()
    if b in ("POS", "NEG"):
        name = "mu" if b == "POS" else "nu"
        for m in grid_a:
            for s in grid_b:
                yield make_descriptor(b, **{name: m, "sigma": s})
    elif b in ("RHO", "TAU"):
        name = b.lower()
        for r in grid_a:
            yield make_descriptor(b, **{name: r})
    else:
        raise ValueError(branch)


def sweep(branch: str, grid_a: Sequence, grid_b: Sequence | None = None) -> Dict[str, object]:
    """Classify a parameter grid with all backends and summarise disagreements.

    ``grid_a`` ranges over mu / nu / rho / tau and ``grid_b`` over sigma.
    """
    b = branch.upper()
    grid_a = [Fraction(x) for x in grid_a]
    grid_b = [Fraction(x) for x in (grid_b if grid_b is not None else grid_a)]
    points = []
    by_row: Dict[str, Dict[str, int]] = {}
    for d in _descriptors(b, grid_a, grid_b):
        pen = classify(d, Backend.PENCIL)
        levi = classify(d, Backend.LEVI)
        tab = classify_table(d)
        disc, _ = pencil_discriminant(orbit_pencil(d))
        agree = tab.tag == pen if tab.status == "ok" else None
        for rid in tab.rows or ("(none)",):
            slot = by_row.setdefault(rid, {"points": 0, "agree": 0, "disagree": 0, "unresolved": 0})
            slot["points"] += 1
            if agree is None:
                slot["unresolved"] += 1
            elif agree:
                slot["agree"] += 1
            else:
                slot["disagree"] += 1
        points.append(
            {
                "params": {k: str(v) for k, v in d.params},
                "pencil": str(pen),
                "levi": str(levi),
                "table": tab.to_json(),
                "disc": str(disc),
                "agree": agree,
            }
        )
    malformed_rows = sorted({r.id for r in TABLE_ROWS.get(b, []) if r.malformed})
    bd = disc_boundary(b)
    boundary = []
    if bd["sigma_of"] is not None:
        for m in grid_a:
            boundary.append({"param": str(m), "sigma_zeros": [round(v, 12) for v in bd["sigma_of"](float(m))]})
    return {
        "branch": b,
        "n_points": len(points),
        "points": points,
        "rows": {k: by_row[k] for k in sorted(by_row)},
        "malformed_rows": malformed_rows,
        "boundary": {"disc": bd["disc"], "zero_set": bd["zero_set"], "samples": boundary},
        "disagreements": sum(1 for p in points if p["agree"] is False),
    }


def sweep_csv(report: Dict[str, object]) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    pts = report["points"]
    names = list(pts[0]["params"]) if pts else []
    w.writerow(names + ["pencil", "levi", "table", "table_status", "table_rows", "malformed", "disc", "agree"])
    for p in pts:
        t = p["table"]
        w.writerow(
            [p["params"][n] for n in names]
            + [p["pencil"], p["levi"], t["tag"] or "", t["status"], ";".join(t["rows"]), t["malformed"], p["disc"], p["agree"]]
        )
    return buf.getvalue()
