"""Hermitian forms on C^2, pencil classification and the probe-point pairs.

Convention: a form ``sum H_ab z_a conj(z_b)`` is stored as the matrix H,
so ``i(z1 zb2 - z2 zb1)`` has ``H12 = i`` and ``H21 = -i``.

Two families of pairs at the orbit probe points are provided.
``probe_pair`` transcribes the published pairs as they are printed;
``levi_pair`` is the exact (1,1)-part of the orbit graph functions.
They differ in the (1,1) entry of the second form for the P != 0
branches.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from .polyring import GaussianRational, VarId
from .surface import ModelSurface

__all__ = [
    "HermitianMatrix2",
    "HermitianPencil",
    "PencilClass",
    "WrongCRType",
    "pencil_discriminant",
    "classify_pencil",
    "probe_pair",
    "levi_pair",
    "exact_hermitian_pair",
    "congruence",
]

G = GaussianRational


class WrongCRType(ValueError):
    pass


class PencilClass(str, Enum):
    Q_PLUS = "Q_PLUS"
    Q_MINUS = "Q_MINUS"
    Q_ZERO = "Q_ZERO"
    DEPENDENT = "DEPENDENT"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class HermitianMatrix2:
    h11: Fraction
    h12: GaussianRational
    h22: Fraction

    def __post_init__(self):
        for name in ("h11", "h22"):
            v = getattr(self, name)
            if isinstance(v, GaussianRational):
                if v.im:
                    raise ValueError("diagonal entries of a Hermitian matrix are real")
                v = v.re
            object.__setattr__(self, name, Fraction(v))
        object.__setattr__(self, "h12", G.coerce(self.h12))

    @staticmethod
    def from_rows(rows) -> "HermitianMatrix2":
        (a, b), (c, d) = rows
        a, b, c, d = (G.coerce(x) for x in (a, b, c, d))
        if a.im or d.im or c != b.conjugate():
            raise ValueError("matrix is not Hermitian")
        return HermitianMatrix2(a.re, b, d.re)

    @property
    def h21(self) -> GaussianRational:
        return self.h12.conjugate()

    def rows(self):
        return ((G(self.h11), self.h12), (self.h21, G(self.h22)))

    def is_zero(self) -> bool:
        return not self.h11 and not self.h12 and not self.h22

    def real_vector(self):
        return (self.h11, self.h12.re, self.h12.im, self.h22)

    def scale(self, r) -> "HermitianMatrix2":
        r = Fraction(r)
        return HermitianMatrix2(self.h11 * r, self.h12 * r, self.h22 * r)

    def complex_rows(self):
        return tuple(tuple(complex(x) for x in row) for row in self.rows())

    def to_json(self):
        return [[str(x) for x in row] for row in self.rows()]


@dataclass(frozen=True)
class HermitianPencil:
    H1: HermitianMatrix2
    H2: HermitianMatrix2
    note: str = ""


def congruence(H: HermitianMatrix2, g) -> HermitianMatrix2:
    """``g^* H g`` for a 2x2 Gaussian-rational matrix ``g``."""
    g = [[G.coerce(x) for x in row] for row in g]
    Hm = [list(r) for r in H.rows()]
    gs = [[g[j][i].conjugate() for j in range(2)] for i in range(2)]
    t = [[sum((Hm[i][k] * g[k][j] for k in range(2)), G(0)) for j in range(2)] for i in range(2)]
    r = [[sum((gs[i][k] * t[k][j] for k in range(2)), G(0)) for j in range(2)] for i in range(2)]
    return HermitianMatrix2.from_rows(r)


def pencil_discriminant(p: HermitianPencil) -> Tuple[Fraction, bool]:
    """``det(l H1 + t H2) = A l^2 + B l t + C t^2``; returns ``(B^2 - 4AC, dependent)``."""
    a1, b1, d1 = p.H1.h11, p.H1.h12, p.H1.h22
    a2, b2, d2 = p.H2.h11, p.H2.h12, p.H2.h22
    A = a1 * d1 - b1.abs2()
    C = a2 * d2 - b2.abs2()
    B = a1 * d2 + a2 * d1 - 2 * (b1 * b2.conjugate()).re
    v1, v2 = p.H1.real_vector(), p.H2.real_vector()
    dependent = all(v1[i] * v2[j] - v1[j] * v2[i] == 0 for i in range(4) for j in range(i + 1, 4))
    return B * B - 4 * A * C, dependent


def classify_pencil(p: HermitianPencil) -> PencilClass:
    disc, dep = pencil_discriminant(p)
    if dep:
        return PencilClass.DEPENDENT
    if disc > 0:
        return PencilClass.Q_PLUS
    if disc < 0:
        return PencilClass.Q_MINUS
    return PencilClass.Q_ZERO


def _H(a, b, d):
    return HermitianMatrix2(Fraction(a), G.coerce(b), Fraction(d))


def _iq(x) -> GaussianRational:
    return G(0, Fraction(x))


def probe_pair(branch: str, *params) -> HermitianPencil:
    """Published pairs at the probe points, for rational parameters.

    ``POS(mu, sigma)`` at (0, i, i mu, i sigma), ``NEG(nu, sigma)`` at
    (0, -i, i nu, i sigma), ``RHO(rho)`` at (0, 0, i, i rho) and
    ``TAU(tau)`` at (0, 0, -i, i tau); the last one is not printed and
    coincides with the RHO pair, which the jet oracle confirms.
    """
    b = branch.upper()
    if b == "POS":
        mu, sigma = (Fraction(x) for x in params)
        return HermitianPencil(
            _H(-Fraction(3, 2) * mu, _iq(1), Fraction(3, 16) * mu),
            _H(0, _iq(Fraction(9, 2) * mu), sigma / 2),
            "published",
        )
    if b == "NEG":
        nu, sigma = (Fraction(x) for x in params)
        return HermitianPencil(
            _H(Fraction(3, 2) * nu, _iq(1), Fraction(3, 16) * nu),
            _H(0, _iq(-Fraction(9, 2) * nu), sigma / 2),
            "published",
        )
    if b in ("RHO", "TAU"):
        (rho,) = (Fraction(x) for x in params)
        return HermitianPencil(_H(1, 0, 0), _H(0, _iq(3), rho / 9), "published")
    raise ValueError(f"unknown branch {branch!r}")


def levi_pair(branch: str, *params) -> HermitianPencil:
    """Exact (1,1)-parts of the orbit graph functions at the probe points."""
    b = branch.upper()
    if b == "POS":
        mu, sigma = (Fraction(x) for x in params)
        return HermitianPencil(
            _H(-Fraction(3, 2) * mu, _iq(1), Fraction(3, 16) * mu),
            _H(12 - 2 * sigma, _iq(Fraction(9, 2) * mu), sigma / 2),
            "levi",
        )
    if b == "NEG":
        nu, sigma = (Fraction(x) for x in params)
        return HermitianPencil(
            _H(Fraction(3, 2) * nu, _iq(1), Fraction(3, 16) * nu),
            _H(2 * sigma - 12, _iq(-Fraction(9, 2) * nu), sigma / 2),
            "levi",
        )
    if b in ("RHO", "TAU"):
        (rho,) = (Fraction(x) for x in params)
        return HermitianPencil(_H(1, 0, 0), _H(0, _iq(3), rho / 9), "levi")
    raise ValueError(f"unknown branch {branch!r}")


def rationalized_pair(kind: str, branch: str, square_or_cube: Fraction, sigma: Optional[Fraction] = None) -> HermitianPencil:
    """Pencil in the same class as the pair for an irrational parameter.

    For POS/NEG pass ``mu^2`` (resp. ``nu^2``), nonzero: the congruence
    ``diag(1, mu)`` followed by ``H1 / mu`` leaves only even powers.  For
    RHO/TAU pass ``rho^3``, nonzero: ``diag(1, rho^2)`` on H2 followed by
    ``H2 / rho^2`` leaves ``rho^3``.  Both operations preserve the class.
    """
    b = branch.upper()
    m2 = Fraction(square_or_cube)
    if b in ("POS", "NEG"):
        s = Fraction(sigma)
        sgn = -1 if b == "POS" else 1
        H1 = _H(sgn * Fraction(3, 2), _iq(1), Fraction(3, 16) * m2)
        if kind == "published":
            H2 = _H(0, _iq(-sgn * Fraction(9, 2) * m2), s * m2 / 2)
        else:
            H2 = _H(-sgn * (12 - 2 * s), _iq(-sgn * Fraction(9, 2) * m2), s * m2 / 2)
        return HermitianPencil(H1, H2, f"{kind}, rationalized")
    if b in ("RHO", "TAU"):
        return HermitianPencil(_H(1, 0, 0), _H(0, _iq(3), m2 / 9), f"{kind}, rationalized")
    raise ValueError(f"unknown branch {branch!r}")


def exact_hermitian_pair(s: ModelSurface) -> HermitianPencil:
    """``d^2 Phi_j / dz_a dzbar_b`` at the origin for a CR type (2,2) surface."""
    if s.cr_dim != 2 or s.codim != 2:
        raise WrongCRType(f"expected CR type (2,2), got ({s.cr_dim},{s.codim})")
    zero = {VarId(k, i): G(0) for k in ("Z", "Zbar") for i in (1, 2)}
    for j in s.w_indices:
        zero[VarId("U", j)] = G(0)
    mats = []
    for phi in s.phis:
        e = {}
        for a in (1, 2):
            for b in (1, 2):
                d = phi.diff(VarId("Z", a)).diff(VarId("Zbar", b))
                e[a, b] = d.evaluate(zero)
        mats.append(HermitianMatrix2.from_rows(((e[1, 1], e[1, 2]), (e[2, 1], e[2, 2]))))
    return HermitianPencil(mats[0], mats[1], s.label or "")
