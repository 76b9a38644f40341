"""Exact Gaussian-rational polynomials in z, zbar, u, w, wbar.

Every coefficient is a :class:`GaussianRational`; every polynomial is a
:class:`PolyCC` whose variables are :class:`VarId` values.  ``conjugate``
swaps ``Z <-> Zbar`` and ``W <-> Wbar`` and fixes the real variables ``U``.
All variables are treated as formally independent, so ``diff`` is the
Wirtinger derivative.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, Mapping, NamedTuple, Tuple, Union

from . import kernels

__all__ = [
    "GaussianRational",
    "VarId",
    "PolyCC",
    "Grading",
    "ConjugationMismatch",
    "ParseError",
    "parse_poly",
    "parse_gaussian",
    "gr",
    "var",
    "I",
]


class ConjugationMismatch(ValueError):
    """Substitution bindings do not commute with the bar involution."""


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussianRational:
    """Exact number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            self.re, self.im = re.re, re.im
            return
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; pass Fraction or int")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _make(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational._make(Fraction(x), Fraction(0))
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianRational")

    # arithmetic
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                if not d:
                    return GaussianRational._make(a * c, b)
                return GaussianRational._make(a * c, a * d)
            if not d:
                return GaussianRational._make(a * c, b * c)
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational._make(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (1 / self) ** (-n)
        out = GaussianRational._make(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_gaussian(self)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(c: GaussianRational, compact: bool = False) -> str:
    """Text form; ``compact`` gives the CLI literal style ``3/2-1/4I``."""
    unit = "I" if compact else "*I"
    if not c.im:
        return _fmt_frac(c.re)
    im = _fmt_frac(abs(c.im)) + unit
    if not c.re:
        return ("-" if c.im < 0 else "") + im
    sign = "-" if c.im < 0 else "+"
    body = f"{_fmt_frac(c.re)}{sign}{im}"
    return body if compact else f"({body})"


_GAUSS_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?"
    r"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?[Ii])?\s*$"
)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse a CLI literal such as ``3/2-1/4I``, ``2I``, ``-I`` or ``7``."""
    m = _GAUSS_RE.match(text)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ParseError(f"not a Gaussian-rational literal: {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = m.group("im")
    if im_txt == "" and m.group("re") is not None:
        # "2I": the only number is the imaginary part
        return GaussianRational._make(Fraction(0), re_part)
    if im_txt is None:
        im_part = Fraction(0)
    elif im_txt in ("", "+"):
        im_part = Fraction(1)
    elif im_txt == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_txt)
    return GaussianRational._make(re_part, im_part)


def gr(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


I = GaussianRational(0, 1)
_ONE = GaussianRational(1)


# ---------------------------------------------------------------------------
# variables

_KIND_RANK = {"Z": 1, "Zbar": 2, "U": 3, "W": 4, "Wbar": 5}
_RANK_KIND = {v: k for k, v in _KIND_RANK.items()}
_CONJ_KIND = {"Z": "Zbar", "Zbar": "Z", "U": "U", "W": "Wbar", "Wbar": "W"}
_NAME = {"Z": "z", "Zbar": "zb", "U": "u", "W": "w", "Wbar": "wb"}


class VarId(NamedTuple):
    kind: str
    index: int

    @property
    def code(self) -> int:
        return _KIND_RANK[self.kind] * 1000 + self.index

    @staticmethod
    def from_code(code: int) -> "VarId":
        return VarId(_RANK_KIND[code // 1000], code % 1000)

    def conj(self) -> "VarId":
        return VarId(_CONJ_KIND[self.kind], self.index)

    @property
    def name(self) -> str:
        return f"{_NAME[self.kind]}{self.index}"

    def __str__(self):
        return self.name


def _conj_code(code: int) -> int:
    r = code // 1000
    if r == 1:
        return code + 1000
    if r == 2:
        return code - 1000
    if r == 4:
        return code + 1000
    if r == 5:
        return code - 1000
    return code


def conj_mono(m: tuple) -> tuple:
    return tuple(sorted(_conj_code(c) for c in m))


class Grading:
    """Positive integer weight per variable.

    Defaults: ``z``/``zbar`` have weight 1 and ``u_j``/``w_j``/``wbar_j``
    have weight ``j``.  ``overrides`` maps a VarId (or its conjugate) to a
    weight; conjugate variables always share a weight.
    """

    def __init__(self, overrides: Mapping[VarId, int] | None = None):
        self._w: Dict[int, int] = {}
        for v, w in (overrides or {}).items():
            if w <= 0:
                raise ValueError("weights must be positive")
            self._w[v.code] = w
            self._w[v.conj().code] = w

    def weight(self, code: int) -> int:
        w = self._w.get(code)
        if w is not None:
            return w
        r = code // 1000
        if r <= 2:
            return 1
        return code % 1000

    def mono_weight(self, m: tuple) -> int:
        return sum(self.weight(c) for c in m)

    def __repr__(self):
        items = ", ".join(f"{VarId.from_code(c)}:{w}" for c, w in sorted(self._w.items()))
        return f"Grading({items})"


DEFAULT_GRADING = Grading()


# ---------------------------------------------------------------------------
# polynomials

Scalar = Union[int, Fraction, GaussianRational]


class PolyCC:
    """Immutable sparse polynomial with Gaussian-rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, GaussianRational] | None = None):
        self.terms: Dict[tuple, GaussianRational] = dict(terms) if terms else {}
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "PolyCC":
        c = GaussianRational.coerce(c)
        return cls._wrap({(): c} if c else {})

    @classmethod
    def var(cls, v: VarId) -> "PolyCC":
        return cls._wrap({(v.code,): _ONE})

    @classmethod
    def monomial(cls, exps: Mapping[VarId, int], coeff: Scalar = 1) -> "PolyCC":
        codes = []
        for v, e in exps.items():
            codes.extend([v.code] * e)
        c = GaussianRational.coerce(coeff)
        return cls._wrap({tuple(sorted(codes)): c} if c else {})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((), GaussianRational._make(Fraction(0), Fraction(0)))

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def variables(self) -> set:
        return {VarId.from_code(c) for m in self.terms for c in m}

    def coefficient(self, exps: Mapping[VarId, int]) -> GaussianRational:
        codes = []
        for v, e in exps.items():
            codes.extend([v.code] * e)
        return self.terms.get(tuple(sorted(codes)), GaussianRational(0))

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, PolyCC):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return PolyCC.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyCC._wrap(kernels.poly_add(self.terms, o.terms))

    __radd__ = __add__

    def __neg__(self):
        return PolyCC._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PolyCC._wrap(kernels.poly_add(self.terms, o.terms, GaussianRational._make(Fraction(-1), Fraction(0))))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            if not c:
                return PolyCC()
            return PolyCC._wrap({m: v * c for m, v in self.terms.items()})
        if isinstance(other, PolyCC):
            return PolyCC._wrap(kernels.poly_mul(self.terms, other.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * (1 / GaussianRational.coerce(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = PolyCC.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, PolyCC) else other
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # involution and reality
    def conjugate(self) -> "PolyCC":
        return PolyCC._wrap({conj_mono(m): c.conjugate() for m, c in self.terms.items()})

    def is_real(self) -> bool:
        for m, c in self.terms.items():
            cm = conj_mono(m)
            other = self.terms.get(cm)
            if other is None or other != c.conjugate():
                return False
        return True

    def real_part(self) -> "PolyCC":
        return (self + self.conjugate()) * Fraction(1, 2)

    def imag_part(self) -> "PolyCC":
        return (self - self.conjugate()) * GaussianRational(0, Fraction(-1, 2))

    # calculus
    def diff(self, v: VarId, times: int = 1) -> "PolyCC":
        """Formal partial derivative, all variables independent."""
        out = self
        code = v.code
        for _ in range(times):
            terms = {}
            for m, c in out.terms.items():
                k = m.count(code)
                if not k:
                    continue
                i = m.index(code)
                nm = m[:i] + m[i + 1:]
                prev = terms.get(nm)
                val = c * k
                terms[nm] = val if prev is None else prev + val
            out = PolyCC._wrap({m: c for m, c in terms.items() if c})
        return out

    wirtinger = diff

    def substitute(self, bindings: Mapping[VarId, "PolyCC | Scalar"]) -> "PolyCC":
        """Ring homomorphism sending each bound variable to its image."""
        bind: Dict[int, PolyCC] = {}
        for v, p in bindings.items():
            bind[v.code] = p if isinstance(p, PolyCC) else PolyCC.const(p)
        for v in list(bindings):
            cv = v.conj()
            if cv != v and cv in bindings and v.kind in ("Z", "W"):
                if bind[cv.code] != bind[v.code].conjugate():
                    raise ConjugationMismatch(f"binding of {cv} is not the conjugate of binding of {v}")
        if not bind:
            return self
        cache: Dict[Tuple[int, int], PolyCC] = {}

        def power(code, e):
            key = (code, e)
            p = cache.get(key)
            if p is None:
                p = bind[code] if e == 1 else power(code, e - 1) * bind[code]
                cache[key] = p
            return p

        acc: Dict[tuple, GaussianRational] = {}
        for m, c in self.terms.items():
            free = []
            bound = Counter()
            for code in m:
                if code in bind:
                    bound[code] += 1
                else:
                    free.append(code)
            term = {tuple(free): c}
            for code, e in bound.items():
                term = kernels.poly_mul(term, power(code, e).terms)
                if not term:
                    break
            if term:
                acc = kernels.poly_add(acc, term)
        return PolyCC._wrap(acc)

    def evaluate(self, values: Mapping[VarId, Scalar]) -> GaussianRational:
        """Exact value; every variable present must be bound."""
        vals = {v.code: GaussianRational.coerce(x) for v, x in values.items()}
        total = GaussianRational(0)
        for m, c in self.terms.items():
            t = c
            for code in m:
                try:
                    t = t * vals[code]
                except KeyError:
                    raise KeyError(f"no value for {VarId.from_code(code)}") from None
            total = total + t
        return total

    # grading
    def weight_components(self, grading: Grading = DEFAULT_GRADING):
        parts: Dict[int, Dict[tuple, GaussianRational]] = {}
        for m, c in self.terms.items():
            parts.setdefault(grading.mono_weight(m), {})[m] = c
        return [(w, PolyCC._wrap(parts[w])) for w in sorted(parts)]

    def truncate(self, max_weight: int, grading: Grading = DEFAULT_GRADING) -> "PolyCC":
        return PolyCC._wrap({m: c for m, c in self.terms.items() if grading.mono_weight(m) <= max_weight})

    def min_weight(self, grading: Grading = DEFAULT_GRADING):
        return min((grading.mono_weight(m) for m in self.terms), default=None)

    def is_homogeneous(self, weight: int, grading: Grading = DEFAULT_GRADING) -> bool:
        return all(grading.mono_weight(m) == weight for m in self.terms)

    def bidegree_part(self, holo: int, anti: int, n: int | None = None) -> "PolyCC":
        """Terms of degree ``holo`` in the z's and ``anti`` in the zbar's."""
        out = {}
        for m, c in self.terms.items():
            h = sum(1 for code in m if code // 1000 == 1)
            a = sum(1 for code in m if code // 1000 == 2)
            if h == holo and a == anti:
                out[m] = c
        return PolyCC._wrap(out)

    # text
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = _mono_text(m)
            neg = False
            cc = c
            if not c.im and c.re < 0:
                neg, cc = True, -c
            elif not c.re and c.im < 0:
                neg, cc = True, -c
            if mono and cc == 1:
                body = mono
            elif mono:
                body = f"{format_gaussian(cc)}*{mono}"
            else:
                body = format_gaussian(cc)
            pieces.append(("-" if neg else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, b in pieces[1:]:
            out += f" {s} {b}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"PolyCC({self.to_text()})"


def _mono_text(m: tuple) -> str:
    parts = []
    for code, e in sorted(Counter(m).items()):
        name = VarId.from_code(code).name
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def var(kind: str, index: int = 1) -> PolyCC:
    return PolyCC.var(VarId(kind, index))


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^(),]))")
_VAR_RE = re.compile(r"^(zb|z|u|wb|w)(\d*)$")
_VAR_KIND = {"z": "Z", "zb": "Zbar", "u": "U", "w": "W", "wb": "Wbar"}


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            tok = m.group(3)
            out.append(("op", "^" if tok == "**" else tok))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        self.take("end")
        return p

    def expr(self):
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            if op == "*":
                p = p * f
            else:
                if f.degree() > 0 or f.is_zero():
                    raise ParseError("division only by nonzero constants")
                p = p / f.constant_term()
        return p

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            e = self.take("num")[1]
            base = base ** e
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return PolyCC.const(val)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            self.take("op", ")")
            return p
        if kind == "name":
            self.take()
            if val == "I":
                return PolyCC.const(I)
            if val in ("conj", "Re", "Im"):
                self.take("op", "(")
                p = self.expr()
                self.take("op", ")")
                if val == "conj":
                    return p.conjugate()
                if val == "Re":
                    return p.real_part()
                return p.imag_part()
            m = _VAR_RE.match(val)
            if m:
                idx = int(m.group(2)) if m.group(2) else 1
                if idx <= 0:
                    raise ParseError(f"bad variable index in {val!r}")
                return PolyCC.var(VarId(_VAR_KIND[m.group(1)], idx))
            raise ParseError(f"unknown name {val!r}")
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str) -> PolyCC:
    """Parse the polynomial text syntax (``z1``, ``zb1``, ``u2``, ``w3``, ``I``,
    ``conj(..)``, ``Re(..)``, ``Im(..)``, ``+ - * / ^``)."""
    return _Parser(text).parse()


def symbols(*names: str) -> Tuple[PolyCC, ...]:
    return tuple(parse_poly(n) for n in names)


def iter_monomials(codes: Iterable[int], degree: int):
    """All multisets of ``codes`` of the given size, as sorted tuples."""
    codes = sorted(codes)

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for k in range(start, len(codes)):
            for rest in rec(k, left - 1):
                yield (codes[k],) + rest

    yield from rec(0, degree)
