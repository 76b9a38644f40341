"""Pure-Python hot kernels.

Monomials are sorted tuples of integer variable codes with repetition
(``z1**2 * zb1`` is ``(1001, 1001, 2001)``); polynomials are plain dicts
mapping monomials to coefficient objects supporting ``+`` and ``*``.
The compiled twin in ``_kernels_c.pyx`` implements the same functions.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        if a[i] <= b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return tuple(out)


def poly_mul(pa, pb):
    """Product of two term dicts; zero coefficients are dropped."""
    out = {}
    get = out.get
    for ma, ca in pa.items():
        for mb, cb in pb.items():
            m = mono_mul(ma, mb)
            prev = get(m)
            c = ca * cb
            out[m] = c if prev is None else prev + c
    return {m: c for m, c in out.items() if c}


def poly_add(pa, pb, scale=None):
    """``pa + scale * pb`` as a new term dict."""
    out = dict(pa)
    for m, c in pb.items():
        if scale is not None:
            c = c * scale
        prev = out.get(m)
        if prev is None:
            out[m] = c
        else:
            s = prev + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _row_to_ints(row):
    den = 1
    for v in row:
        if v:
            d = v.denominator
            den = den * d // gcd(den, d)
    return [int(v * den) for v in row]


def _normalize(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref(rows, ncols):
    """Reduced row echelon form of a rational matrix.

    Elimination runs on integer rows with gcd normalisation; the result
    is returned as Fraction rows (pivot entries equal to 1) together with
    the list of pivot columns.
    """
    work = [_normalize(_row_to_ints(r)) for r in rows]
    work = [r for r in work if any(r)]
    pivots = []
    prow = 0
    nrows = len(work)
    for col in range(ncols):
        if prow >= nrows:
            break
        sel = -1
        best = None
        for r in range(prow, nrows):
            v = work[r][col]
            if v:
                a = abs(v)
                if best is None or a < best:
                    best, sel = a, r
                    if a == 1:
                        break
        if sel < 0:
            continue
        work[prow], work[sel] = work[sel], work[prow]
        piv = work[prow]
        pv = piv[col]
        for r in range(nrows):
            if r == prow:
                continue
            row = work[r]
            f = row[col]
            if f:
                work[r] = _normalize([pv * x - f * y for x, y in zip(row, piv)])
        pivots.append(col)
        prow += 1
    out = []
    for i, col in enumerate(pivots):
        row = work[i]
        pv = row[col]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots
