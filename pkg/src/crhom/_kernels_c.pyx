# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same functions, same results."""

from fractions import Fraction
from math import gcd

BACKEND = "cython"


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), i = 0, j = 0, k = 0
    cdef long x, y
    if na == 0:
        return b
    if nb == 0:
        return a
    out = [0] * (na + nb)
    while i < na and j < nb:
        x = a[i]
        y = b[j]
        if x <= y:
            out[k] = x
            i += 1
        else:
            out[k] = y
            j += 1
        k += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return tuple(out)


cpdef dict poly_mul(dict pa, dict pb):
    cdef dict out = {}
    cdef tuple ma, mb, m
    for ma, ca in pa.items():
        for mb, cb in pb.items():
            m = mono_mul(ma, mb)
            c = ca * cb
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                out[m] = prev + c
    return {m: c for m, c in out.items() if c}


cpdef dict poly_add(dict pa, dict pb, scale=None):
    cdef dict out = dict(pa)
    cdef tuple m
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


cdef list _row_to_ints(list row):
    den = 1
    for v in row:
        if v:
            d = v.denominator
            den = den * d // gcd(den, d)
    return [int(v * den) for v in row]


cdef list _normalize(list row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref(rows, Py_ssize_t ncols):
    cdef list work = [_normalize(_row_to_ints(list(rw))) for rw in rows]
    cdef list pivots = []
    cdef Py_ssize_t prow = 0, nrows, col, r, sel, i, c
    cdef list piv, row
    work = [r_ for r_ in work if any(r_)]
    nrows = len(work)
    for col in range(ncols):
        if prow >= nrows:
            break
        sel = -1
        best = None
        for r in range(prow, nrows):
            v = (<list>work[r])[col]
            if v:
                a = abs(v)
                if best is None or a < best:
                    best = a
                    sel = r
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
                new = [0] * ncols
                for c in range(ncols):
                    new[c] = pv * row[c] - f * piv[c]
                work[r] = _normalize(new)
        pivots.append(col)
        prow += 1
    out = []
    for i in range(len(pivots)):
        row = work[i]
        pv = row[pivots[i]]
        out.append([Fraction(x, pv) for x in row])
    return out, pivots
