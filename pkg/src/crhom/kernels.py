"""Kernel selection.

The compiled extension is used when it was built and ``CRHOM_PURE`` is not
set; otherwise the pure-Python module is used.  Both expose ``mono_mul``,
``poly_mul``, ``poly_add`` and ``rref`` with identical semantics.
"""

import os

from . import _kernels_py

if os.environ.get("CRHOM_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_c as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
mono_mul = _impl.mono_mul
poly_mul = _impl.poly_mul
poly_add = _impl.poly_add
rref = _impl.rref

__all__ = ["BACKEND", "mono_mul", "poly_mul", "poly_add", "rref"]
