"""Exact computations with weighted model surfaces of codimension three in C^4,
their automorphism group and its orbits."""

__version__ = "0.1.0"

from .kernels import BACKEND
from .polyring import GaussianRational, PolyCC, VarId, parse_gaussian, parse_poly
from .surface import ModelSurface, make_named, make_q

__all__ = [
    "__version__",
    "BACKEND",
    "GaussianRational",
    "PolyCC",
    "VarId",
    "parse_gaussian",
    "parse_poly",
    "ModelSurface",
    "make_named",
    "make_q",
]
