"""Exact arithmetic substrate: rationals, dense matrices, binary/ternary forms."""

from .matrix import RatMatrix, det, nullspace, rank, rref, solve
from .poly import HomogPoly, poly_matrix_kernel_check
from .rational import Rational, format_rational, parse_rational, to_rational

__all__ = [
    "Rational",
    "RatMatrix",
    "HomogPoly",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "det",
    "poly_matrix_kernel_check",
    "to_rational",
    "parse_rational",
    "format_rational",
]
