"""Exact scalars, polynomials and sparse linear algebra."""

from .field import QQ, FieldSpec, Scalar, is_prime
from .linalg import SparseMatrix, analyze, kernel_rank, rank, rref, solve
from .poly import Poly, parse_poly, poly_divmod, poly_gcd_monic, quot_f, rem_f

__all__ = [
    "QQ",
    "FieldSpec",
    "Scalar",
    "is_prime",
    "SparseMatrix",
    "analyze",
    "kernel_rank",
    "rank",
    "rref",
    "solve",
    "Poly",
    "parse_poly",
    "poly_divmod",
    "poly_gcd_monic",
    "quot_f",
    "rem_f",
]
