"""Exact arithmetic: prime fields, weighted polynomials, graded matrices,
dense linear algebra mod p and binary forms."""
from .field import DEFAULT_PRIME, FieldElement, inv, is_prime, is_square, signed
from .poly import (A_NAMES, PolyRing, WPoly, format_poly, parse_poly, ring_S, ring_Sa,
                   ring_T, ring_binary)
from .matrix import GradedMatrix, block, from_rows, identity, matmul
from .linalg import (kernel_basis, left_kernel_basis, matmul_mod, rank, rref, row_space,
                     solve)
from .binary import BinaryRoots, binary_form_roots, bf_roots

__all__ = [
    "DEFAULT_PRIME", "FieldElement", "inv", "is_prime", "is_square", "signed",
    "A_NAMES", "PolyRing", "WPoly", "format_poly", "parse_poly", "ring_S", "ring_Sa",
    "ring_T", "ring_binary", "GradedMatrix", "block", "from_rows", "identity", "matmul",
    "kernel_basis", "left_kernel_basis", "matmul_mod", "rank", "rref", "row_space", "solve",
    "BinaryRoots", "binary_form_roots", "bf_roots",
]
