"""Exact integer, rational and finite-field linear algebra."""

from .finfield import GF, GFElem, embed, get_field
from .intmat import (
    SmithForm,
    det,
    hermite_rows,
    integer_kernel,
    matmul,
    smith_normal_form,
    transpose,
)
from .lattice import (
    Lattice,
    lattice_intersect,
    lattice_saturate,
    lattice_sum,
    orthogonal_lattice,
    quotient_invariants,
)
from .spectra import EigenCharacter, MinPoly, reduce_character, simultaneous_spectra

__all__ = [
    "GF",
    "GFElem",
    "EigenCharacter",
    "Lattice",
    "MinPoly",
    "SmithForm",
    "det",
    "embed",
    "get_field",
    "hermite_rows",
    "integer_kernel",
    "lattice_intersect",
    "lattice_saturate",
    "lattice_sum",
    "matmul",
    "orthogonal_lattice",
    "quotient_invariants",
    "reduce_character",
    "simultaneous_spectra",
    "smith_normal_form",
    "transpose",
]
