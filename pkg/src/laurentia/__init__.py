"""Exact computations with graded Laurentian algebras and their highest weight theory."""
from .laurent import INF, LaurentPoly, q
from .exactlin import Field, QQ
from .galgebra import (GradedAlgebra, QuiverPresentation, TableAlgebra, from_quiver, from_table,
                       involution_from_generators, multiply, peirce_dims)
from .gmodule import GradedModule, projective, simple
from .strat import OrderSpec, Stratification, ext_against_finite
from .inputfile import parse_file, parse_text
from .corpus import load_example

__all__ = [
    "INF", "LaurentPoly", "q", "Field", "QQ", "GradedAlgebra", "QuiverPresentation",
    "TableAlgebra", "from_quiver", "from_table", "involution_from_generators", "multiply",
    "peirce_dims", "GradedModule", "projective", "simple", "OrderSpec", "Stratification",
    "ext_against_finite", "parse_file", "parse_text", "load_example",
]
