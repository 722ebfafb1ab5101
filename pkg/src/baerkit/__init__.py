"""Exact computational toolkit for annihilator conditions on finite rings
and their bounded polynomial-type extensions."""

from .ring import (
    AxiomViolation,
    ElementSet,
    FiniteRing,
    OrderCapExceeded,
    StructuralError,
    validate_axioms,
)
from .construct import (
    make_field,
    make_matrix,
    make_product,
    make_quotient,
    make_skew_triangular,
    make_upper_triangular,
    make_zmod,
)
# the classifier lives in the `classify` submodule; re-exporting its entry
# point here would shadow the submodule name
from .classify import cp_baer_equivalences, is_right_cp_baer

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation", "ElementSet", "FiniteRing", "OrderCapExceeded",
    "StructuralError", "validate_axioms",
    "make_field", "make_matrix", "make_product", "make_quotient",
    "make_skew_triangular", "make_upper_triangular", "make_zmod",
    "cp_baer_equivalences", "is_right_cp_baer",
    "__version__",
]
