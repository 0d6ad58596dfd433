"""finalg: exact finite-dimensional algebra, unit groups and restricted Lie algebras."""

from .algebra import Algebra, make_matrix_algebra, make_triangular
from .fields import FieldSpec, gf, make_field, rational_function_field
from .linalg import Subspace
from .radical import radical
from .restricted import RestrictedLieAlgebra, build_u, make_restricted
from .unitgroup import UnitGroup, enumerate_units, make_gl

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "FieldSpec",
    "RestrictedLieAlgebra",
    "Subspace",
    "UnitGroup",
    "build_u",
    "enumerate_units",
    "gf",
    "make_field",
    "make_gl",
    "make_matrix_algebra",
    "make_restricted",
    "make_triangular",
    "radical",
    "rational_function_field",
]
