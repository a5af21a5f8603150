"""Normal-ordered Weyl-algebra calculus and quantum point transformations."""

from .kernels import BACKEND
from .ncalg import AlgebraError, AlgebraSpec, NCPoly, constant_algebra, free_algebra, nc_mul, normalize, weyl_algebra
from .scalars import Scalar, ScalarContext, ScalarError, plain_context, polar_context

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AlgebraError",
    "AlgebraSpec",
    "NCPoly",
    "Scalar",
    "ScalarContext",
    "ScalarError",
    "constant_algebra",
    "free_algebra",
    "nc_mul",
    "normalize",
    "plain_context",
    "polar_context",
    "weyl_algebra",
]
