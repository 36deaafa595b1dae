"""Dense linear-algebra kernels used throughout linspect."""
from ._checks import EPS
from .eig import eigenvalues
from .expm import expm
from .solve import complex_solve, solve
from .svd import singular_values

__all__ = ["EPS", "eigenvalues", "expm", "complex_solve", "solve",
           "singular_values"]
