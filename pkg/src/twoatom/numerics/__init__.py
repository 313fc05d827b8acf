"""Self-contained small-matrix kernel: Hermitian eigensystems, matrix square
roots, pivoted linear solves and an adaptive Runge-Kutta integrator."""

from .linalg import hermitian_eigensystem, hermitian_sqrt, linear_solve
from .ode import OdeSolution, integrate_adaptive

__all__ = [
    "OdeSolution",
    "hermitian_eigensystem",
    "hermitian_sqrt",
    "integrate_adaptive",
    "linear_solve",
]
