"""Exact computations with cocycle-twisted Hopf algebras.

Builds generic cocycles over rational-function fields, the generic base
algebra and Galois extension, coinvariant polynomials, and integrality
witnesses.  Everything is exact.
"""

from ._kernels import BACKEND
from .scalar import ONE, ZERO, MultiPoly, RatFunc, parse, rf

__all__ = ["BACKEND", "ONE", "ZERO", "MultiPoly", "RatFunc", "parse", "rf"]
__version__ = "0.1.0"
