"""Exact combinatorics of real and exotic Lagrangian tori in toric monotone manifolds."""
from .errors import RealToriError

__version__ = "0.1.0"
__all__ = ["RealToriError", "__version__"]
