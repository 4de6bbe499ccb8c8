"""Exact certification kernel for the Lie-algebraic computations behind
cohomological period arguments on GSp(4)."""

__version__ = "0.1.0"
