"""Exact Galois descent for split smooth projective toric varieties."""

__version__ = "0.1.0"
