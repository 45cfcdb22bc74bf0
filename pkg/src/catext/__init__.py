"""Exact computation with category algebras and their spectral sequences."""

from .exactlin import FieldSpec, Matrix

__all__ = ["FieldSpec", "Matrix"]
__version__ = "0.1.0"
