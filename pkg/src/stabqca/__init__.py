"""Exact algebra for qudit stabilizer models and QCA certificates on cubic lattices."""

from stabqca.laurent import LaurentPoly, SympVec, SympMatrix, symplectic_form

__all__ = ["LaurentPoly", "SympVec", "SympMatrix", "symplectic_form"]

__version__ = "0.1.0"
