"""Cyclotomic specializations of equivariant K-theory: exact verification tools."""

from .cyclotomic import Cyclotomic, classify_unit_vector

__all__ = ["Cyclotomic", "classify_unit_vector"]
__version__ = "0.1.0"
