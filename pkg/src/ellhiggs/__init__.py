"""Exact finite models of Higgs bundle moduli spaces over an elliptic curve."""

from .errors import DomainError, SizeError

__version__ = "0.1.0"

__all__ = ["DomainError", "SizeError", "__version__"]
