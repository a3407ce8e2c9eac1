"""Numerical checks of macroscopic quantization of light in linear dielectrics."""
from .fock import FockSpace, OperatorMatrix, QuantizationScheme

__all__ = ["FockSpace", "OperatorMatrix", "QuantizationScheme"]
__version__ = "0.1.0"
