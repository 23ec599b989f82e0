"""Exact first-cohomology workbench for contact vector fields on S^{1|2}."""
from .grassmann import FOURIER, LAURENT, Parity, SuperFunction
from .symbols import Symbol

__all__ = ["FOURIER", "LAURENT", "Parity", "SuperFunction", "Symbol"]
__version__ = "0.1.0"
