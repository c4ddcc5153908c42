"""Bohr-type radii for analytic self-maps of the unit disk."""
from bohrkit._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
