"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it has
not been built. ``BACKEND`` names the active one.
"""
try:
    from bohrkit import _kernels as kernels

    BACKEND = "cython"
except ImportError:  # extension not built
    from bohrkit import _fallback as kernels

    BACKEND = "numpy"

__all__ = ["kernels", "BACKEND"]
