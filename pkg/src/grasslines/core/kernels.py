"""Selects the modular elimination kernel: compiled if built, numpy otherwise."""

try:
    from ._kernels import rref_mod_p

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._kernels_fallback import rref_mod_p

    BACKEND = "numpy"

__all__ = ["rref_mod_p", "BACKEND"]
