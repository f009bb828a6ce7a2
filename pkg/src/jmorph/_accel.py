"""Numba switch for the transducer kernels.

Set ``JMORPH_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
"""
import os

DISABLE_NUMBA = os.environ.get("JMORPH_DISABLE_NUMBA", "0").lower() in ("1", "true", "yes")
CACHE_NUMBA = os.environ.get("JMORPH_NUMBA_CACHE", "1").lower() in ("1", "true", "yes")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and not DISABLE_NUMBA


def jit(func):
    if USE_NUMBA:
        return numba.njit(cache=CACHE_NUMBA)(func)
    return func


def py_func(kernel):
    """Return the uncompiled Python body of a kernel."""
    return getattr(kernel, "py_func", kernel)
