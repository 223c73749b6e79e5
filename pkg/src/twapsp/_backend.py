"""Kernel backend selection.

The hot loops exist twice: as explicit loops compiled with numba, and as
vectorized numpy code. ``TWAPSP_BACKEND`` picks which one the algorithms
call (``numba`` by default, ``numpy`` to run without any JIT). When numba
is not importable the numpy backend is used regardless of the flag.
"""

import os

_requested = os.environ.get("TWAPSP_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"TWAPSP_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    if _requested == "numpy":
        raise ImportError
    import numba
    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def kernel(fn):
    """Compile ``fn`` in nopython mode when numba is active.

    The uncompiled function stays reachable as ``.py_func`` either way.
    """
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    fn.py_func = fn
    return fn
