"""Optional numba acceleration.

Set ``TIBASAP_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable.
"""

import os

_DISABLED = os.environ.get("TIBASAP_DISABLE_NUMBA", "").strip().lower() in (
    "1", "true", "yes", "on")

try:
    from numba import njit as _numba_njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba_njit = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` with numba when available, else return it untouched.

    The uncompiled function is kept on ``func.py_func`` either way so tests
    can run the loop version without the JIT.
    """
    if not HAVE_NUMBA:
        func.py_func = func
        return func
    return _numba_njit(cache=True, nogil=True)(func)
