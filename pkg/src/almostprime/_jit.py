"""Optional numba acceleration.

Set ``ALMOSTPRIME_DISABLE_JIT=1`` to force the pure-numpy kernels.  The flag is
read once, at import time.
"""

import os

_DISABLED = os.environ.get("ALMOSTPRIME_DISABLE_JIT", "").strip().lower() in {
    "1",
    "true",
    "yes",
    "on",
}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    The compiled form is returned regardless of the env flag so benchmarks can
    compare both paths in one process; dispatchers consult ``USE_NUMBA``.
    """
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
