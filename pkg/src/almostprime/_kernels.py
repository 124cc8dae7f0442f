"""Hot loops for the prime backend, each in a numba and a numpy flavour.

The public names at the bottom (``mark_segment``, ``lucy_tables``) dispatch on
``_jit.USE_NUMBA``.  Both flavours must return identical arrays.
"""

from math import isqrt

import numpy as np

from . import _jit


def _mark_segment_py(lo, hi, base_primes):
    # is_prime flags for lo <= n < hi; base_primes must cover isqrt(hi - 1).
    seg = np.ones(hi - lo, dtype=np.bool_)
    for j in range(base_primes.shape[0]):
        p = base_primes[j]
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        for m in range(start, hi, p):
            seg[m - lo] = False
    for n in range(lo, min(hi, 2)):
        seg[n - lo] = False
    return seg


def mark_segment_numpy(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    seg = np.ones(hi - lo, dtype=np.bool_)
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        seg[start - lo :: p] = False
    seg[: max(0, min(hi, 2) - lo)] = False
    return seg


mark_segment_numba = _jit.njit(_mark_segment_py)


def _lucy_py(x, small, large):
    # In place.  On entry small[v] = v - 1 (v >= 1), large[i] = x // i - 1.
    # On exit small[v] = pi(v) for v <= r and large[i] = pi(x // i) for i <= r.
    r = small.shape[0] - 1
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        imax = min(r, x // p2)
        split = min(imax, r // p)
        for i in range(1, split + 1):
            large[i] -= large[i * p] - sp
        for i in range(split + 1, imax + 1):
            large[i] -= small[x // (i * p)] - sp
        for v in range(r, p2 - 1, -1):
            small[v] -= small[v // p] - sp


_lucy_numba = _jit.njit(_lucy_py)


def _lucy_init(x: int):
    r = isqrt(x)
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    large = np.zeros(r + 1, dtype=np.int64)
    large[1:] = x // np.arange(1, r + 1, dtype=np.int64) - 1
    return small, large


def lucy_tables_numpy(x: int) -> tuple[np.ndarray, np.ndarray]:
    small, large = _lucy_init(x)
    r = small.shape[0] - 1
    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        sp = small[p - 1]
        p2 = p * p
        imax = min(r, x // p2)
        split = min(imax, r // p)
        # Right-hand sides are evaluated before assignment, which matches the
        # sequential order: every read sees this round's pre-update value.
        large[1 : split + 1] -= large[p : split * p + 1 : p] - sp
        if imax > split:
            i = np.arange(split + 1, imax + 1, dtype=np.int64)
            large[split + 1 : imax + 1] -= small[x // (i * p)] - sp
        if p2 <= r:
            v = np.arange(p2, r + 1, dtype=np.int64)
            small[p2:] -= small[v // p] - sp
    return small, large


def lucy_tables_numba(x: int) -> tuple[np.ndarray, np.ndarray]:
    small, large = _lucy_init(x)
    _lucy_numba(np.int64(x), small, large)
    return small, large


def mark_segment(lo: int, hi: int, base_primes: np.ndarray) -> np.ndarray:
    if _jit.USE_NUMBA:
        return mark_segment_numba(lo, hi, base_primes)
    return mark_segment_numpy(lo, hi, base_primes)


def lucy_tables(x: int) -> tuple[np.ndarray, np.ndarray]:
    """Prime counts at every value ``x // n``: ``(small, large)`` arrays.

    ``small[v] = pi(v)`` for ``v <= isqrt(x)``; ``large[i] = pi(x // i)`` for
    ``1 <= i <= isqrt(x)``.  Runs in O(x^(3/4)) time and O(sqrt(x)) memory.
    """
    if _jit.USE_NUMBA:
        return lucy_tables_numba(x)
    return lucy_tables_numpy(x)
