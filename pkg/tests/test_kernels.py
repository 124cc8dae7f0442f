import numpy as np
import pytest

from almostprime import _jit, _kernels

needs_numba = pytest.mark.skipif(not _jit.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("lo, hi", [(0, 2), (0, 100), (97, 1000), (10**6, 10**6 + 5000)])
def test_segment_flavours_agree(lo, hi):
    from almostprime.backend import sieve_primes

    base = sieve_primes(1100).primes
    assert np.array_equal(
        _kernels.mark_segment_numba(lo, hi, base),
        _kernels.mark_segment_numpy(lo, hi, base),
    )


@needs_numba
@pytest.mark.parametrize("x", [1, 2, 3, 4, 8, 9, 24, 25, 26, 99, 10**4, 999_999, 10**7 + 19])
def test_lucy_flavours_agree(x):
    a_small, a_large = _kernels.lucy_tables_numba(x)
    b_small, b_large = _kernels.lucy_tables_numpy(x)
    assert np.array_equal(a_small, b_small)
    assert np.array_equal(a_large, b_large)


def test_lucy_matches_definition():
    from conftest import trial_is_prime

    x = 5000
    small, large = _kernels.lucy_tables(x)
    pi = np.cumsum([trial_is_prime(n) for n in range(x + 1)])
    assert all(small[v] == pi[v] for v in range(len(small)))
    assert all(large[i] == pi[x // i] for i in range(1, len(large)))


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("0", str(_jit.HAVE_NUMBA))])
def test_env_flag_selects_path(flag, expected):
    import os
    import subprocess
    import sys

    env = dict(os.environ, ALMOSTPRIME_DISABLE_JIT=flag)
    proc = subprocess.run(
        [sys.executable, "-c", "from almostprime import _jit; print(_jit.USE_NUMBA)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert proc.stdout.strip() == expected
