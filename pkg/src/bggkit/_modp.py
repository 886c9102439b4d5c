"""Gaussian elimination over GF(p) on int64 arrays.

This is the prime-field shadow used to cross-check exact ranks.  The kernel
is compiled with numba when available; set ``BGGKIT_NO_JIT=1`` to force the
pure-numpy path.  Entries must lie in ``[0, p)`` with ``p < 2**31`` so that
products fit in int64.
"""

import os

import numpy as np

USE_JIT = os.environ.get("BGGKIT_NO_JIT", "").strip() not in ("1", "true", "yes")

try:
    if not USE_JIT:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


def _inv_mod(a, p):
    # Fermat; p prime
    result = 1
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


_inv_mod_jit = njit(cache=True)(_inv_mod)


@njit(cache=True)
def _rank_kernel(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(cols):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _inv_mod_jit(a[r, c], p)
        for k in range(c, cols):
            a[r, k] = a[r, k] * inv % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f != 0:
                for k in range(c, cols):
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
        r += 1
    return r


def _rank_numpy(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = a[r, c:] * _inv_mod(int(a[r, c]), p) % p
        f = a[r + 1:, c].copy()
        a[r + 1:, c:] = (a[r + 1:, c:] - np.outer(f, a[r, c:])) % p
        r += 1
    return r


def rank_mod_p(a: np.ndarray, p: int, jit: bool | None = None) -> int:
    """Rank of an int64 matrix over GF(p); ``a`` is not modified."""
    work = np.ascontiguousarray(a, dtype=np.int64) % p
    if jit is None:
        jit = HAVE_NUMBA
    if jit and HAVE_NUMBA:
        return int(_rank_kernel(work, p))
    return _rank_numpy(work, p)
