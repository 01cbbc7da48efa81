"""Row reduction kernels over prime fields.

This is the hot loop of the whole library: every ideal image, membership
test, subspace sum and intersection funnels into a reduced row echelon
computation on an int64 matrix with entries in [0, p).  Two interchangeable
implementations are provided:

* a numba @njit kernel (default when numba imports), and
* a vectorized numpy fallback.

Set IDFILT_NO_NUMBA=1 to force the numpy path; benchmarks/bench_rref.py
compares the two.  Entries stay below p <= a few thousand, so int64 products
never overflow.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("IDFILT_NO_NUMBA", "") not in ("", "0")

try:  # pragma: no cover - exercised indirectly
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True)
def _inv_mod(a, p):  # Fermat inverse; p prime, a != 0 mod p
    out = 1
    base = a % p
    e = p - 2
    while e:
        if e & 1:
            out = (out * base) % p
        base = (base * base) % p
        e >>= 1
    return out


@njit(cache=True)
def _rref_numba(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        pr = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                pr = i
                break
        if pr == -1:
            continue
        if pr != r:
            for j in range(c, cols):
                tmp = a[r, j]
                a[r, j] = a[pr, j]
                a[pr, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
        if r == rows:
            break
    return a[:r], pivots[:npiv]


def _rref_numpy(a, p):
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + nz[0]
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], np.asarray(pivots, dtype=np.int64)


@njit(cache=True)
def _reduce_numba(rows, pivots, v, p):
    out = v % p
    for k in range(pivots.shape[0]):
        c = pivots[k]
        f = out[c]
        if f != 0:
            for j in range(rows.shape[1]):
                out[j] = (out[j] - f * rows[k, j]) % p
    return out


def _reduce_numpy(rows, pivots, v, p):
    out = v % p
    for k, c in enumerate(pivots):
        f = out[c]
        if f:
            out = (out - f * rows[k]) % p
    return out


def rref_mod_p(mat: np.ndarray, p: int):
    """Reduced row echelon form of mat over F_p.

    Consumes mat (int64, entries reduced mod p).  Returns (rows, pivots)
    with unit pivot columns, zero rows dropped.
    """
    a = np.ascontiguousarray(mat, dtype=np.int64)
    if a.size == 0 or a.shape[0] == 0:
        return a[:0], np.empty(0, dtype=np.int64)
    if HAVE_NUMBA:
        return _rref_numba(a, p)
    return _rref_numpy(a, p)


def reduce_mod_p(rows: np.ndarray, pivots: np.ndarray, v: np.ndarray, p: int):
    """Residue of vector v modulo the row space of an RREF basis."""
    v = np.ascontiguousarray(v, dtype=np.int64)
    if len(pivots) == 0:
        return v % p
    if HAVE_NUMBA:
        return _reduce_numba(rows, pivots, v.copy(), p)
    return _reduce_numpy(rows, pivots, v, p)


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
