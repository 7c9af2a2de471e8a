"""Numba kernels (default backend when numba imports cleanly).

Same contracts as the reference module; plain loops compiled with nopython.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _induced(rel_ids, n, out):
    m = 1 << n
    full = np.uint64(m - 1)
    for r in range(rel_ids.shape[0]):
        rid = rel_ids[r]
        for menu in range(1, m):
            menu64 = np.uint64(menu)
            acc = 0
            for x in range(n):
                if menu >> x & 1:
                    dom = (rid >> np.uint64(x * n)) & full
                    if dom & menu64 == np.uint64(0):
                        acc |= 1 << x
            out[r, menu] = acc


def induced_tables(rel_ids: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((rel_ids.shape[0], 1 << n), dtype=np.uint16)
    _induced(rel_ids, n, out)
    return out


@njit(cache=True)
def _localize(tables, base, sub, out):
    for r in range(tables.shape[0]):
        for p in range(base.shape[0]):
            inter = tables[r, base[p]] & sub[p]
            out[r, p] = inter if inter != 0 else tables[r, sub[p]]


def localize_tables(tables: np.ndarray, base: np.ndarray, sub: np.ndarray) -> np.ndarray:
    out = np.empty((tables.shape[0], base.shape[0]), dtype=np.uint16)
    _localize(tables, base.astype(np.int64), sub.astype(np.int64), out)
    return out


@njit(cache=True)
def _xor_popcount(query, mat, out):
    for r in range(mat.shape[0]):
        total = 0
        for c in range(mat.shape[1]):
            v = np.int64(mat[r, c] ^ query[c])
            while v:
                v &= v - 1
                total += 1
        out[r] = total


def xor_popcount_sums(query: np.ndarray, mat: np.ndarray) -> np.ndarray:
    out = np.empty(mat.shape[0], dtype=np.int64)
    _xor_popcount(query, mat, out)
    return out
