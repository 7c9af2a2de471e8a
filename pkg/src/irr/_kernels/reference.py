"""Pure-numpy kernels (fallback backend).

A relation over n alternatives is encoded as an n*n-bit integer laid out as
n dominator columns: bits [x*n, x*n + n) form the mask of elements that
dominate x. Choice tables are (R, 2^n) uint16 arrays; entry [r, A] is the
chosen-set mask of relation r on menu A.
"""

from __future__ import annotations

import numpy as np


def induced_tables(rel_ids: np.ndarray, n: int) -> np.ndarray:
    """Choice tables induced by the given relation codes."""
    m = 1 << n
    full = np.uint64(m - 1)
    doms = [(rel_ids >> np.uint64(x * n)) & full for x in range(n)]
    out = np.zeros((rel_ids.shape[0], m), dtype=np.uint16)
    for menu in range(1, m):
        acc = np.zeros(rel_ids.shape[0], dtype=np.uint16)
        for x in range(n):
            if menu >> x & 1:
                free = (doms[x] & np.uint64(menu)) == 0
                acc |= free.astype(np.uint16) << np.uint16(x)
        out[:, menu] = acc
    return out


def localize_tables(tables: np.ndarray, base: np.ndarray, sub: np.ndarray) -> np.ndarray:
    """Localized choices: tables[:, base] & sub where nonempty, else tables[:, sub]."""
    inter = tables[:, base] & sub.astype(np.uint16)[None, :]
    return np.where(inter != 0, inter, tables[:, sub])


def xor_popcount_sums(query: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Row sums of popcount(query ^ mat), one int64 per row of mat."""
    return np.bitwise_count(mat ^ query[None, :]).sum(axis=1, dtype=np.int64)
