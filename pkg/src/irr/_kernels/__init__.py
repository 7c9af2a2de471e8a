"""Kernel backend selection.

Hot array work (benchmark induction, localization, distance sweeps) runs on
one of two interchangeable backends:

* ``numba``: jit-compiled loops, the default whenever numba imports cleanly;
* ``numpy``: vectorized fallback with identical outputs.

Set IRR_BACKEND=numpy or IRR_BACKEND=numba to force one. The choice is
resolved lazily on first use; tests and the benchmark script can override it
in-process with use_backend().
"""

from __future__ import annotations

import os
from typing import Any

import numpy as np

from ..errors import DatasetError
from . import reference

_ENV = "IRR_BACKEND"
_active: tuple[str, Any] | None = None


def _load(name: str) -> tuple[str, Any]:
    if name == "numpy":
        return "numpy", reference
    if name == "numba":
        from . import jit

        return "numba", jit
    raise DatasetError(f"unknown {_ENV} value {name!r} (expected numpy or numba)")


def _resolve() -> tuple[str, Any]:
    global _active
    if _active is None:
        choice = os.environ.get(_ENV, "").strip().lower()
        if choice:
            _active = _load(choice)
        else:
            try:
                _active = _load("numba")
            except ImportError:
                _active = _load("numpy")
    return _active


def use_backend(name: str | None) -> None:
    """Force a backend for this process (None re-reads the environment)."""
    global _active
    _active = None if name is None else _load(name)


def backend_name() -> str:
    return _resolve()[0]


def induced_tables(rel_ids: np.ndarray, n: int) -> np.ndarray:
    return _resolve()[1].induced_tables(rel_ids, n)


def localize_tables(tables: np.ndarray, base: np.ndarray, sub: np.ndarray) -> np.ndarray:
    return _resolve()[1].localize_tables(tables, base, sub)


def xor_popcount_sums(query: np.ndarray, mat: np.ndarray) -> np.ndarray:
    return _resolve()[1].xor_popcount_sums(query, mat)


def dedupe_tables(tables: np.ndarray) -> np.ndarray:
    """Unique rows in ascending lexicographic (canonical encoding) order.

    Backend-independent: one byte per entry is wide enough for any menu mask
    at n <= 6, and numpy's void-dtype unique sorts rows bytewise, which is
    exactly the canonical table order (menu 0 first).
    """
    rows = np.ascontiguousarray(tables.astype(np.uint8))
    view = rows.view(np.dtype((np.void, rows.shape[1]))).reshape(-1)
    _, first = np.unique(view, return_index=True)
    return tables[first]


def localization_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All (base menu A, nonempty B subset of A) pairs, A then B ascending."""
    base = []
    sub = []
    for a_menu in range(1, 1 << n):
        b_menu = 0
        while True:
            b_menu = (b_menu - a_menu) & a_menu
            if b_menu == 0:
                break
            base.append(a_menu)
            sub.append(b_menu)
    return np.array(base, dtype=np.int64), np.array(sub, dtype=np.int64)
