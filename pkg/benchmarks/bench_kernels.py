"""Compare the jit and reference kernel backends on the hot paths.

Run: python3 benchmarks/bench_kernels.py [-n 4] [--repeat 5]

Times three stages for each backend: inducing choice tables from a batch
of relations, localizing a benchmark at every (base, subset) pair, and
scoring one query against the whole benchmark by xor-popcount. Results
are checked for agreement before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from irr import _kernels
from irr._kernels import localization_pairs, use_backend


def bench(n: int, repeat: int, batch: int) -> None:
    rng = np.random.default_rng(0)
    rel_ids = rng.integers(0, 1 << (n * n), size=batch, dtype=np.uint64)
    base, sub = localization_pairs(n)

    outputs = {}
    timings = {}
    for backend in ("numpy", "numba"):
        try:
            use_backend(backend)
        except Exception as exc:
            print(f"{backend}: unavailable ({exc})")
            continue
        # warm-up also triggers jit compilation
        tables = _kernels.induced_tables(rel_ids, n)
        localized = _kernels.localize_tables(tables, base, sub)
        query = tables[len(tables) // 2].copy()
        _kernels.xor_popcount_sums(query, tables)

        stage_times = []
        for stage, fn in (
            ("induce", lambda: _kernels.induced_tables(rel_ids, n)),
            ("localize", lambda: _kernels.localize_tables(tables, base, sub)),
            ("score", lambda: _kernels.xor_popcount_sums(query, tables)),
        ):
            best = min(_timed(fn) for _ in range(repeat))
            stage_times.append((stage, best))
        outputs[backend] = (tables, localized)
        timings[backend] = stage_times

    use_backend(None)
    if len(outputs) == 2:
        a, b = outputs["numpy"], outputs["numba"]
        assert (a[0] == b[0]).all() and (a[1] == b[1]).all(), "backends disagree"
        print(f"backends agree on {batch} relations at n={n}\n")
    for backend, stages in timings.items():
        for stage, best in stages:
            print(f"{backend:>6} {stage:<9} {best * 1e3:8.3f} ms")


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=4, help="ground set size (default 4)")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--batch", type=int, default=1 << 16, help="relations per batch")
    args = parser.parse_args()
    bench(args.n, args.repeat, args.batch)


if __name__ == "__main__":
    main()
