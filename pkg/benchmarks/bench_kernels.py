"""Compare the numba and numpy backends of the hot kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is called once untimed (JIT compilation, or a warm cache), then
timed with ``timeit``; the best of ``--repeat`` runs is reported.
"""

from __future__ import annotations

import argparse
import time
import timeit

import numpy as np

from framekit import _accel, gram_matrix, harmonic_frame


def _perm_case():
    # 8-gon Gram: 16 symmetries among 8! candidates, no pruning
    K = gram_matrix(harmonic_frame(8)).astype(np.complex128)
    allowed = np.ones(K.shape, dtype=bool)
    return (K, K, allowed, 1e-9, False)


CASES = {
    "match_permutations (n=8)": ("match_permutations", _perm_case),
    "sinc_coordinates (p=3, M=256, T=64)": (
        "sinc_coordinates",
        lambda: (np.arange(-192, 193), 3, 256),
    ),
    "splitmix64_uniform (1e6 draws)": ("splitmix64_uniform", lambda: (12345, 1_000_000)),
}


def bench(repeat: int) -> list[tuple]:
    rows = []
    for title, (name, make_args) in CASES.items():
        args = make_args()
        timings = {}
        for backend in ("numba", "numpy"):
            fn = getattr(_accel, f"{name}_{backend}")
            if backend == "numba" and not _accel.HAVE_NUMBA:
                timings[backend] = (float("nan"), float("nan"))
                continue
            t0 = time.perf_counter()
            first = fn(*args)
            warm = time.perf_counter() - t0
            best = min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))
            timings[backend] = (warm, best)
            if backend == "numba":
                reference = first
            else:
                assert _accel.HAVE_NUMBA is False or np.allclose(first, reference, atol=1e-15)
        rows.append((title, timings))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    rows = bench(args.repeat)
    print(f"{'kernel':40s} {'numba first':>12s} {'numba best':>11s} {'numpy best':>11s} {'speedup':>8s}")
    for title, t in rows:
        (nw, nb), (_, pb) = t["numba"], t["numpy"]
        print(f"{title:40s} {nw:12.4f} {nb:11.5f} {pb:11.5f} {pb / nb:7.1f}x")


if __name__ == "__main__":
    main()
