"""Time the subset-search backends on the same exact-solver workload.

    python3 benchmarks/bench_kernels.py --n 24 30 --count 5

The numba timings exclude the first call, which loads or compiles the kernel.
"""

import argparse
import time

from mopiso._kernels import HAVE_NUMBA, SubsetSearch
from mopiso.harness import random_corpus


def minimum(search: SubsetSearch, need: int) -> int:
    r = 0
    while search.first(r, need) is None:
        r += 1
    return r


def run(n: int, count: int, seed: int, backends) -> None:
    mops = list(random_corpus(n, count, seed))
    results = {}
    for backend in backends:
        if backend == "numba":
            minimum(SubsetSearch(mops[0].neighbors, "numba"), 2)
        t0 = time.perf_counter()
        sizes = []
        for m in mops:
            search = SubsetSearch(m.neighbors, backend)
            sizes.append((minimum(search, 2), minimum(search, 1), minimum(search, 0)))
        elapsed = time.perf_counter() - t0
        results[backend] = sizes
        print(f"n={n:3d} backend={backend:6s} {elapsed * 1000 / count:10.2f} ms/instance")
    first = next(iter(results.values()))
    if any(v != first for v in results.values()):
        raise SystemExit("backends disagree")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[16, 20, 24])
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--backends", nargs="+", default=["numba", "numpy"] if HAVE_NUMBA else ["numpy"])
    args = p.parse_args()
    for n in args.n:
        run(n, args.count, args.seed, args.backends)


if __name__ == "__main__":
    main()
