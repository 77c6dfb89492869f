"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload runs with every available backend swapped into
``schmidt_lab._kernels``; results are checked to agree.
"""

import argparse
import contextlib
import time

import numpy as np

from schmidt_lab import _kernels
from schmidt_lab.construct import MMGroupSpec, catalog, miller_moreno
from schmidt_lab.endo import enumerate_end
from schmidt_lab.semigroup import isomorphic

API = ("as_table", "as_vector", "new_map", "closure_extend", "compose_table")


@contextlib.contextmanager
def backend(mod):
    saved = {name: getattr(_kernels, name) for name in API}
    for name in API:
        setattr(_kernels, name, getattr(mod, name))
    try:
        yield
    finally:
        for name, fn in saved.items():
            setattr(_kernels, name, fn)


def workloads():
    m232 = miller_moreno(MMGroupSpec.make(2, 3, 2)).group
    c2cube = catalog("C2xC2xC2")
    maps = enumerate_end(c2cube).maps
    a4, sl = catalog("A4"), catalog("SL23")
    ends = (enumerate_end(a4).semigroup(), enumerate_end(sl).semigroup())
    return {
        "End(M(2,3,2)) enumeration": lambda: len(enumerate_end(m232)),
        f"compose_table, {len(maps)} maps of C2^3": lambda: int(np.asarray(_kernels.compose_table(maps)).sum()),
        "End(A4) ~ End(SL23) search": lambda: tuple(isomorphic(*ends)),
    }


def timeit(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = _kernels.backends()
    print(f"backends: {', '.join(m.NAME for m in mods)}")
    for label, fn in workloads().items():
        times, results = [], []
        for mod in mods:
            with backend(mod):
                t, r = timeit(fn, args.repeat)
            times.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), f"backends disagree on {label}"
        cols = "  ".join(f"{m.NAME} {t * 1e3:9.2f} ms" for m, t in zip(mods, times))
        speedup = f"  x{times[-1] / times[0]:.1f}" if len(times) > 1 else ""
        print(f"{label:38s} {cols}{speedup}")


if __name__ == "__main__":
    main()
