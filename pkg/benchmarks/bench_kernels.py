"""Numba vs numpy timings for the oracle kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--cases 3,1,4 4,2,3 ...]

The first numba call per kernel includes compilation and is reported as a
separate warm-up column; the timed columns are the best of ``--repeat`` runs.
Both backends must return identical arrays, otherwise the script exits 1.
"""
import argparse
import sys
import time

import numpy as np

from zonal import kernels
from zonal.indices import GroupParams
from zonal.oracle import _Group

DEFAULT_CASES = ["3,1,4", "4,2,3", "2,1,5", "6,2,3", "8,4,3"]


def _calls(r, d, n):
    grp = _Group(GroupParams(r, d, n), None, backend="numpy")
    lookup = kernels.class_lookup(r, grp.rep_exps)
    perms = kernels.all_permutations(n)
    cos = kernels.coset_exponents(r, d, n)
    return {
        "labels": lambda b: kernels.double_coset_labels(grp.exps, grp.perms, r, backend=b),
        "hecke": lambda b: kernels.hecke_counts(grp.rep_exps, perms, r, lookup, backend=b),
        "convolution": lambda b: kernels.convolution_counts(grp.rep_exps, grp.exps, grp.perms, r, lookup, backend=b),
        "distance": lambda b: kernels.distance_counts(grp.rep_exps, cos, r, lookup, backend=b),
        "fixed": lambda b: kernels.fixed_points_cosets(kernels.coset_exponents(r, 1, n), perms, backend=b),
    }


def best_of(f, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = f()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--cases", nargs="*", default=DEFAULT_CASES)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1

    print(f"{'case':>10} {'kernel':>12} {'numpy s':>10} {'numba s':>10} {'warm-up s':>10} {'speedup':>8}")
    mismatch = False
    for case in args.cases:
        r, d, n = (int(x) for x in case.split(","))
        for name, f in _calls(r, d, n).items():
            t0 = time.perf_counter()
            f("numba")
            warm = time.perf_counter() - t0
            t_np, a = best_of(lambda: f("numpy"), args.repeat)
            t_nb, b = best_of(lambda: f("numba"), args.repeat)
            if not np.array_equal(a, b):
                mismatch = True
                print(f"MISMATCH in {name} at {case}")
            print(f"{case:>10} {name:>12} {t_np:10.4f} {t_nb:10.4f} {warm:10.4f} {t_np / t_nb:8.1f}x")
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
