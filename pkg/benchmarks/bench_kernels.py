#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-Python reference.

Runs the operations that dominate family sweeps (modular products, modular
powers, residue symbols, traces) plus one end-to-end L-polynomial batch,
and prints a table with the speedup per operation.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from ffql.gf import field_create
from ffql import poly as P
from ffql.kernels import _ref

try:
    from ffql.kernels import _speedups
except ImportError:  # pragma: no cover
    _speedups = None


def _bench(fn, args_list, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for args in args_list:
            fn(*args)
    return (time.perf_counter() - t0) / (repeat * len(args_list))


def kernel_cases():
    rng = random.Random(20240901)
    K3 = field_create(3)
    K2 = field_create(2)
    m3 = list(P.monic_irreducibles(K3, 6)[0])
    m2 = list(P.monic_irreducibles(K2, 8)[0])
    polys3 = [[rng.randrange(3) for _ in range(6)] for _ in range(32)]
    polys2 = [[rng.randrange(2) for _ in range(8)] for _ in range(32)]
    return [
        ("mulmod deg6/GF(3)", "poly_mulmod",
         [(a, b, m3, 3) for a, b in zip(polys3, reversed(polys3))]),
        ("powmod deg6/GF(3)", "poly_powmod",
         [(a, 364, m3, 3) for a in polys3]),
        ("residue_symbol deg6/GF(3)", "residue_symbol",
         [(a, m3, 3) for a in polys3]),
        ("abs_trace2 deg8/GF(2)", "abs_trace2",
         [(a, m2) for a in polys2]),
        ("gcd deg6/GF(3)", "poly_gcd",
         [(a, b, 3) for a, b in zip(polys3, reversed(polys3))]),
    ]


def lpoly_case(repeat):
    from ffql.families import FamilyCache
    from ffql.lfunc import chi_series_coefficients
    from ffql.places import base_field

    base = base_field(3)
    fam = FamilyCache().family(base, 2)[:200]
    t0 = time.perf_counter()
    for _ in range(repeat):
        for F in fam:
            F._chi.clear()
            chi_series_coefficients(F, 4)
    return (time.perf_counter() - t0) / (repeat * len(fam))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=30)
    args = parser.parse_args()

    if _speedups is None:
        print("compiled backend unavailable; nothing to compare")
        return

    print(f"{'operation':34} {'cython':>12} {'python':>12} {'speedup':>9}")
    for label, name, cases in kernel_cases():
        fast = _bench(getattr(_speedups, name), cases, args.repeat)
        slow = _bench(getattr(_ref, name), cases, max(1, args.repeat // 10))
        print(f"{label:34} {fast * 1e6:10.2f}us {slow * 1e6:10.2f}us "
              f"{slow / fast:8.1f}x")

    import os
    per = lpoly_case(2)
    backend = "python" if os.environ.get("FFQL_PURE_PY") else "selected"
    print(f"{'L-polynomial per member (' + backend + ')':34} {per * 1e6:10.2f}us")
    print("re-run with FFQL_PURE_PY=1 to time the end-to-end pure-Python path")


if __name__ == "__main__":
    main()
