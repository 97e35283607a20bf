"""Kernel backend selection.

The hot inner loops (dense polynomial arithmetic over prime fields) exist
twice: a Cython extension (`ffql.kernels._speedups`) and a pure-Python
reference (`ffql.kernels._ref`).  The compiled backend is used when it
imports; set FFQL_PURE_PY=1 to force the reference implementation.
benchmarks/bench_kernels.py compares the two.
"""

import os

if os.environ.get("FFQL_PURE_PY"):
    from . import _ref as backend
else:
    try:
        from . import _speedups as backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _ref as backend

BACKEND_NAME = backend.BACKEND_NAME

trim = backend.trim
poly_add = backend.poly_add
poly_sub = backend.poly_sub
poly_neg = backend.poly_neg
poly_mul = backend.poly_mul
poly_divmod = backend.poly_divmod
poly_mod = backend.poly_mod
poly_gcd = backend.poly_gcd
poly_invmod = backend.poly_invmod
poly_mulmod = backend.poly_mulmod
poly_powmod = backend.poly_powmod
poly_eval = backend.poly_eval
residue_symbol = backend.residue_symbol
abs_trace2 = backend.abs_trace2
