"""Exact-arithmetic toolkit for quadratic extensions of GF(q)(x): families,
L-functions, character sums and moment experiments."""

__version__ = "0.1.0"

from .gf import field_create, residue_symbol, artin_schreier_symbol  # noqa: F401
from .places import (base_field, Place, Divisor, mobius, phi,  # noqa: F401
                     squarefree_split, enumerate_effective, mobius_interval_sum,
                     parse_divisor)
from .kernels import BACKEND_NAME as kernel_backend  # noqa: F401
