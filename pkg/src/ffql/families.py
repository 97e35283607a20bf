"""Family enumeration with on-disk caching of L-polynomials.

Enumerating a genus-m family is cheap; computing every member's
L-polynomial is the expensive step, so (q, m) -> [(omega, coefficients)]
is cached as JSON lines under a cache directory and shared by all
experiment kinds.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .lfunc import LPolynomial, chi_series_coefficients, lstar_coefficients
from .parallel import pmap
from .places import BaseField, base_field
from .quadext import QuadExt, enumerate_family, quadext_from_record

_ENV_CACHE = "FFQL_CACHE_DIR"


def default_cache_dir() -> Path | None:
    env = os.environ.get(_ENV_CACHE)
    if env == "":
        return None
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ffql"


def _lpoly_worker(F: QuadExt) -> tuple[int, ...]:
    return chi_series_coefficients(F, 2 * F.genus)


class FamilyCache:
    """In-process + on-disk cache of families and their L-polynomials."""

    def __init__(self, cache_dir: Path | None = None, workers: int = 1,
                 family_cap: int | None = None):
        from .quadext import FAMILY_CAP

        self.cache_dir = cache_dir
        self.workers = workers
        self.family_cap = family_cap if family_cap is not None else FAMILY_CAP
        self._families: dict[tuple[int, int, int], list[QuadExt]] = {}
        self._lpolys: dict[tuple[int, int, int], list[LPolynomial]] = {}

    def _key(self, base: BaseField, m: int):
        return (base.field.p, base.field.r, m)

    def family(self, base: BaseField, m: int) -> list[QuadExt]:
        key = self._key(base, m)
        if key not in self._families:
            self._families[key] = enumerate_family(base, m, cap=self.family_cap)
        return self._families[key]

    def _disk_path(self, base: BaseField, m: int) -> Path | None:
        if self.cache_dir is None:
            return None
        return Path(self.cache_dir) / f"family_q{base.q}_m{m}.jsonl"

    def lpolys(self, base: BaseField, m: int) -> list[LPolynomial]:
        key = self._key(base, m)
        if key in self._lpolys:
            return self._lpolys[key]
        path = self._disk_path(base, m)
        fam = self.family(base, m)
        if path is not None and path.exists():
            loaded = _load_lpolys(base, m, path, fam)
            if loaded is not None:
                self._lpolys[key] = loaded
                return loaded
        coeff_lists = pmap(_lpoly_worker, fam, self.workers)
        out = [LPolynomial(base.q, m, tuple(c)) for c in coeff_lists]
        self._lpolys[key] = out
        if path is not None:
            _store_lpolys(path, fam, out)
        return out

    def pairs(self, base: BaseField, m: int) -> list[tuple[QuadExt, LPolynomial]]:
        return list(zip(self.family(base, m), self.lpolys(base, m)))


def _store_lpolys(path: Path, fam: list[QuadExt], lps: list[LPolynomial]):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for F, lp in zip(fam, lps):
            fh.write(json.dumps({"omega": str(F.omega), "coeffs": list(lp.coeffs)}))
            fh.write("\n")
    tmp.replace(path)


def _load_lpolys(base: BaseField, m: int, path: Path,
                 fam: list[QuadExt]) -> list[LPolynomial] | None:
    try:
        rows = [json.loads(line) for line in path.read_text().splitlines() if line]
    except (OSError, json.JSONDecodeError):
        return None
    if len(rows) != len(fam):
        return None
    out = []
    for F, row in zip(fam, rows):
        if row.get("omega") != str(F.omega):
            return None
        out.append(LPolynomial(base.q, m, tuple(row["coeffs"])))
    return out


_SHARED = FamilyCache(cache_dir=None)


def shared_cache() -> FamilyCache:
    """Process-wide in-memory cache (no disk) for library callers."""
    return _SHARED
