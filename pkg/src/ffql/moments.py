"""Family averages of L-functions: exact sums, Euler-product main terms,
error reports.

Kinds:
  LL    - sum of L(s) L(t)          (product of two L-functions)
  Lq    - sum of L(s) / L(t)        (quotient)
  invLL - sum of 1 / (L(s) L(t))    (product of reciprocals)
  L     - sum of L(s)               (single L-function)
  invL  - sum of 1 / L(t)           (single reciprocal)

Each kind has an Euler product over places entering its main term; values
are computed from place-degree counts, with a rigorous geometric tail
bound controlling the cutoff.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .chars import chi_divisor
from .errors import EvaluationOnCriticalCircle, OutsideValidityRegion
from .families import FamilyCache, shared_cache
from .places import BaseField, Divisor, base_field
from .quadext import family_size

KINDS = ("LL", "Lq", "invLL", "L", "invL")
SIGMA_KINDS = ("LL", "Lq", "invLL", "L")


# -- place-degree counts -----------------------------------------------------


def _mobius_int(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def place_count(q: int, d: int) -> int:
    """Number of places of GF(q)(x) of degree d (counts infinity at d=1)."""
    total = sum(_mobius_int(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d + (1 if d == 1 else 0)


# -- family character sums ------------------------------------------------------


def family_char_sum(base: BaseField, m: int, c: Divisor,
                    cache: FamilyCache | None = None) -> int:
    """Exact integer sum of chi(F/c) over the full genus-m family."""
    cache = cache or shared_cache()
    return sum(chi_divisor(F, c) for F in cache.family(base, m))


def family_main_term(base: BaseField, m: int, c: Divisor) -> Fraction:
    """Main term of the 2*Div character sum: q^(2m) 2 q^3 / (zeta(2)(q-1))
    times the product of (1+q^-deg v)^-1 over supp(c); exact rational."""
    q = base.q
    zeta2 = Fraction(1) / ((1 - Fraction(1, q ** 2)) * (1 - Fraction(1, q)))
    out = Fraction(2 * q ** 3, q - 1) / zeta2 * Fraction(q) ** (2 * m)
    for place, _ in c.items:
        out /= 1 + Fraction(1, q ** place.degree)
    return out


# -- Euler products ----------------------------------------------------------------


def _local_factor_delta(kind: str, q: int, d: int, s: complex, t: complex) -> complex:
    """The Euler factor minus 1, assembled from the small terms directly so
    huge place counts do not amplify representation error of (1 - tiny)."""
    x = float(q) ** (-d)
    us = cmath.exp(-s * d * math.log(q))
    ut = cmath.exp(-t * d * math.log(q))
    if kind == "LL":
        return (-x * x
                - (x - x * x) * (us * us - us * us * ut * ut + ut * ut)
                + (1 - x) * us * ut)
    if kind == "Lq":
        return -x * x + us * us * x * x - us * us * x - us * ut + us * ut * x
    if kind == "invLL":
        return -x * x + us * ut - us * ut * x
    if kind == "L":
        return -x * x + us * us * x * x - us * us * x
    raise ValueError(f"no Euler product for kind {kind!r}")


def _local_factor(kind: str, q: int, d: int, s: complex, t: complex) -> complex:
    return 1 + _local_factor_delta(kind, q, d, s, t)


def _clog1p(delta: complex) -> complex:
    if abs(delta) < 1e-4:
        # series keeps full relative accuracy for tiny factors
        return delta * (1 + delta * (-0.5 + delta * (1 / 3 + delta * -0.25)))
    return cmath.log(1 + delta)


def _tail_exponents(kind: str, ss: float, st: float) -> list[float]:
    if kind == "LL":
        return [2, 1 + 2 * ss, 2 + 2 * ss, 1 + 2 * st, 2 + 2 * st,
                1 + 2 * ss + 2 * st, 2 + 2 * ss + 2 * st, ss + st, 1 + ss + st]
    if kind == "Lq":
        return [2, 2 + 2 * ss, 1 + 2 * ss, ss + st, 1 + ss + st]
    if kind == "invLL":
        return [2, ss + st, 1 + ss + st]
    if kind == "L":
        return [2, 2 + 2 * ss, 1 + 2 * ss]
    raise ValueError(kind)


def _check_sigma_region(kind: str, s: complex, t: complex):
    ss, st = s.real, t.real
    if kind in ("LL", "Lq", "invLL"):
        ok = ss > 0.5 and st > 0.5
        need = "Re(s) > 1/2 and Re(t) > 1/2"
    else:
        ok = ss > 0.5
        need = "Re(s) > 1/2"
    if not ok:
        raise OutsideValidityRegion(
            f"sigma product for kind {kind} needs {need}; got Re(s)={ss}, Re(t)={st}")


@dataclass(frozen=True)
class SigmaProduct:
    kind: str
    s: complex
    t: complex
    cutoff: int
    value: complex
    tail_bound: float


def sigma_product(kind: str, base: BaseField, s: complex, t: complex,
                  tol: float = 1e-12) -> SigmaProduct:
    """Euler product over all places for the given kind, evaluated with a
    cutoff degree chosen so the tail changes the value by less than tol."""
    s, t = complex(s), complex(t)
    _check_sigma_region(kind, s, t)
    q = base.q
    lams = _tail_exponents(kind, s.real, t.real)

    def tail_log_bound(D: int) -> float:
        # sum over d > D of (number of places of degree d) * |factor - 1|
        out = 0.0
        for lam in lams:
            ratio = float(q) ** (1 - lam)
            out += ratio ** (D + 1) / (1 - ratio)
        return out

    D = 4
    while tail_log_bound(D) > min(tol, 0.1) and D < 2000:
        D += 4
    log_total = 0j
    for d in range(1, D + 1):
        log_total += place_count(q, d) * _clog1p(_local_factor_delta(kind, q, d, s, t))
    value = cmath.exp(log_total)
    bound = abs(value) * math.expm1(tail_log_bound(D))
    return SigmaProduct(kind, s, t, D, value, bound)


def zeta_closed(base: BaseField, w: complex) -> complex:
    """zeta_K(w) in closed form (w the s-variable, not u)."""
    u = cmath.exp(-w * math.log(base.q))
    return 1.0 / ((1 - u) * (1 - base.q * u))


def sigma_series_check(kind: str, base: BaseField, s: complex, t: complex,
                       cutoff: int) -> tuple[complex, complex, float]:
    """Partial divisor sums against the closed-form Euler product.

    lhs: the double divisor sum truncated to deg(c) <= cutoff, computed
    literally from the weights; rhs: the zeta/sigma closed form; returns
    (lhs, rhs, |lhs - rhs|)."""
    if kind not in ("LL", "Lq", "invLL"):
        raise ValueError("series check applies to the two-variable kinds")
    s, t = complex(s), complex(t)
    _check_sigma_region(kind, s, t)
    q = base.q
    logq = math.log(q)

    # coefficient array over x^deg, multiplied place by place
    coeffs = [0j] * (cutoff + 1)
    coeffs[0] = 1 + 0j
    for d in range(1, cutoff + 1):
        us = cmath.exp(-s * d * logq)
        ut = cmath.exp(-t * d * logq)
        weight = 1.0 / (1.0 + float(q) ** (-d))
        local = [1 + 0j]
        for k in range(1, cutoff // d + 1):
            if kind == "LL":
                inner = sum(us ** (2 * k - i) * ut ** i for i in range(2 * k + 1))
            elif kind == "Lq":
                inner = us ** (2 * k) - us ** (2 * k - 1) * ut
            else:
                inner = us * ut if k == 1 else 0j
            local.append(weight * inner)
        for _ in range(place_count(q, d)):
            new = list(coeffs)
            for k in range(1, cutoff // d + 1):
                if local[k] == 0j:
                    continue
                for n in range(k * d, cutoff + 1):
                    new[n] += local[k] * coeffs[n - k * d]
            coeffs = new
    lhs = sum(coeffs)

    sig = sigma_product(kind, base, s, t, tol=1e-14).value
    z2 = zeta_closed(base, 2)
    if kind == "LL":
        rhs = z2 * zeta_closed(base, 2 * s) * zeta_closed(base, 2 * t) * sig
    elif kind == "Lq":
        rhs = z2 * zeta_closed(base, 2 * s) * sig
    else:
        rhs = z2 * sig
    return lhs, rhs, abs(lhs - rhs)


# -- moment sums and main terms ---------------------------------------------------


def _lvalues(base: BaseField, m: int, w: complex, cache: FamilyCache):
    u = cmath.exp(-w * math.log(base.q))
    return [lp.eval_u(u) for lp in cache.lpolys(base, m)]


def moment_sum(base: BaseField, m: int, kind: str, s: complex, t: complex,
               cache: FamilyCache | None = None) -> complex:
    """Exact family sum of the requested L-value combination at (s, t)."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    cache = cache or shared_cache()
    s, t = complex(s), complex(t)
    vs = _lvalues(base, m, s, cache) if kind != "invL" else None
    vt = _lvalues(base, m, t, cache) if kind in ("LL", "Lq", "invLL", "invL") else None

    def safe_inv(z: complex) -> complex:
        if abs(z) < 1e-9:
            raise EvaluationOnCriticalCircle(f"L-value {z} too close to zero")
        return 1.0 / z

    total = 0j
    n = len(vs if vs is not None else vt)
    for i in range(n):
        if kind == "LL":
            total += vs[i] * vt[i]
        elif kind == "Lq":
            total += vs[i] * safe_inv(vt[i])
        elif kind == "invLL":
            total += safe_inv(vs[i]) * safe_inv(vt[i])
        elif kind == "L":
            total += vs[i]
        else:
            total += safe_inv(vt[i])
    return total


def check_theorem_region(kind: str, base: BaseField, s: complex, t: complex):
    """Enforce the stated (parity-dependent) validity region for main terms."""
    ss, st = complex(s).real, complex(t).real
    odd = base.field.p != 2
    if kind == "LL":
        if odd:
            ok = ss > 0.75 and st > 0.75 and ss + st > 2
            need = "Re(s),Re(t) > 3/4 and Re(s)+Re(t) > 2"
        else:
            ok = ss > 0.5 and st > 0.5 and ss + st > 1.5
            need = "Re(s),Re(t) > 1/2 and Re(s)+Re(t) > 3/2"
    elif kind == "Lq":
        if odd:
            ok = ss > 0.75 and st > 1 and ss + st > 2
            need = "Re(s) > 3/4, Re(t) > 1 and Re(s)+Re(t) > 2"
        else:
            ok = ss > 0.5 and st > 1
            need = "Re(s) > 1/2 and Re(t) > 1"
    elif kind == "invLL":
        ok = ss > 1 and st > 1
        need = "Re(s) > 1 and Re(t) > 1"
    elif kind == "L":
        ok = ss > (0.75 if odd else 0.5)
        need = "Re(s) > 3/4" if odd else "Re(s) > 1/2"
    else:
        ok = st > 1
        need = "Re(t) > 1"
    if not ok:
        raise OutsideValidityRegion(f"kind {kind} needs {need}; "
                                    f"got Re(s)={ss}, Re(t)={st}")


def main_term(kind: str, base: BaseField, m: int, s: complex, t: complex) -> complex:
    """The q^(2m) main term for the kind at (s, t), genus-zero base."""
    check_theorem_region(kind, base, s, t)
    q = base.q
    front = 2 * q ** 3 / (q - 1) * float(q) ** (2 * m)
    if kind == "LL":
        sig = sigma_product("LL", base, s, t).value
        return front * zeta_closed(base, 2 * s) * zeta_closed(base, 2 * t) * sig
    if kind == "Lq":
        sig = sigma_product("Lq", base, s, t).value
        return front * zeta_closed(base, 2 * s) * sig
    if kind == "invLL":
        return front * sigma_product("invLL", base, s, t).value
    if kind == "L":
        sig = sigma_product("L", base, s, t).value
        return front * zeta_closed(base, 2 * s) * sig
    zeta2 = zeta_closed(base, 2)
    return front / zeta2


def error_bound(kind: str, base: BaseField, m: int, s: complex, t: complex,
                eps: float) -> float:
    """The stated error-term shape (without its constant) for the kind."""
    q = float(base.q)
    ss, st = complex(s).real, complex(t).real
    odd = base.field.p != 2
    qm = q ** m

    def g(e: float) -> float:
        return q ** (2 * m * e)

    if kind == "LL":
        if odd:
            return qm * (1 + g(1.25 + eps - ss)) * (1 + g(1.25 + eps - st))
        return qm * (1 + g(1 + eps - ss)) * (1 + g(1 + eps - st))
    if kind == "Lq":
        if odd:
            return qm * (1 + g(1.25 + eps - ss) + g(2.5 + 2 * eps - 2 * st)
                         + g(2.5 + 2 * eps - ss - st))
        return qm * (1 + g(1 + eps - ss))
    if kind == "invLL":
        if odd:
            return qm * (1 + g(2.5 + 2 * eps - 2 * ss) + g(2.5 + 2 * eps - 2 * st))
        return qm
    if kind == "L":
        if odd:
            return qm * (1 + g(1.25 + eps - ss))
        return qm * (1 + g(1 + eps - ss))
    if odd:
        return qm * g(2.5 + 2 * eps - 2 * st)
    return qm


@dataclass
class MomentReport:
    kind: str
    q: int
    m: int
    s: complex
    t: complex
    lhs: complex
    main: complex
    abs_err: float
    bound: float
    constant: float
    passed: bool

    @property
    def rel_err(self) -> float:
        return self.abs_err / abs(self.main)

    def row(self) -> dict:
        return {"kind": self.kind, "q": self.q, "m": self.m,
                "s": _cstr(self.s), "t": _cstr(self.t),
                "lhs_re": self.lhs.real, "lhs_im": self.lhs.imag,
                "main_re": self.main.real, "main_im": self.main.imag,
                "abs_err": self.abs_err, "bound": self.bound,
                "C": self.constant, "pass": self.passed}


def _cstr(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def error_report(kind: str, base: BaseField, m: int, s: complex, t: complex,
                 eps: float, constant: float | None = None,
                 cache: FamilyCache | None = None) -> MomentReport:
    """One (kind, m) row: exact sum, main term, observed error and the
    stated bound; pass means abs_err <= constant * bound."""
    lhs = moment_sum(base, m, kind, s, t, cache=cache)
    main = main_term(kind, base, m, s, t)
    abs_err = abs(lhs - main)
    bound = error_bound(kind, base, m, s, t, eps)
    if constant is None:
        constant = abs_err / bound if bound else float("inf")
    passed = abs_err <= constant * bound * (1 + 1e-9)
    return MomentReport(kind, base.q, m, complex(s), complex(t), lhs, main,
                        abs_err, bound, constant, passed)


def moment_protocol(base: BaseField, kind: str, ms, s: complex, t: complex,
                    eps: float, cache: FamilyCache | None = None) -> list[MomentReport]:
    """Sweep m and calibrate the bound constant over the sweep (its max
    observed ratio); every row then carries the same reported constant."""
    ms = sorted(ms)
    cache = cache or shared_cache()
    raw = [error_report(kind, base, m, s, t, eps, cache=cache) for m in ms]
    calibration = max(max(r.constant for r in raw), 1e-30)
    return [MomentReport(kind, base.q, r.m, r.s, r.t, r.lhs, r.main,
                         r.abs_err, r.bound, calibration,
                         r.abs_err <= calibration * r.bound * (1 + 1e-9))
            for r in raw]
