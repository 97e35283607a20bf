"""Exact integer identity suite and bound sweeps for family character sums.

Every identity here equates two independently computed integers: one side
from brute-force family enumeration, the other from generator/character
sums over explicit function spaces.  A failure carries its witness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import poly
from .chars import chi_c_eval, chi_divisor, kernel_divisor_even
from .families import FamilyCache, shared_cache
from .places import (BaseField, Divisor, Place, effective_divisors, mobius,
                     squarefree_split)
from .quadext import QuadExt, artin_schreier_classes
from .ratfunc import RationalFunction, rr_basis, rr_dim


@dataclass
class IdentityCheck:
    name: str
    params: str
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def row(self) -> dict:
        return {"name": self.name, "params": self.params,
                "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


# -- per-discriminant class sums ---------------------------------------------------


@lru_cache(maxsize=4096)
def _disc_classes_cached(p: int, r: int, dkey: Divisor) -> tuple[QuadExt, ...]:
    from .places import base_field

    return tuple(artin_schreier_classes(base_field(p, r), dkey))


def disc_class_sum(base: BaseField, dkey: Divisor, c: Divisor) -> int:
    """Sum of chi(F/c) over the extensions with discriminant 2*dkey (q even)."""
    classes = _disc_classes_cached(base.field.p, base.field.r, dkey)
    return sum(chi_divisor(F, c) for F in classes)


# -- even-characteristic identities ---------------------------------------------


def _chi_c_over_space(base: BaseField, c: Divisor, space_divisor: Divisor) -> int:
    """Integer sum of the modulus-c quadratic character over L(space_divisor)."""
    K = base.field
    space = rr_basis(base, space_divisor)
    total = 0
    for h in space.h_polynomials():
        num = space.numerator(h)
        f = RationalFunction(K, num, space.denom, reduce=False)
        total += chi_c_eval(base, c, f)
    return total


def _chi_c_over_prime_part(base: BaseField, c: Divisor, dkey: Divisor) -> int:
    """Sum of the character over the exact-pole-order subset of the
    generator space attached to dkey."""
    K = base.field
    d1, d2 = squarefree_split(dkey)
    ambient = rr_basis(base, d1 + 2 * d2)
    finite_supp = [p.polynomial for p in dkey.support if not p.is_infinity]
    inf_in_supp = any(p.is_infinity for p in dkey.support)
    total = 0
    for h in ambient.h_polynomials():
        if inf_in_supp and len(h) != ambient.dim:
            continue
        if any(not poly.mod(K, h, P) for P in finite_supp):
            continue
        f = RationalFunction(K, ambient.numerator(h), ambient.denom, reduce=False)
        total += chi_c_eval(base, c, f)
    return total


def check_coset_generator_count(base: BaseField, dkey: Divisor,
                                c: Divisor) -> list[IdentityCheck]:
    """Class sums against generator sums: (q^l(d2)/2) * sum over classes of
    chi(F/c) equals the character sum over the exact-order generator set,
    equals its Mobius-inverted form over the ambient spaces."""
    from .places import subdivisors

    d1, d2 = squarefree_split(dkey)
    weight_num = base.q ** rr_dim(base, d2)  # number of generators per class, x2
    class_sum = disc_class_sum(base, dkey, c)
    prime_sum = _chi_c_over_prime_part(base, c, dkey)
    lhs = weight_num * class_sum
    inverted = 0
    for a in subdivisors(d1 + 2 * d2):
        mu = mobius(a)
        if mu:
            inverted += mu * _chi_c_over_space(base, c, d1 + 2 * d2 - a)
    tag = f"dkey={dkey} c={c}"
    return [IdentityCheck("coset-generator-count", tag, lhs, 2 * prime_sum),
            IdentityCheck("coset-generator-mobius", tag, prime_sum, inverted)]


def check_kernel_vanishing(base: BaseField, dkey: Divisor, c: Divisor,
                           kernel_div: Divisor) -> IdentityCheck | None:
    """When 2*d2 is not dominated by the kernel divisor, the class sum is 0."""
    if c.degree % 2:
        return None
    _, d2 = squarefree_split(dkey)
    if 2 * d2 <= kernel_div:
        return None
    return IdentityCheck("kernel-vanishing", f"dkey={dkey} c={c}",
                         disc_class_sum(base, dkey, c), 0)


def check_pole_tower(base: BaseField, dkey: Divisor, c: Divisor, v0: Place,
                     n_v0: int) -> IdentityCheck:
    """Telescoped class sums over discriminants 2*(dkey + i v0)."""
    upper = n_v0 // 2 + 1
    total = 0
    if dkey.is_zero:
        for i in range(1, upper + 1):
            total += disc_class_sum(base, Divisor(base.field, ((v0, i),)), c)
        rhs = -1 - (-1) ** c.degree
    else:
        for i in range(0, upper + 1):
            total += disc_class_sum(base, dkey + Divisor(base.field, ((v0, i),)), c)
        rhs = 0
    return IdentityCheck("pole-tower-telescope",
                         f"dkey={dkey} c={c} v0={v0} n={n_v0}", total, rhs)


def check_squarefree_reduction(base: BaseField, dkey: Divisor, c: Divisor,
                               n_map) -> IdentityCheck:
    """Recursive reduction of a squarefree discriminant key to the base case."""
    K = base.field
    places = [p for p, _ in dkey.items]
    k = len(places)
    rhs = (-1) ** k * (1 + (-1) ** c.degree)
    for i in range(1, k + 1):
        vi = places[i - 1]
        prefix = Divisor(K, tuple((p, 1) for p in places[: i - 1]))
        sign = -1 if (k - i - 1) % 2 else 1
        for j in range(2, n_map.get(vi, 0) // 2 + 2):
            rhs += sign * disc_class_sum(base, prefix + Divisor(K, ((vi, j),)), c)
    lhs = disc_class_sum(base, dkey, c)
    return IdentityCheck("squarefree-reduction", f"dkey={dkey} c={c}", lhs, rhs)


# -- odd-characteristic generator-sum identity -------------------------------------


def _squarefree_avoiding(base: BaseField, degree: int, avoid: Divisor):
    for b in effective_divisors(base, degree):
        if b.is_squarefree and b.disjoint_from(avoid):
            yield b


def check_generator_sum(base: BaseField, m: int, c: Divisor, v0: Place,
                        cache: FamilyCache | None = None) -> IdentityCheck:
    """Family character sum against nested generator sums over pole spaces
    at an odd-degree place v0 (odd q)."""
    from .moments import family_char_sum

    K = base.field
    cache = cache or shared_cache()
    mprime = m + 1
    lhs = (base.q - 1) // 2 * family_char_sum(base, m, c, cache=cache)
    avoid = c + Divisor(K, ((v0, 1),))

    def class_rep(i: int) -> Divisor:
        # degree-i divisor supported away from v0 with zero coefficient on
        # supp(c); a single place of degree i always works at desk scale
        if i == 0:
            return base.zero_divisor()
        w = next(p for p in base.places_of_degree(i)
                 if p != v0 and not c.coeff(p))
        return Divisor(K, ((w, 1),))

    @lru_cache(maxsize=None)
    def alpha_sum(k: int, i: int) -> int:
        # sum of the modulus-c character over L(2k v0 - 2 a_i) minus the
        # next smaller pole space
        if k < 0 or 2 * k * v0.degree - 2 * i < 0:
            return 0
        rep = class_rep(i)
        big = rr_basis(base, Divisor(K, ((v0, 2 * k),)) - 2 * rep)
        total = 0
        for h in big.h_polynomials():
            f = RationalFunction(K, big.numerator(h), big.denom, reduce=False)
            if f.is_zero:
                continue
            total += chi_c_eval(base, c, f)
        small_dim = rr_dim(base, Divisor(K, ((v0, 2 * (k - 1)),)) - 2 * rep)
        if small_dim > 0:
            small = rr_basis(base, Divisor(K, ((v0, 2 * (k - 1)),)) - 2 * rep)
            for h in small.h_polynomials():
                f = RationalFunction(K, small.numerator(h), small.denom, reduce=False)
                if f.is_zero:
                    continue
                total -= chi_c_eval(base, c, f)
        return total

    rhs = 0
    for b_deg in range(0, mprime + 1):
        rem = mprime - b_deg
        i = (-rem) % v0.degree
        k = (rem + i) // v0.degree
        if i >= v0.degree or k < 0:
            continue
        mu_total = sum(1 if len(b) % 2 == 0 else -1
                       for b in _squarefree_avoiding(base, b_deg, avoid))
        if mu_total:
            rhs += mu_total * alpha_sum(k, i)
    return IdentityCheck("generator-sum", f"m={m} c={c} v0={v0}", lhs, rhs)


# -- suite drivers -----------------------------------------------------------------


def default_modulus_panel(base: BaseField, max_degree: int = 2) -> list[Divisor]:
    """Small deterministic panel of moduli c not in 2 Div(K)."""
    out = []
    for n in range(1, max_degree + 1):
        for c in effective_divisors(base, n):
            if any(mult % 2 for _, mult in c.items):
                out.append(c)
    return out


def identity_suite(base: BaseField, m: int,
                   cache: FamilyCache | None = None) -> list[IdentityCheck]:
    """Run every applicable exact identity at genus parameter m."""
    cache = cache or shared_cache()
    checks: list[IdentityCheck] = []
    if base.field.p != 2:
        panel = default_modulus_panel(base, 2 if m >= 3 else 3)
        for c in panel:
            v0 = next(p for p in base.places_of_degree(1) if not c.coeff(p))
            checks.append(check_generator_sum(base, m, c, v0, cache=cache))
        # an odd-degree v0 of degree 3 exercises the nontrivial index case
        if m <= 2:
            c = default_modulus_panel(base, 1)[1]
            v0 = next(p for p in base.places_of_degree(3) if not c.coeff(p))
            checks.append(check_generator_sum(base, m, c, v0, cache=cache))
        return checks

    panel = default_modulus_panel(base, 3)
    kernel_cache = {}
    for c in panel:
        if all(n % 2 == 0 for _, n in c.items):
            continue
        n_map, kdiv = kernel_divisor_even(base, c)
        kernel_cache[c] = (n_map, kdiv)
    for deg_d in range(1, m + 2):
        for dkey in effective_divisors(base, deg_d):
            for c in panel:
                if not dkey.disjoint_from(c):
                    continue
                checks.extend(check_coset_generator_count(base, dkey, c))
                n_map, kdiv = kernel_cache[c]
                if kdiv is not None:
                    res = check_kernel_vanishing(base, dkey, c, kdiv)
                    if res is not None:
                        checks.append(res)
                if dkey.is_squarefree:
                    checks.append(check_squarefree_reduction(base, dkey, c, n_map))
    # pole towers, including the empty-key base case
    for c in panel:
        n_map, _ = kernel_cache[c]
        for v0 in list(base.places_of_degree(1)) + list(base.places_of_degree(2)):
            if c.coeff(v0):
                continue
            nv = n_map.get(v0)
            if nv is None:
                continue
            checks.append(check_pole_tower(base, base.zero_divisor(), c, v0, nv))
            for dkey in effective_divisors(base, 1):
                if dkey.coeff(v0) or not dkey.disjoint_from(c):
                    continue
                checks.append(check_pole_tower(base, dkey, c, v0, nv))
    return checks


# -- verification battery ----------------------------------------------------------


def run_verification(base: BaseField, m: int,
                     cache: FamilyCache | None = None) -> list[dict]:
    """Identity suite plus structural invariants; one row per check."""
    import random

    from .lfunc import lstar_inverse_series, lstar_coefficients, rh_check
    from .quadext import enumerate_family, family_size

    cache = cache or shared_cache()
    rows: list[dict] = []

    def add(name: str, params: str, ok: bool, detail: str = ""):
        rows.append({"name": name, "params": params,
                     "pass": bool(ok), "detail": detail})

    for chk in identity_suite(base, m, cache):
        add(chk.name, chk.params, chk.passed, f"lhs={chk.lhs} rhs={chk.rhs}")

    fam = cache.family(base, m)
    add("family-count", f"q={base.q} m={m}",
        len(fam) == family_size(base, m),
        f"count={len(fam)} expected={family_size(base, m)}")
    add("family-distinct", f"q={base.q} m={m}",
        len({F.omega for F in fam}) == len(fam), "")

    rng = random.Random(1729)
    sample = fam if len(fam) <= 60 else rng.sample(fam, 60)
    if m >= 1:
        dev = max(rh_check(lstar_coefficients(F)) for F in sample)
        add("critical-circle", f"q={base.q} m={m} sample={len(sample)}",
            dev < 1e-9, f"max_dev={dev:.3e}")
    conv_ok = True
    for F in sample[:20]:
        c = lstar_coefficients(F).coeffs
        b = lstar_inverse_series(F, 10)
        for n in range(11):
            conv = sum((c[j] if j < len(c) else 0) * b[n - j] for j in range(n + 1))
            if conv != (1 if n == 0 else 0):
                conv_ok = False
    add("inverse-series-convolution", f"q={base.q} m={m}", conv_ok, "")

    # splitting symbol against the adelic character on sampled pairs
    mismatches = 0
    pairs = 0
    small = [c for n in (1, 2) for c in effective_divisors(base, n)]
    for F in sample[:25]:
        for c in small:
            if not c.disjoint_from(F.disc):
                continue
            if base.field.p != 2 and any(
                    F.omega.ord_at(v) != 0 for v in c.support):
                continue
            pairs += 1
            if chi_divisor(F, c) != chi_c_eval(base, c, F.omega):
                mismatches += 1
    add("adelic-vs-splitting", f"q={base.q} m={m} pairs={pairs}",
        mismatches == 0, f"mismatches={mismatches}")
    return rows


# -- bound sweeps ------------------------------------------------------------------


@dataclass
class BoundRow:
    q: int
    m: int
    c: Divisor
    value: int
    bound: float
    ratio: float
    small_m: bool

    def row(self) -> dict:
        return {"q": self.q, "m": self.m, "c": str(self.c), "value": self.value,
                "bound": self.bound, "ratio": self.ratio, "small_m": self.small_m}


def char_sum_bound_sweep(base: BaseField, ms, c_set, eps: float,
                         cache: FamilyCache | None = None) -> list[BoundRow]:
    """|family character sum| against q^m q^((eps+1/4) deg c) (odd q) or
    q^m q^(eps deg c) (even q); the small-m clause uses q^(2m)."""
    from .moments import family_char_sum

    cache = cache or shared_cache()
    q = float(base.q)
    odd = base.field.p != 2
    rows = []
    for m in ms:
        for c in c_set:
            if all(n % 2 == 0 for _, n in c.items):
                raise ValueError(f"{c} lies in 2 Div(K)")
            val = family_char_sum(base, m, c, cache=cache)
            small = m <= c.degree / 4
            if small:
                bound = q ** (2 * m)
            elif odd:
                bound = q ** m * q ** ((eps + 0.25) * c.degree)
            else:
                bound = q ** m * q ** (eps * c.degree)
            rows.append(BoundRow(base.q, m, c, val, bound, abs(val) / bound, small))
    return rows


# -- reciprocal-series tail ratio --------------------------------------------------


def _series_coeffs(num: list[int], den: list[int], upto: int) -> list[Fraction]:
    out = []
    num = [Fraction(c) for c in num] + [Fraction(0)] * max(0, upto + 1 - len(num))
    den = [Fraction(c) for c in den]
    inv0 = 1 / den[0]
    rem = list(num)
    for i in range(upto + 1):
        c = rem[i] * inv0
        out.append(c)
        if c:
            for j, dc in enumerate(den):
                if i + j <= upto:
                    rem[i + j] -= c * dc
    return out


def lfunc_tail_ratio(base: BaseField, m: int, F: QuadExt, s: complex,
                     t: complex) -> float:
    """Weighted tail of the character sums of F beyond degree 2m, relative to
    q^(-2m(Re(s)-1/2)); evaluated in closed form, no truncation."""
    q = base.q
    s, t = complex(s), complex(t)
    ss, st = s.real, t.real
    if not (ss > 0.5 and st > 0.5):
        raise ValueError("needs Re(s), Re(t) > 1/2")

    disc_degs = [p.degree for p in F.disc.support]

    def poly_mul_int(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    # counts of effective divisors avoiding the branch locus
    pnum = [1]
    for d in disc_degs:
        pnum = poly_mul_int(pnum, [1] + [0] * (d - 1) + [-1])
    a_coeffs = _series_coeffs(pnum, poly_mul_int([1, -1], [1, -q]), 2 * m + 2)

    # counts of squarefree divisors avoiding the branch locus
    bnum = poly_mul_int([1, 1], [1, 0, -q])
    bden = [1, -q]
    for d in disc_degs:
        bden = poly_mul_int(bden, [1] + [0] * (d - 1) + [1])
    b_coeffs = _series_coeffs(bnum, bden, 2 * m)

    u = cmath.exp(-2 * s * math.log(q))
    a_full = complex(_eval_int_poly(pnum, u)) / ((1 - u) * (1 - q * u))

    total = 0.0
    for d in range(0, 2 * m + 1):
        j0 = (2 * m - d) // 2 + 1
        partial = sum(complex(a_coeffs[j]) * u ** j for j in range(j0))
        t_d = (q ** (-ss * d)) * abs(a_full - partial)
        total += float(b_coeffs[d]) * q ** (-st * d) * t_d

    # all degrees beyond 2m contribute the full reciprocal series
    y = q ** (-(ss + st))
    b_gen_tail = (_eval_frac_ratio(bnum, bden, y)
                  - sum(float(b_coeffs[d]) * y ** d for d in range(2 * m + 1)))
    total += abs(a_full) * b_gen_tail

    x2 = q ** (-2.0 * st)
    z2t = 1.0 / ((1 - x2) * (1 - q * x2))
    lhs = z2t * total
    return lhs / q ** (-2 * m * (ss - 0.5))


def _eval_int_poly(coeffs, z):
    acc = 0j if isinstance(z, complex) else 0.0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _eval_frac_ratio(num, den, x: float) -> float:
    return _eval_int_poly(num, x) / _eval_int_poly(den, x)
