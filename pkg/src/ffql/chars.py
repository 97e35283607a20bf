"""Splitting symbols, residue characters and character sums.

chi_place / chi_divisor give the splitting symbol of a quadratic extension
at places and effective divisors.  QuotientRing models O(c)/Pi(c) in CRT
form over the finite places of an effective modulus; MultChar / AddChar
are the multiplicative and additive characters used in Gauss-sum and
incomplete-sum estimates.  Character sums whose values are roots of unity
are accumulated exactly (cyclotomic integers), so structural vanishing
comes out as an exact zero rather than float noise.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm

from . import kernels as kern
from . import poly
from .errors import (InfinityInModulus, NotASubgroup, NotIntegralAtModulus,
                     NotPrimitive, OddCharacteristicField, OverlappingSupport,
                     PlaceInSupport, PrincipalCharacter, RingMismatch)
from .gf import Field
from .places import BaseField, Divisor, Place
from .quadext import KUMMER, QuadExt
from .ratfunc import RationalFunction, rr_basis

# -- splitting symbols ---------------------------------------------------------


def _residue_mod(K: Field, num, den, P):
    """num/den mod P for den invertible mod P."""
    dred = poly.mod(K, den, P)
    return poly.mulmod(K, poly.mod(K, num, P), poly.invmod(K, dred, P), P)


def _symbol_odd(K: Field, u, P) -> int:
    if K.r == 1:
        return kern.residue_symbol(u, P, K.p)
    if not poly.mod(K, u, P):
        return 0
    d = poly.deg(P)
    t = poly.powmod(K, u, (K.q ** d - 1) // 2, P)
    return 1 if t == poly.ONE else -1


def _symbol_even(K: Field, u, P) -> int:
    """+1 iff the absolute trace of u mod P vanishes."""
    if K.r == 1:
        return 1 if kern.abs_trace2(u, P) == 0 else -1
    bits = K.r * poly.deg(P)
    t = poly.mod(K, u, P)
    acc = t
    for _ in range(bits - 1):
        t = poly.mulmod(K, t, t, P)
        acc = poly.add(K, acc, t)
    if poly.deg(acc) > 0:
        raise ArithmeticError("trace did not land in GF(2)")
    return 1 if not acc else -1


def _strip_place(K: Field, f, P) -> tuple[tuple[int, ...], int]:
    mult = 0
    while True:
        q, r = poly.divmod_(K, f, P)
        if r:
            return f, mult
        f = q
        mult += 1


def chi_place(F: QuadExt, v: Place) -> int:
    """Splitting symbol: 0 ramified, -1 inert, +1 split."""
    cached = F._chi.get(v)
    if cached is not None:
        return cached
    K = F.base.field
    if F.disc.coeff(v):
        sym = 0
    elif F.kind == KUMMER:
        w = F.omega
        if v.is_infinity:
            k = poly.deg(w.den) - poly.deg(w.num)
            assert k % 2 == 0
            c = K.div(w.num[-1], w.den[-1])
            sym = 0 if c == 0 else (1 if K.is_square(c) else -1)
        elif w.is_polynomial and K.r == 1:
            # family members are c*f with f squarefree; v unramified => v
            # does not divide f, so the residue is already a unit
            sym = kern.residue_symbol(w.num, v.polynomial, K.p)
        else:
            P = v.polynomial
            num, a = _strip_place(K, w.num, P)
            den, b = _strip_place(K, w.den, P)
            assert (a - b) % 2 == 0
            sym = _symbol_odd(K, _residue_mod(K, num, den, P), P)
    else:
        w = F.omega  # pole-minimized: integral away from the branch locus
        if v.is_infinity:
            c = w.value_at_infinity()
            sym = 1 if K.trace_abs(c) == 0 else -1
        else:
            P = v.polynomial
            sym = _symbol_even(K, _residue_mod(K, w.num, w.den, P), P)
    F._chi[v] = sym
    return sym


def chi_divisor(F: QuadExt, a: Divisor) -> int:
    """Product of chi_place(F, v)^ord_v(a) over the support of a."""
    from .errors import NotEffective

    if not a.is_effective:
        raise NotEffective("chi_divisor needs an effective divisor")
    out = 1
    for place, n in a.items:
        s = chi_place(F, place)
        if s == 0:
            return 0
        if s == -1 and n % 2:
            out = -out
    return out


# -- adelic quadratic character --------------------------------------------------


@dataclass(frozen=True)
class LocalTuple:
    """Local components of an integral adele at the support of a modulus:
    polynomial residues mod P^ord at finite places, truncated 1/x expansions
    at infinity."""

    modulus: Divisor
    components: tuple[tuple[Place, tuple[int, ...]], ...]

    def component(self, place: Place) -> tuple[int, ...]:
        for p, c in self.components:
            if p == place:
                return c
        raise KeyError(place)


def local_tuple(c: Divisor, f: RationalFunction) -> LocalTuple:
    """Reduce a function integral on supp(c) to its local components."""
    K = c.field
    comps = []
    for place, n in c.items:
        if place.is_infinity:
            if not f.is_zero and poly.deg(f.num) > poly.deg(f.den):
                raise NotIntegralAtModulus(f"{f} has a pole at infinity")
            comps.append((place, f.expansion_at_infinity(n)))
        else:
            P = place.polynomial
            mod_n = P
            for _ in range(n - 1):
                mod_n = poly.mul(K, mod_n, P)
            dred = poly.mod(K, f.den, mod_n)
            if not poly.mod(K, f.den, P):
                raise NotIntegralAtModulus(f"{f} has a pole at {place}")
            comps.append((place, poly.mulmod(K, poly.mod(K, f.num, mod_n),
                                             poly.invmod(K, dred, mod_n), mod_n)))
    return LocalTuple(c, tuple(comps))


def chi_c_eval(base: BaseField, c: Divisor, t) -> int:
    """The adelic quadratic character of modulus c at t (a LocalTuple or a
    function integral on supp(c)); product of local symbols to ord_v(c)."""
    from .errors import NotEffective

    if not (c.is_effective and not c.is_zero):
        raise NotEffective("modulus must be effective and nonzero")
    if isinstance(t, RationalFunction):
        t = local_tuple(c, t)
    K = base.field
    odd = K.p != 2
    out = 1
    for place, n in c.items:
        comp = t.component(place)
        if place.is_infinity:
            c0 = comp[0] if comp else 0
            sym = (0 if c0 == 0 else (1 if K.is_square(c0) else -1)) if odd \
                else (1 if K.trace_abs(c0) == 0 else -1)
        else:
            P = place.polynomial
            u = poly.mod(K, comp, P)
            sym = _symbol_odd(K, u, P) if odd else _symbol_even(K, u, P)
        if sym == 0:
            return 0
        if sym == -1 and n % 2:
            out = -out
    return out


# -- quotient rings ---------------------------------------------------------------


@dataclass(frozen=True)
class RingComponent:
    place: Place
    exponent: int
    modulus: tuple[int, ...]  # P^exponent


class QuotientRing:
    """O(c)/Pi(c) ~ prod over supp(c) of O_v / pi_v^ord_v(c), finite places only.

    Elements are tuples of polynomial residues, one per component.
    """

    __slots__ = ("base", "divisor", "components", "size")

    def __init__(self, base: BaseField, c: Divisor):
        from .errors import NotEffective

        if not (c.is_effective and not c.is_zero):
            raise NotEffective("modulus must be effective and nonzero")
        comps = []
        K = base.field
        for place, n in c.items:
            if place.is_infinity:
                raise InfinityInModulus("quotient rings use finite moduli only")
            m = place.polynomial
            for _ in range(n - 1):
                m = poly.mul(K, m, place.polynomial)
            comps.append(RingComponent(place, n, m))
        self.base = base
        self.divisor = c
        self.components = tuple(comps)
        self.size = K.q ** c.degree

    # -- elements ------------------------------------------------------------

    def zero(self):
        return tuple(poly.ZERO for _ in self.components)

    def one(self):
        return tuple(poly.ONE for _ in self.components)

    def from_poly(self, f) -> tuple:
        K = self.base.field
        return tuple(poly.mod(K, f, c.modulus) for c in self.components)

    def from_ratfunc(self, f: RationalFunction) -> tuple:
        K = self.base.field
        out = []
        for c in self.components:
            dred = poly.mod(K, f.den, c.modulus)
            if not poly.mod(K, f.den, c.place.polynomial):
                raise NotIntegralAtModulus(f"{f} has a pole at {c.place}")
            out.append(poly.mulmod(K, poly.mod(K, f.num, c.modulus),
                                   poly.invmod(K, dred, c.modulus), c.modulus))
        return tuple(out)

    def add(self, a, b):
        K = self.base.field
        return tuple(poly.add(K, x, y) for x, y in zip(a, b))

    def neg(self, a):
        K = self.base.field
        return tuple(poly.neg(K, x) for x in a)

    def mul(self, a, b):
        K = self.base.field
        return tuple(poly.mulmod(K, x, y, c.modulus)
                     for x, y, c in zip(a, b, self.components))

    def scalar_mul(self, s: int, a):
        K = self.base.field
        return tuple(poly.scale(K, x, s) for x in a)

    def is_unit(self, a) -> bool:
        K = self.base.field
        return all(poly.mod(K, x, c.place.polynomial)
                   for x, c in zip(a, self.components))

    def inv(self, a):
        K = self.base.field
        return tuple(poly.invmod(K, x, c.modulus)
                     for x, c in zip(a, self.components))

    def enumerate(self):
        K = self.base.field
        ranges = [[poly.from_int_key(K, k, poly.deg(c.modulus) - 1)
                   for k in range(K.q ** poly.deg(c.modulus))]
                  for c in self.components]
        for combo in product(*ranges):
            yield tuple(combo)

    def units(self):
        for a in self.enumerate():
            if self.is_unit(a):
                yield a

    def element_key(self, a) -> int:
        K = self.base.field
        key = 0
        for x, c in zip(a, self.components):
            key = key * (K.q ** poly.deg(c.modulus)) + poly.int_key(K, x)
        return key

    # -- F_p coordinates -------------------------------------------------------

    @property
    def dim_fp(self) -> int:
        return self.divisor.degree * self.base.field.r

    def coords_fp(self, a) -> tuple[int, ...]:
        K = self.base.field
        out = []
        for x, c in zip(a, self.components):
            n = poly.deg(c.modulus)
            padded = list(x) + [0] * (n - len(x))
            for coeff in padded:
                out.extend(K.rep(coeff))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.base is other.base \
            and self.divisor == other.divisor

    def __hash__(self):
        return hash((id(self.base), self.divisor))

    def __repr__(self):
        return f"QuotientRing({self.divisor})"


def build_quotient_ring(base: BaseField, c: Divisor) -> QuotientRing:
    return QuotientRing(base, c)


def theta_c(ring: QuotientRing, f, a: Divisor | None = None):
    """Reduction of f into the ring; when the divisor a bounding f's poles is
    given, its support must avoid the modulus."""
    if a is not None and not a.disjoint_from(ring.divisor):
        raise OverlappingSupport("divisor support meets the modulus")
    if isinstance(f, RationalFunction):
        return ring.from_ratfunc(f)
    return ring.from_poly(tuple(f))


# -- exact sums of roots of unity -------------------------------------------------


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i]
        if c % den[-1]:
            raise ArithmeticError("non-exact division")
        f = c // den[-1]
        out[i - len(den) + 1] = f
        if f:
            for j, dc in enumerate(den):
                num[i - len(den) + 1 + j] -= f * dc
    if any(num):
        raise ArithmeticError("non-exact division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low first."""
    if n == 1:
        return (-1, 1)
    out = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            out = _int_poly_divexact(out, list(cyclotomic_poly(d)))
    return tuple(out)


class RootOfUnitySum:
    """Exact accumulator for sums of roots of unity exp(2*pi*i*log)."""

    __slots__ = ("counts",)

    def __init__(self):
        self.counts: dict[Fraction, int] = {}

    def add(self, log: Fraction | None, mult: int = 1):
        if log is None:
            return
        key = log - (log // 1)
        self.counts[key] = self.counts.get(key, 0) + mult

    def is_zero(self) -> bool:
        counts = {k: v for k, v in self.counts.items() if v}
        if not counts:
            return True
        n = lcm(*[k.denominator for k in counts])
        vec = [0] * n
        for k, v in counts.items():
            vec[int(k * n)] += v
        phi_n = list(cyclotomic_poly(n))
        # reduce mod the minimal polynomial of a primitive n-th root of unity
        for i in range(n - 1, len(phi_n) - 2, -1):
            c = vec[i]
            if c:
                vec[i] = 0
                for j in range(len(phi_n) - 1):
                    vec[i - len(phi_n) + 1 + j] -= c * phi_n[j]
        return not any(vec)

    def to_complex(self) -> complex:
        if self.is_zero():
            return complex(0.0, 0.0)
        out = 0j
        for k, v in sorted(self.counts.items()):
            if v:
                out += v * cmath.exp(2j * cmath.pi * float(k))
        return out


# -- multiplicative characters ------------------------------------------------------


@lru_cache(maxsize=None)
def _dlog_table(p: int, r: int, P: tuple[int, ...]):
    """(generator, {residue: log}) for the units of GF(q)[x]/(P)."""
    from .gf import field_create

    K = field_create(p, r)
    order = K.q ** poly.deg(P) - 1
    for key in range(1, order + 1):
        g = poly.from_int_key(K, key, poly.deg(P) - 1)
        table = {}
        t = poly.ONE
        for i in range(order):
            if t in table:
                break
            table[t] = i
            t = poly.mulmod(K, t, g, P)
        if len(table) == order:
            return g, table
    raise AssertionError("unit group of a finite field is cyclic")


class MultChar:
    """Multiplicative character on a quotient ring, factoring through the
    residue field at each component: value(u) = prod zeta_v^(k_v log_v(u))."""

    __slots__ = ("ring", "exponents", "_tables", "_orders")

    def __init__(self, ring: QuotientRing, exponents):
        K = ring.base.field
        self.ring = ring
        self._tables = []
        self._orders = []
        exps = []
        for comp, k in zip(ring.components, exponents):
            order = K.q ** comp.place.degree - 1
            self._tables.append(_dlog_table(K.p, K.r, comp.place.polynomial)[1])
            self._orders.append(order)
            exps.append(k % order)
        self.exponents = tuple(exps)

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponents)

    @property
    def is_primitive(self) -> bool:
        if any(c.exponent > 1 for c in self.ring.components):
            return False
        return all(k != 0 for k in self.exponents)

    def conjugate(self) -> "MultChar":
        return MultChar(self.ring, tuple(-k for k in self.exponents))

    def value_log(self, a) -> Fraction | None:
        """log of the value as a fraction of a full turn; None encodes 0."""
        K = self.ring.base.field
        total = Fraction(0)
        for x, comp, table, order, k in zip(a, self.ring.components,
                                            self._tables, self._orders,
                                            self.exponents):
            u = poly.mod(K, x, comp.place.polynomial)
            if not u:
                return None
            if k:
                total += Fraction(k * table[u], order)
        return total

    def value(self, a) -> complex:
        lg = self.value_log(a)
        if lg is None:
            return 0j
        return cmath.exp(2j * cmath.pi * float(lg - (lg // 1)))

    def __repr__(self):
        return f"MultChar({self.ring.divisor}, k={self.exponents})"


def quadratic_char(ring: QuotientRing) -> MultChar:
    """The character induced by the adelic quadratic character (q odd)."""
    K = ring.base.field
    if K.p == 2:
        raise OddCharacteristicField("quadratic character needs odd q")
    exps = []
    for comp in ring.components:
        order = K.q ** comp.place.degree - 1
        exps.append((comp.exponent * (order // 2)) % order)
    return MultChar(ring, exps)


def all_mult_chars(ring: QuotientRing):
    """Every multiplicative character of the supported class, principal first."""
    K = ring.base.field
    orders = [K.q ** c.place.degree - 1 for c in ring.components]
    for combo in product(*[range(o) for o in orders]):
        yield MultChar(ring, combo)


# -- additive characters ----------------------------------------------------------


def _trace_to_prime(K: Field, u, P) -> int:
    """Absolute trace of u in GF(q)[x]/(P) down to GF(p), as an int in [0,p)."""
    steps = K.r * poly.deg(P)
    t = poly.mod(K, u, P)
    acc = t
    for _ in range(steps - 1):
        t = poly.powmod(K, t, K.p, P)
        acc = poly.add(K, acc, t)
    if poly.deg(acc) > 0:
        raise ArithmeticError("trace did not land in the prime field")
    c = acc[0] if acc else 0
    if c >= K.p:
        raise ArithmeticError("trace did not land in the prime field")
    return c


class AddChar:
    """Additive character nontrivial on every nonzero principal ideal:
    r -> exp(2 pi i lambda(r)/p) with lambda the trace of the top local digit."""

    __slots__ = ("ring",)

    def __init__(self, ring: QuotientRing):
        self.ring = ring
        self._verify()

    def _verify(self):
        # exact check through the CRT factors: within each component the
        # top-digit trace must be nontrivial on the minimal ideal layer
        K = self.ring.base.field
        for comp in self.ring.components:
            P = comp.place.polynomial
            d = poly.deg(P)
            if all(_trace_to_prime(K, poly.from_int_key(K, key, d - 1), P) == 0
                   for key in range(K.q ** d)):
                raise ArithmeticError("trace functional vanished on a component")

    def lam(self, a) -> int:
        K = self.ring.base.field
        total = 0
        for x, comp in zip(a, self.ring.components):
            P = comp.place.polynomial
            digits = x
            top = poly.ZERO
            for _ in range(comp.exponent):
                top = poly.mod(K, digits, P)
                digits = poly.divmod_(K, digits, P)[0]
            total += _trace_to_prime(K, top, P)
        return total % K.p

    def value_log(self, a) -> Fraction:
        return Fraction(self.lam(a), self.ring.base.field.p)

    def value(self, a) -> complex:
        return cmath.exp(2j * cmath.pi * float(self.value_log(a)))


# -- Gauss sums -------------------------------------------------------------------


def gauss_sum(phi: MultChar, psi: AddChar) -> complex:
    """Convolution sum of a multiplicative and the fixed additive character."""
    if phi.ring != psi.ring:
        raise RingMismatch("characters live on different rings")
    acc = RootOfUnitySum()
    for a in phi.ring.enumerate():
        lg = phi.value_log(a)
        if lg is not None:
            acc.add(lg + psi.value_log(a))
    return acc.to_complex()


def twisted_gauss_sum(phi: MultChar, psi: AddChar, r0) -> complex:
    """Sum of conj(phi(r)) psi(r r0); equals phi(r0) gauss_sum(conj phi)."""
    if phi.ring != psi.ring:
        raise RingMismatch("characters live on different rings")
    if not phi.is_primitive:
        raise NotPrimitive("twisted sum evaluation needs a primitive character")
    ring = phi.ring
    acc = RootOfUnitySum()
    for a in ring.enumerate():
        lg = phi.value_log(a)
        if lg is not None:
            acc.add(-lg + psi.value_log(ring.mul(a, r0)))
    return acc.to_complex()


# -- theta images and incomplete sums ----------------------------------------------


def _fq_echelon(ring: QuotientRing, vectors):
    """Echelon basis (as ring elements) of the F_q-span of the given ring
    elements, using coords over GF(q)."""
    K = ring.base.field
    rows = []  # (pivot index, coord vector, ring element)
    for v in vectors:
        coords = list(_coords_fq(ring, v))
        elem = v
        for pivot, pcoords, pelem in rows:
            c = coords[pivot]
            if c:
                coords = [K.sub(a, K.mul(c, b)) for a, b in zip(coords, pcoords)]
                elem = ring.add(elem, ring.scalar_mul(K.neg(c), pelem))
        nz = next((i for i, c in enumerate(coords) if c), None)
        if nz is None:
            continue
        inv = K.inv(coords[nz])
        coords = [K.mul(inv, c) for c in coords]
        elem = ring.scalar_mul(inv, elem)
        rows.append((nz, coords, elem))
    rows.sort(key=lambda row: row[0])
    return [(pivot, coords, elem) for pivot, coords, elem in rows]


def _coords_fq(ring: QuotientRing, a):
    K = ring.base.field
    out = []
    for x, c in zip(a, ring.components):
        n = poly.deg(c.modulus)
        out.extend(list(x) + [0] * (n - len(x)))
    return tuple(out)


def theta_image_basis(ring: QuotientRing, n: int, v0: Place, d: Divisor):
    """F_q-echelon basis of theta_c(L(n v0 - d)) as ring elements."""
    base = ring.base
    space = rr_basis(base, Divisor(base.field, ((v0, n),)) - d)
    vecs = [ring.from_ratfunc(b) for b in space.basis]
    return _fq_echelon(ring, vecs)


def _span_elements(ring: QuotientRing, basis_rows):
    K = ring.base.field
    elems = [ring.zero()]
    for _, _, b in basis_rows:
        new = []
        for s in range(1, K.q):
            sb = ring.scalar_mul(s, b)
            new.extend(ring.add(e, sb) for e in elems)
        elems.extend(new)
    return elems


def _char_sum_over(phi: MultChar, elements) -> complex:
    acc = RootOfUnitySum()
    for e in elements:
        acc.add(phi.value_log(e))
    return acc.to_complex()


def incomplete_sum(phi: MultChar, n: int, v0: Place, d: Divisor) -> complex:
    """Sum of phi over the image of L(n v0 - d) in the ring; exactly zero in
    the full-image regime."""
    ring = phi.ring
    c = ring.divisor
    if phi.is_principal:
        raise PrincipalCharacter("incomplete sums need a non-principal character")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if c.coeff(v0) or d.coeff(v0):
        raise PlaceInSupport(f"{v0} lies in the support of the modulus or twist")
    if not d.disjoint_from(c):
        raise OverlappingSupport("twist divisor support meets the modulus")
    rows = theta_image_basis(ring, n, v0, d)
    return _char_sum_over(phi, _span_elements(ring, rows))


def subgroup_multiplier_count(ring: QuotientRing, subgroup_basis, n: int,
                              v0: Place, d: Divisor) -> int:
    """#{units u : u * theta(L(n v0 - d)) inside the given proper subgroup}."""
    K = ring.base.field
    p = K.p
    # F_p echelon of the subgroup
    g_rows = []

    def reduce_fp(coords):
        coords = list(coords)
        for pivot, pcoords in g_rows:
            c = coords[pivot]
            if c:
                coords = [(a - c * b) % p for a, b in zip(coords, pcoords)]
        return coords

    for g in subgroup_basis:
        coords = reduce_fp(ring.coords_fp(g))
        nz = next((i for i, c in enumerate(coords) if c), None)
        if nz is None:
            continue
        inv = pow(coords[nz], p - 2, p)
        g_rows.append((nz, [(inv * c) % p for c in coords]))
        g_rows.sort(key=lambda row: row[0])
    if len(g_rows) >= ring.dim_fp:
        raise NotASubgroup("subgroup must be proper")

    def in_subgroup(elem) -> bool:
        return not any(reduce_fp(ring.coords_fp(elem)))

    rows = theta_image_basis(ring, n, v0, d)
    # an F_p spanning set of the F_q-span
    span_fp = [ring.scalar_mul(_fq_basis_elem(K, i), b)
               for _, _, b in rows for i in range(K.r)]
    count = 0
    for u in ring.units():
        if all(in_subgroup(ring.mul(u, w)) for w in span_fp):
            count += 1
    return count


def _fq_basis_elem(K: Field, i: int) -> int:
    """The i-th power-basis element of GF(q) over GF(p), as an index."""
    return K.p ** i


# -- incomplete-sum sweep -----------------------------------------------------------


@dataclass
class IncompleteSumRow:
    q: int
    c: Divisor
    d: Divisor
    v0: Place
    n: int
    value: complex
    bound_trivial: float
    bound_pv: float
    vanishing_regime: bool

    @property
    def ratio(self) -> float:
        return abs(self.value) / min(self.bound_trivial, self.bound_pv)

    def row(self) -> dict:
        return {"q": self.q, "c": str(self.c), "d": str(self.d),
                "v0": str(self.v0), "n": self.n,
                "sum_re": self.value.real, "sum_im": self.value.imag,
                "bound_trivial": self.bound_trivial, "bound_pv": self.bound_pv,
                "ratio": self.ratio}


def _sweep_chars(ring: QuotientRing, chars_per_ring: int | None) -> list[MultChar]:
    K = ring.base.field
    squarefree = all(c.exponent == 1 for c in ring.components)
    out: list[MultChar] = []
    if squarefree:
        for ch in all_mult_chars(ring):
            if ch.is_principal:
                continue
            out.append(ch)
            if chars_per_ring is not None and len(out) >= chars_per_ring:
                break
        if K.p != 2:
            quad = quadratic_char(ring)
            if not quad.is_principal and \
                    quad.exponents not in {c.exponents for c in out}:
                out.append(quad)
    elif K.p != 2:
        ch = quadratic_char(ring)
        if not ch.is_principal:
            out = [ch]
    else:
        for ch in all_mult_chars(ring):
            if not ch.is_principal:
                out = [ch]
                break
    return out


def incomplete_sum_sweep(base: BaseField, deg_c_max: int = 4,
                         deg_v0_max: int = 2,
                         chars_per_ring: int | None = 6) -> list[IncompleteSumRow]:
    """Grid of incomplete character sums over moduli, evaluation places and
    twists, with the trivial and square-root bounds attached to each row.

    chars_per_ring bounds how many non-principal characters are sampled per
    modulus (None means all of them)."""
    from .places import effective_divisors

    q = base.q
    rows: list[IncompleteSumRow] = []
    for degc in range(1, deg_c_max + 1):
        for c in effective_divisors(base, degc):
            if any(p.is_infinity for p in c.support):
                continue
            ring = QuotientRing(base, c)
            chars = _sweep_chars(ring, chars_per_ring)
            if not chars:
                continue
            v0s = [base.infinity]
            for dv in range(1, deg_v0_max + 1):
                v0s.extend(v for v in base.places_of_degree(dv)
                           if not v.is_infinity and not c.coeff(v))
            # one finite v0 per degree keeps the grid compact
            seen_deg = set()
            v0_list = []
            for v in v0s:
                key = (v.is_infinity, v.degree)
                if key in seen_deg:
                    continue
                seen_deg.add(key)
                v0_list.append(v)
            for v0 in v0_list:
                twists = [base.zero_divisor()]
                for dd in (1, 2):
                    w = next((u for u in base.places_of_degree(dd)
                              if u != v0 and not c.coeff(u)), None)
                    if w is not None:
                        twists.append(Divisor(base.field, ((w, 1),)))
                for d in twists:
                    nmax = -(-(degc + d.degree - 1) // v0.degree) + 1
                    for n in range(0, nmax + 1):
                        vanishing = n * v0.degree >= degc + d.degree - 1
                        span = _span_elements(
                            ring, theta_image_basis(ring, n, v0, d))
                        btriv = float(q) ** (n * v0.degree - d.degree)
                        bpv = float(q) ** (degc / 2 + v0.degree)
                        for ch in chars:
                            val = _char_sum_over(ch, span)
                            rows.append(IncompleteSumRow(
                                q, c, d, v0, n, val, btriv, bpv, vanishing))
    return rows


# -- even-characteristic kernel divisor ---------------------------------------------


def _space_in_kernel(base: BaseField, c: Divisor, v: Place, nv: int) -> bool:
    """L(nv * v) inside ker of the modulus-c character (check an F_2 basis)."""
    K = base.field
    space = rr_basis(base, Divisor(K, ((v, nv),)))
    for j in range(space.dim):
        for i in range(K.r):
            g = poly.shift((_fq_basis_elem(K, i),), j)
            f = RationalFunction(K, space.numerator(g), space.denom)
            if f.is_zero:
                continue
            if chi_c_eval(base, c, f) != 1:
                return False
    return True


def kernel_bound_at(base: BaseField, c: Divisor, v: Place) -> int:
    """The achieved maximum n with L(n v) inside ker of the modulus-c adelic
    character (q even); 0 by convention on the support of c."""
    K = base.field
    if K.p != 2:
        raise OddCharacteristicField("kernel divisors are an even-q device")
    if c.coeff(v):
        return 0
    c1_deg = len(c.support) and sum(p.degree for p in c.support)
    nv = -1
    bound = c1_deg + 2
    while nv < bound and _space_in_kernel(base, c, v, nv + 1):
        nv += 1
    assert nv < bound, "kernel containment failed to terminate"
    return nv


def kernel_divisor_even(base: BaseField, c: Divisor):
    """Per-place maxima n_v with L(n_v v) inside ker of the modulus-c adelic
    character, and their divisor when deg(c) is even (q even only)."""
    K = base.field
    if K.p != 2:
        raise OddCharacteristicField("kernel divisors are an even-q device")
    if all(n % 2 == 0 for _, n in c.items):
        raise PrincipalCharacter("modulus in 2 Div(K) gives the trivial character")
    c1 = Divisor(K, tuple((p, 1) for p, _ in c.items))
    even_deg = c.degree % 2 == 0

    n_map: dict[Place, int] = {}
    sweep = [base.infinity]
    sweep += [v for d in range(1, max(c1.degree, 1) + 1)
              for v in base.places_of_degree(d) if not v.is_infinity]
    for v in sweep:
        n_map[v] = kernel_bound_at(base, c, v)
    for v, n in c.items:
        n_map.setdefault(v, 0)
    if not even_deg:
        return n_map, None
    kernel_div = Divisor(K, tuple((v, n) for v, n in n_map.items() if n > 0))
    return n_map, kernel_div
