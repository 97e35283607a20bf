"""Rational functions over GF(q)(x) and explicit Riemann-Roch spaces.

On the projective line the space L(D) of functions with pole orders
bounded by D has the concrete model  { h * E / A :  deg h <= deg(D) - deg E + ... }
where A collects the positive finite part of D and E the forced zeros;
the basis is monomial.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from . import poly
from .errors import CapExceeded, NotEffective, OverlappingSupport
from .gf import Field
from .places import BaseField, Divisor, Place

#: Cap on full space enumerations (q^dim) unless overridden.
RR_ENUMERATE_CAP = 2 ** 24


class RationalFunction:
    """num/den in lowest terms with monic denominator; () / (1,) is zero."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: Field, num, den=poly.ONE, reduce: bool = True):
        num, den = poly.trim(num), poly.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if not num:
                den = poly.ONE
            else:
                g = poly.gcd(field, num, den)
                if poly.deg(g) > 0:
                    num = poly.divmod_(field, num, g)[0]
                    den = poly.divmod_(field, den, g)[0]
                c = field.inv(den[-1])
                if c != 1:
                    num = poly.scale(field, num, c)
                    den = poly.scale(field, den, c)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction, (self.field, self.num, self.den, False))

    # -- predicates / basics -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return self.den == poly.ONE

    def __eq__(self, other) -> bool:
        return (isinstance(other, RationalFunction) and self.field is other.field
                and self.num == other.num and self.den == other.den)

    def __hash__(self) -> int:
        return hash((id(self.field), self.num, self.den))

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        K = self.field
        num = poly.add(K, poly.mul(K, self.num, other.den), poly.mul(K, other.num, self.den))
        return RationalFunction(K, num, poly.mul(K, self.den, other.den))

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(self.field, poly.neg(self.field, self.num), self.den, reduce=False)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        K = self.field
        return RationalFunction(K, poly.mul(K, self.num, other.num),
                                poly.mul(K, self.den, other.den))

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        K = self.field
        return RationalFunction(K, poly.mul(K, self.num, other.den),
                                poly.mul(K, self.den, other.num))

    def scale(self, c: int) -> "RationalFunction":
        return RationalFunction(self.field, poly.scale(self.field, self.num, c),
                                self.den, reduce=False)

    # -- valuations ------------------------------------------------------------

    def ord_at(self, place: Place) -> int:
        if self.is_zero:
            raise ZeroDivisionError("ord of the zero function")
        if place.is_infinity:
            return poly.deg(self.den) - poly.deg(self.num)
        P = place.polynomial
        return (poly.multiplicity(self.field, self.num, P)
                - poly.multiplicity(self.field, self.den, P))

    def residue_at_finite(self, place: Place) -> tuple[int, ...]:
        """self mod P as a polynomial of degree < deg P (needs ord >= 0)."""
        K, P = self.field, place.polynomial
        den_red = poly.mod(K, self.den, P)
        if not den_red:
            num_red = poly.mod(K, self.num, P)
            if not num_red:
                raise NotIntegralAtPlace(place)
            raise NotIntegralAtPlace(place)
        return poly.mulmod(K, poly.mod(K, self.num, P), poly.invmod(K, den_red, P), P)

    def value_at_infinity(self) -> int:
        """The residue at infinity (needs ord_inf >= 0)."""
        if self.is_zero:
            return 0
        dn, dd = poly.deg(self.num), poly.deg(self.den)
        if dn > dd:
            raise NotIntegralAtPlace(Place(self.field, None))
        if dn < dd:
            return 0
        return self.field.div(self.num[-1], self.den[-1])

    def expansion_at_infinity(self, k: int) -> tuple[int, ...]:
        """First k coefficients of the expansion in t = 1/x (needs ord >= 0)."""
        if self.is_zero:
            return (0,) * k
        K = self.field
        dn, dd = poly.deg(self.num), poly.deg(self.den)
        if dn > dd:
            raise NotIntegralAtPlace(Place(K, None))
        # reverse num/den into series in t and divide
        nrev = [0] * (dd - dn) + [self.num[dn - i] for i in range(dn + 1)]
        drev = [self.den[dd - i] for i in range(dd + 1)]
        out = []
        rem = list(nrev) + [0] * k
        inv0 = K.inv(drev[0])
        for i in range(k):
            c = K.mul(rem[i], inv0)
            out.append(c)
            if c:
                for j, dc in enumerate(drev):
                    if i + j < len(rem):
                        rem[i + j] = K.sub(rem[i + j], K.mul(c, dc))
        return tuple(out)

    def principal_divisor(self) -> Divisor:
        """div(f) as a divisor; exact, degree 0 for f != 0."""
        if self.is_zero:
            raise ZeroDivisionError("div of the zero function")
        K = self.field
        items: list[tuple[Place, int]] = []
        for f, mult in poly.poly_factor(K, self.num) if poly.deg(self.num) > 0 else []:
            items.append((Place(K, f), mult))
        for f, mult in poly.poly_factor(K, self.den) if poly.deg(self.den) > 0 else []:
            items.append((Place(K, f), -mult))
        items.append((Place(K, None), poly.deg(self.den) - poly.deg(self.num)))
        return Divisor(K, items)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_polynomial:
            return poly.to_str(self.field, self.num)
        return f"({poly.to_str(self.field, self.num)})/({poly.to_str(self.field, self.den)})"

    __repr__ = __str__


class NotIntegralAtPlace(ZeroDivisionError):
    def __init__(self, place):
        super().__init__(f"function has a pole at {place}")
        self.place = place


def ratfunc_from_str(field: Field, s: str) -> RationalFunction:
    s = s.strip().replace(" ", "")
    if "/" in s:
        num_s, _, den_s = s.partition("/")
        num_s = num_s.strip("()")
        den_s = den_s.strip("()")
        return RationalFunction(field, poly.from_str(field, num_s), poly.from_str(field, den_s))
    return RationalFunction(field, poly.from_str(field, s))


# -- Riemann-Roch spaces -------------------------------------------------------


@dataclass(frozen=True)
class RRSpace:
    """L(D) on the projective line with its monomial basis.

    Elements are (forced * h) / denom with deg h < dim; basis[j] is the
    reduced form of forced * x^j / denom.
    """

    base: BaseField
    divisor: Divisor
    denom: tuple[int, ...]     # product of P^n over finite places with n > 0
    forced: tuple[int, ...]    # product of P^(-n) over finite places with n < 0
    dim: int

    @property
    def basis(self) -> tuple[RationalFunction, ...]:
        K = self.base.field
        return tuple(
            RationalFunction(K, poly.mul(K, self.forced, poly.shift(poly.ONE, j)), self.denom)
            for j in range(self.dim))

    def numerator(self, h) -> tuple[int, ...]:
        """Numerator polynomial (over .denom) of the element with h-part h."""
        return poly.mul(self.base.field, self.forced, h)

    def element(self, h) -> RationalFunction:
        return RationalFunction(self.base.field, self.numerator(h), self.denom)

    def h_polynomials(self) -> Iterator[tuple[int, ...]]:
        """All q^dim choices of h, in enumeration order (coefficient of x^0
        most significant, matching the documented element order)."""
        K = self.base.field
        if self.dim == 0:
            yield poly.ZERO
            return
        for digits in product(range(K.q), repeat=self.dim):
            yield poly.trim(digits)

    def __len__(self) -> int:
        return self.base.q ** self.dim


def rr_dim(base: BaseField, a: Divisor) -> int:
    """dim L(a) = max(0, deg a + 1) in genus zero."""
    return max(0, a.degree + 1)


def rr_basis(base: BaseField, a: Divisor) -> RRSpace:
    K = base.field
    denom, forced = poly.ONE, poly.ONE
    for place, n in a.items:
        if place.is_infinity:
            continue
        if n > 0:
            for _ in range(n):
                denom = poly.mul(K, denom, place.polynomial)
        else:
            for _ in range(-n):
                forced = poly.mul(K, forced, place.polynomial)
    return RRSpace(base, a, denom, forced, rr_dim(base, a))


def rr_enumerate(space: RRSpace, cap: int = RR_ENUMERATE_CAP) -> Iterator[RationalFunction]:
    """All q^dim elements of L(D), deterministic order, zero first."""
    if space.base.q ** space.dim > cap:
        raise CapExceeded(f"q^dim = {space.base.q ** space.dim} exceeds cap {cap}")
    K = space.base.field
    for h in space.h_polynomials():
        yield RationalFunction(K, poly.mul(K, space.forced, h), space.denom)


def count_exact_order_subset(base: BaseField, a: Divisor, b: Divisor) -> int:
    """#{f in L(a+b) : ord_v(f) = -ord_v(a) on supp(a)} by Mobius inversion.

    Exact integer; for deg b >= 2g-1 this collapses to q^(deg b + 1 - g) phi(a).
    """
    from .places import mobius, phi, subdivisors

    if not a.is_effective or not b.is_effective:
        raise NotEffective("both divisors must be effective")
    if not a.disjoint_from(b):
        raise OverlappingSupport("supports of the two divisors must be disjoint")
    q, g = base.q, base.genus
    total = Fraction(q) ** (b.degree + 1 - g) * phi(a)
    for c in subdivisors(a):
        d = a.degree + b.degree - c.degree
        if d < 2 * g - 1:
            ell = rr_dim(base, a + b - c)
            total += mobius(c) * (Fraction(q) ** ell - Fraction(q) ** (d + 1 - g))
    assert total.denominator == 1
    return int(total)
