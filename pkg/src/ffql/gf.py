"""Finite fields GF(q), q = p^r, with exact arithmetic on small elements.

Elements of GF(p^r) = GF(p)[y]/(modulus) are encoded as integers in
[0, q): the element with coefficient vector (c_0, ..., c_{r-1}) has index
sum(c_i * p^i).  For prime fields the index is the element itself.  The
canonical modulus for given (p, r) is the monic irreducible whose
coefficient vector is smallest under that same encoding, so two fields
with equal (p, r) are the identical object.

Element enumeration order everywhere downstream is plain integer order
of the index.
"""

from __future__ import annotations

from functools import lru_cache

from . import kernels as kern
from .errors import EvenCharacteristic, NonPrime, OddCharacteristic, SizeExceeded

#: Largest field size the toolkit will construct.
MAX_Q = 1024

#: Multiplication tables are only built for fields up to this size.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _is_irreducible_fp(f: list[int], p: int) -> bool:
    # Rabin test: x^(p^d) == x mod f and gcd(x^(p^(d/l)) - x, f) = 1
    # for every prime l dividing d.
    d = len(f) - 1
    if d < 1 or f[-1] == 0:
        return False
    x = [0, 1]
    t = list(x)
    powers = []
    for _ in range(d):
        t = kern.poly_powmod(t, p, f, p)
        powers.append(t)
    if powers[-1] != kern.poly_mod(x, f, p):
        return False
    for ell in range(2, d + 1):
        if d % ell or not is_prime(ell):
            continue
        g = kern.poly_gcd(kern.poly_sub(powers[d // ell - 1], x, p), f, p)
        if len(g) != 1:
            return False
    return True


class Field:
    """GF(p^r) with elements encoded as integers in [0, p^r)."""

    __slots__ = ("p", "r", "q", "modulus", "_mul_table", "_inv_table")

    def __init__(self, p: int, r: int):
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = self._canonical_modulus(p, r)
        self._mul_table = None
        self._inv_table = None
        if 1 < self.q <= _TABLE_LIMIT and r > 1:
            self._build_tables()

    @staticmethod
    def _canonical_modulus(p: int, r: int) -> tuple[int, ...]:
        if r == 1:
            return (0, 1)
        for k in range(p ** r):
            coeffs = []
            kk = k
            for _ in range(r):
                coeffs.append(kk % p)
                kk //= p
            cand = coeffs + [1]
            if _is_irreducible_fp(cand, p):
                return tuple(cand)
        raise AssertionError("no irreducible polynomial found")

    # -- encoding ------------------------------------------------------------

    def rep(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_rep(self, digits) -> int:
        a = 0
        for c in reversed(list(digits)):
            a = a * self.p + c % self.p
        return a

    def _poly(self, a: int) -> list[int]:
        return kern.trim(list(self.rep(a)))

    # -- arithmetic ----------------------------------------------------------

    def _build_tables(self):
        q = self.q
        mod = list(self.modulus)
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            pa = self._poly(a)
            for b in range(a, q):
                c = self.from_rep(
                    self._pad(kern.poly_mulmod(pa, self._poly(b), mod, self.p))
                )
                mul[a][b] = c
                mul[b][a] = c
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow(a, q - 2)
        self._inv_table = inv

    def _pad(self, coeffs) -> list[int]:
        return list(coeffs) + [0] * (self.r - len(coeffs))

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        p, out, carryless = self.p, 0, 1
        for _ in range(self.r):
            out += ((a + b) % p) * carryless
            a //= p
            b //= p
            carryless *= p
        return out

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        p, out, basis = self.p, 0, 1
        for _ in range(self.r):
            out += ((-a) % p) * basis
            a //= p
            basis *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self.from_rep(
            self._pad(kern.poly_mulmod(self._poly(a), self._poly(b), list(self.modulus), self.p))
        )

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def sqrt_char2(self, a: int) -> int:
        """The unique square root in characteristic 2."""
        if self.p != 2:
            raise OddCharacteristic("square roots are unique only in characteristic 2")
        return self.pow(a, self.q // 2) if self.q > 2 else a

    def trace_abs(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an integer in [0, p)."""
        acc, t = a, a
        for _ in range(self.r - 1):
            t = self.frobenius(t)
            acc = self.add(acc, t)
        if acc >= self.p:
            raise ArithmeticError("trace did not land in the prime field")
        return acc

    def is_square(self, a: int) -> bool:
        if self.p == 2:
            return True
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def least_nonsquare(self) -> int:
        if self.p == 2:
            raise EvenCharacteristic("every element is a square in characteristic 2")
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise AssertionError("no nonsquare in a field with q odd > 1")

    def least_nonzero_trace(self) -> int:
        for a in range(1, self.q):
            if self.trace_abs(a) != 0:
                return a
        raise AssertionError("trace map is surjective")

    # -- misc ----------------------------------------------------------------

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_create, (self.p, self.r))


@lru_cache(maxsize=None)
def _field_cached(p: int, r: int) -> Field:
    return Field(p, r)


def field_create(p: int, r: int = 1) -> Field:
    """The canonical GF(p^r).  Same (p, r) always returns the same object."""
    if not isinstance(p, int) or not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if r < 1:
        raise SizeExceeded("extension degree must be >= 1")
    if p ** r > MAX_Q:
        raise SizeExceeded(f"q = {p}^{r} exceeds the configured bound {MAX_Q}")
    return _field_cached(p, r)


def residue_symbol(K: Field, a: int) -> int:
    """0 for a = 0, +1 for nonzero squares, -1 otherwise (q odd)."""
    if K.p == 2:
        raise EvenCharacteristic("residue symbol needs odd characteristic")
    if a == 0:
        return 0
    return 1 if K.pow(a, (K.q - 1) // 2) == 1 else -1


def artin_schreier_symbol(K: Field, a: int) -> int:
    """+1 when Y^2 + Y + a splits over GF(q) (q even), -1 when irreducible."""
    if K.p != 2:
        raise OddCharacteristic("Artin-Schreier symbol needs characteristic 2")
    return 1 if K.trace_abs(a) == 0 else -1
