"""Places and divisors of the rational function field K = GF(q)(x).

A place is either the degree valuation at infinity or a monic irreducible
polynomial; a divisor is a finite formal Z-combination of places, stored
sparsely.  Divisors are immutable and hashable.  The canonical total
order on places is: infinity first, then finite places by (degree,
base-q integer key of the coefficients); every deterministic enumeration
downstream derives from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from . import poly
from .errors import NotEffective
from .gf import Field, field_create


@dataclass(frozen=True)
class Place:
    field: Field
    polynomial: tuple[int, ...] | None  # None encodes the place at infinity

    @property
    def is_infinity(self) -> bool:
        return self.polynomial is None

    @property
    def degree(self) -> int:
        return 1 if self.polynomial is None else poly.deg(self.polynomial)

    def sort_key(self):
        if self.polynomial is None:
            return (0, 0, 0)
        return (1, poly.deg(self.polynomial), poly.int_key(self.field, self.polynomial))

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "inf" if self.polynomial is None else poly.to_str(self.field, self.polynomial)

    def __repr__(self) -> str:
        return f"Place({self})"


class Divisor:
    """Sparse integer-valued divisor; immutable."""

    __slots__ = ("field", "items", "_coeffs")

    def __init__(self, field: Field, items=()):
        coeffs: dict[Place, int] = {}
        for place, n in items:
            if n:
                coeffs[place] = coeffs.get(place, 0) + n
        cleaned = {p: n for p, n in coeffs.items() if n}
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "items",
                           tuple(sorted(cleaned.items(), key=lambda it: it[0].sort_key())))
        object.__setattr__(self, "_coeffs", cleaned)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Divisor is immutable")

    # -- basic queries ---------------------------------------------------

    def coeff(self, place: Place) -> int:
        return self._coeffs.get(place, 0)

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(p for p, _ in self.items)

    @property
    def degree(self) -> int:
        return sum(n * p.degree for p, n in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def is_effective(self) -> bool:
        return all(n > 0 for _, n in self.items)

    @property
    def is_squarefree(self) -> bool:
        return self.is_effective and all(n == 1 for _, n in self.items)

    def __len__(self) -> int:
        return len(self.items)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.field, self.items + other.items)

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.field, self.items + tuple((p, -n) for p, n in other.items))

    def __neg__(self) -> "Divisor":
        return Divisor(self.field, tuple((p, -n) for p, n in self.items))

    def __mul__(self, k: int) -> "Divisor":
        return Divisor(self.field, tuple((p, k * n) for p, n in self.items))

    __rmul__ = __mul__

    def __le__(self, other: "Divisor") -> bool:
        places = set(self.support) | set(other.support)
        return all(self.coeff(p) <= other.coeff(p) for p in places)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self.field is other.field \
            and self.items == other.items

    def __hash__(self) -> int:
        return hash((id(self.field), self.items))

    def __reduce__(self):
        return (Divisor, (self.field, self.items))

    def disjoint_from(self, other: "Divisor") -> bool:
        return not set(self.support) & set(other.support)

    def restrict(self, predicate) -> "Divisor":
        return Divisor(self.field, tuple(it for it in self.items if predicate(it[0])))

    def sort_key(self):
        return tuple((p.sort_key(), n) for p, n in self.items)

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        inner = ",".join(f"({p},{n})" for p, n in self.items)
        return f"[{inner}]"

    __repr__ = __str__


def divisor(field: Field, *items) -> Divisor:
    return Divisor(field, items)


def parse_divisor(field: Field, s: str) -> Divisor:
    """Inverse of str(divisor); format [(inf,2),(x^2+x+1,1)]."""
    s = s.strip().replace(" ", "")
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"malformed divisor {s!r}")
    body = s[1:-1]
    items = []
    while body:
        if not body.startswith("("):
            raise ValueError(f"malformed divisor {s!r}")
        close = body.index(")")
        entry = body[1:close]
        place_s, _, mult_s = entry.rpartition(",")
        if place_s == "inf":
            place = Place(field, None)
        else:
            f = poly.from_str(field, place_s)
            if not (f and f[-1] == 1 and poly.is_irreducible(field, f)):
                raise ValueError(f"{place_s!r} is not a monic irreducible place")
            place = Place(field, f)
        items.append((place, int(mult_s)))
        body = body[close + 1:]
        if body.startswith(","):
            body = body[1:]
    return Divisor(field, items)


class BaseField:
    """The rational function field GF(q)(x) with its genus-zero data."""

    __slots__ = ("field", "genus", "class_number", "infinity")

    def __init__(self, field: Field):
        self.field = field
        self.genus = 0
        self.class_number = 1
        self.infinity = Place(field, None)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def canonical_divisor(self) -> Divisor:
        return Divisor(self.field, ((self.infinity, -2),))

    def zero_divisor(self) -> Divisor:
        return Divisor(self.field, ())

    def place(self, f) -> Place:
        f = poly.monic(self.field, tuple(f))
        if not poly.is_irreducible(self.field, f):
            raise ValueError(f"{f} is not irreducible")
        return Place(self.field, f)

    def places_of_degree(self, d: int) -> tuple[Place, ...]:
        return _places_of_degree_cached(self.field.p, self.field.r, d)

    def places_up_to(self, dmax: int) -> list[Place]:
        out: list[Place] = []
        for d in range(1, dmax + 1):
            out.extend(self.places_of_degree(d))
        return out

    def count_effective(self, n: int) -> int:
        q = self.q
        return (q ** (n + 1) - 1) // (q - 1) if n >= 0 else 0

    def __repr__(self):
        return f"BaseField(GF({self.q})(x))"

    def __reduce__(self):
        return (base_field, (self.field.p, self.field.r))


@lru_cache(maxsize=None)
def _base_field_cached(p: int, r: int) -> BaseField:
    return BaseField(field_create(p, r))


def base_field(p: int, r: int = 1) -> BaseField:
    return _base_field_cached(p, r)


@lru_cache(maxsize=None)
def _places_of_degree_cached(p: int, r: int, d: int) -> tuple[Place, ...]:
    K = field_create(p, r)
    finite = tuple(Place(K, f) for f in poly.monic_irreducibles(K, d))
    if d == 1:
        return (Place(K, None),) + finite
    return finite


def mobius(a: Divisor) -> int:
    """0 unless a is squarefree, else (-1)^#supp(a)."""
    if not a.is_effective:
        raise NotEffective("mobius needs an effective divisor")
    if not a.is_squarefree:
        return 0
    return -1 if len(a) % 2 else 1


def phi(a: Divisor) -> int:
    """Product of q^(n*deg v) - q^((n-1)*deg v) over the support; phi(0) = 1."""
    if not a.is_effective:
        raise NotEffective("phi needs an effective divisor")
    q = a.field.q
    out = 1
    for place, n in a.items:
        d = place.degree
        out *= q ** (n * d) - q ** ((n - 1) * d)
    return out


def squarefree_split(a: Divisor) -> tuple[Divisor, Divisor]:
    """a = a1 + a2 with a1 the squarefree part (each support place once)."""
    if not a.is_effective:
        raise NotEffective("squarefree_split needs an effective divisor")
    a1 = Divisor(a.field, tuple((p, 1) for p, _ in a.items))
    return a1, a - a1


def subdivisors(a: Divisor) -> Iterator[Divisor]:
    """All effective c with 0 <= c <= a, in canonical lexicographic order."""
    if not a.is_effective:
        raise NotEffective("subdivisors needs an effective divisor")
    items = a.items

    def rec(i: int):
        if i == len(items):
            yield ()
            return
        place, n = items[i]
        for rest in rec(i + 1):
            for k in range(n + 1):
                yield ((place, k),) + rest if k else rest

    seen = [Divisor(a.field, it) for it in rec(0)]
    seen.sort(key=Divisor.sort_key)
    return iter(seen)


def mobius_interval_sum(a: Divisor) -> int:
    """Sum of mobius(c) over 0 <= c <= a; equals 1 iff a = 0 else 0."""
    return sum(mobius(c) for c in subdivisors(a))


def enumerate_effective(base: BaseField, n: int) -> Iterator[Divisor]:
    """All effective divisors of degree n, exactly once, in the canonical
    lexicographic order on sorted (place, multiplicity) lists."""
    if n < 0:
        return iter(())
    places = base.places_up_to(n) if n else []

    def rec(i: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        for j in range(i, len(places)):
            d = places[j].degree
            if d > remaining:
                continue
            for k in range(1, remaining // d + 1):
                head = ((places[j], k),)
                for tail in rec(j + 1, remaining - k * d):
                    yield head + tail

    def gen():
        for items in rec(0, n):
            yield Divisor(base.field, items)

    return gen()


@lru_cache(maxsize=512)
def _effective_list_cached(p: int, r: int, n: int) -> tuple[Divisor, ...]:
    base = base_field(p, r)
    return tuple(enumerate_effective(base, n))


def effective_divisors(base: BaseField, n: int) -> tuple[Divisor, ...]:
    """Cached materialized form of enumerate_effective (small degrees)."""
    return _effective_list_cached(base.field.p, base.field.r, n)
