"""Separable quadratic extensions of GF(q)(x).

Odd q: Kummer extensions y^2 = w with w = c*f, c in {1, least nonsquare}
and f monic squarefree (the canonical square-class representatives).
Even q: Artin-Schreier extensions y^2 + y = w, with w the least element
of its coset modulo {b^2 + b} under the enumeration order of the ambient
pole space.  The discriminant, its half in even characteristic, and the
genus are computed exactly.
"""

from __future__ import annotations

import json
from typing import Iterable, NamedTuple

from . import poly
from .errors import (CapExceeded, ConstantFieldExtension, EvenDegreePlace,
                     InvalidDiscriminantShape, IsSquareClass, NoSuchDiscriminant,
                     NotAGenerator, OddCharacteristic, EvenCharacteristic)
from .places import (BaseField, Divisor, Place, base_field, effective_divisors,
                     phi, squarefree_split)
from .ratfunc import RationalFunction, RRSpace, ratfunc_from_str, rr_basis

#: Families larger than this are refused (override via enumerate_family(cap=...)).
FAMILY_CAP = 500_000

KUMMER = "kummer"
ARTIN_SCHREIER = "artin_schreier"


class QuadExt:
    """A quadratic extension with cached discriminant, genus and symbols."""

    __slots__ = ("base", "kind", "omega", "disc", "genus", "_chi")

    def __init__(self, base: BaseField, kind: str, omega: RationalFunction,
                 disc: Divisor, genus: int):
        self.base = base
        self.kind = kind
        self.omega = omega
        self.disc = disc
        self.genus = genus
        self._chi: dict[Place, int] = {}

    @property
    def disc_key(self) -> Divisor:
        """The indexing divisor: the discriminant itself for odd q, its half
        for even q (where the discriminant lies in 2 Div(K))."""
        if self.kind == KUMMER:
            return self.disc
        return Divisor(self.base.field, tuple((p, n // 2) for p, n in self.disc.items))

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadExt) and self.kind == other.kind
                and self.omega == other.omega)

    def __hash__(self) -> int:
        return hash((self.kind, self.omega))

    def __reduce__(self):
        return (QuadExt, (self.base, self.kind, self.omega, self.disc, self.genus))

    def sort_key(self):
        return (poly.deg(self.omega.den), poly.int_key(self.base.field, self.omega.den),
                poly.deg(self.omega.num), poly.int_key(self.base.field, self.omega.num))

    def __repr__(self):
        return f"QuadExt({self.kind}, w={self.omega}, genus={self.genus})"

    def to_record(self) -> dict:
        return {"char": "odd" if self.kind == KUMMER else "even",
                "omega": str(self.omega),
                "disc": str(self.disc),
                "genus": self.genus}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)


def quadext_from_record(base: BaseField, record: dict | str) -> QuadExt:
    if isinstance(record, str):
        record = json.loads(record)
    omega = ratfunc_from_str(base.field, record["omega"])
    if record["char"] == "odd":
        return quadext_from_kummer(base, omega)
    return quadext_from_artin_schreier(base, omega)


# -- Kummer (odd characteristic) ----------------------------------------------

def kummer_discriminant(base: BaseField, omega: RationalFunction) -> tuple[Divisor, int]:
    """Discriminant and genus of y^2 = omega; rejects squares and constant
    field extensions."""
    if base.field.p == 2:
        raise EvenCharacteristic("Kummer extensions need odd characteristic")
    if omega.is_zero:
        raise IsSquareClass("zero generates nothing")
    K = base.field
    div_omega = omega.principal_divisor()
    ramified = tuple((p, 1) for p, n in div_omega.items if n % 2)
    disc = Divisor(K, ramified)
    if disc.is_zero:
        lead = K.div(omega.num[-1], omega.den[-1])
        if K.is_square(lead):
            raise IsSquareClass(f"{omega} is a square in K")
        raise ConstantFieldExtension(f"{omega} generates the constant field extension")
    genus = disc.degree // 2 - 1
    return disc, genus


def quadext_from_kummer(base: BaseField, omega: RationalFunction) -> QuadExt:
    disc, genus = kummer_discriminant(base, omega)
    return QuadExt(base, KUMMER, omega, disc, genus)


def kummer_same_extension(base: BaseField, w1: RationalFunction,
                          w2: RationalFunction) -> bool:
    """True iff w1 and w2 generate the same Kummer extension (w1/w2 square)."""
    K = base.field
    rho = w1 * w2
    for f in (rho.num, rho.den):
        if poly.deg(f) > 0:
            for _, mult in poly.poly_factor(K, f):
                if mult % 2:
                    return False
    if (poly.deg(rho.num) - poly.deg(rho.den)) % 2:
        return False
    return K.is_square(K.div(rho.num[-1], rho.den[-1]))


# -- Artin-Schreier (characteristic 2) ----------------------------------------

def _sqrt_residue(K, u, P):
    """Square root of u in GF(q)[x]/(P); unique in characteristic 2."""
    d = poly.deg(P)
    bits = K.r * d
    return poly.powmod(K, u, 1 << (bits - 1), P) if bits > 1 else u


def minimize_poles(base: BaseField, omega: RationalFunction,
                   skip: frozenset[Place] | set[Place] = frozenset()) -> RationalFunction:
    """Cancel even-order poles of omega by w -> w + b^2 + b (char 2 only).

    Poles at places in `skip` are left alone.  The result has odd pole
    order at every remaining pole outside `skip`; pole orders never grow.
    """
    K = base.field
    if K.p != 2:
        raise OddCharacteristic("pole minimization is an Artin-Schreier device")
    inf = base.infinity
    while True:
        # finite poles with even order
        if poly.deg(omega.den) > 0:
            work = None
            for P, mult in poly.poly_factor(K, omega.den):
                if mult % 2 == 0 and Place(K, P) not in skip:
                    work = (P, mult)
                    break
            if work is not None:
                P, mult = work
                cofactor = omega.den
                for _ in range(mult):
                    cofactor = poly.divmod_(K, cofactor, P)[0]
                u = poly.mulmod(K, poly.mod(K, omega.num, P),
                                poly.invmod(K, cofactor, P), P)
                s = _sqrt_residue(K, u, P)
                halfpole = poly.ONE
                for _ in range(mult // 2):
                    halfpole = poly.mul(K, halfpole, P)
                beta = RationalFunction(K, s, halfpole)
                omega = omega + beta * beta + beta
                continue
        # pole at infinity with even order
        k = poly.deg(omega.num) - poly.deg(omega.den)
        if k > 0 and k % 2 == 0 and inf not in skip:
            c = K.div(omega.num[-1], omega.den[-1])
            s = K.sqrt_char2(c)
            beta = RationalFunction(K, poly.shift((s,), k // 2))
            omega = omega + beta * beta + beta
            continue
        return omega


def artin_schreier_different(base: BaseField, omega: RationalFunction
                             ) -> tuple[Divisor, Divisor, int]:
    """(disc, half-disc, genus) of y^2 + y = omega over GF(q)(x), q even."""
    K = base.field
    omega = minimize_poles(base, omega)
    items = []
    if poly.deg(omega.den) > 0:
        for P, mult in poly.poly_factor(K, omega.den):
            items.append((Place(K, P), mult + 1))
    k = poly.deg(omega.num) - poly.deg(omega.den)
    if k > 0:
        items.append((base.infinity, k + 1))
    disc = Divisor(K, items)
    if disc.is_zero:
        # no poles left: omega reduced to a constant
        c = omega.num[0] if omega.num else 0
        if K.trace_abs(c) == 0:
            raise NotAGenerator(f"{omega} lies in the image of b -> b^2 + b")
        raise ConstantFieldExtension(f"{omega} generates the constant field extension")
    dkey = Divisor(K, tuple((p, n // 2) for p, n in disc.items))
    genus = disc.degree // 2 - 1
    return disc, dkey, genus


def quadext_from_artin_schreier(base: BaseField, omega: RationalFunction) -> QuadExt:
    K = base.field
    omega_min = minimize_poles(base, omega)
    disc, _, genus = artin_schreier_different(base, omega_min)
    return QuadExt(base, ARTIN_SCHREIER, omega_min, disc, genus)


def artin_schreier_same_extension(base: BaseField, w1: RationalFunction,
                                  w2: RationalFunction) -> bool:
    """True iff w1 and w2 generate the same extension (w1 + w2 in b^2 + b)."""
    K = base.field
    diff = minimize_poles(base, w1 + w2)
    if not diff.is_polynomial or poly.deg(diff.num) > 0:
        return False
    c = diff.num[0] if diff.num else 0
    return K.trace_abs(c) == 0


def artin_schreier_normalize(base: BaseField, omega: RationalFunction,
                             places_allowed: Iterable[Place]) -> RationalFunction:
    """A generator of the same extension whose poles outside the branch
    locus lie only in `places_allowed`, with the exact minimal odd order at
    branch places outside that set."""
    return minimize_poles(base, omega, skip=frozenset(places_allowed))


# -- bitmask coset reduction (even characteristic class enumeration) -----------

def _mask_of_poly(K, h, dim: int) -> int:
    mask = 0
    r = K.r
    for j, c in enumerate(h):
        mask |= c << (r * (dim - 1 - j))
    return mask


def _poly_of_mask(K, mask: int, dim: int) -> tuple[int, ...]:
    r = K.r
    out = [0] * dim
    sel = (1 << r) - 1
    for j in range(dim):
        out[j] = (mask >> (r * (dim - 1 - j))) & sel
    return poly.trim(out)


def _echelonize(vectors: list[int]) -> list[int]:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return [basis[t] for t in sorted(basis, reverse=True)]


def _coset_min(x: int, echelon: list[int]) -> int:
    for w in echelon:
        if x & (1 << (w.bit_length() - 1)):
            x ^= w
    return x


def _artin_schreier_class_numerators(base: BaseField, dkey: Divisor
                                     ) -> tuple[RRSpace, list[tuple[int, ...]]]:
    """Canonical numerators (over the ambient pole space) of the generator
    classes with discriminant 2*dkey, in ascending enumeration order."""
    K = base.field
    d1, d2 = squarefree_split(dkey)
    ambient = rr_basis(base, d1 + 2 * d2)
    dim = ambient.dim
    finite_supp = [p.polynomial for p in dkey.support if not p.is_infinity]
    inf_in_supp = any(p.is_infinity for p in dkey.support)

    # F_2 span of {b^2 + b : b in L(d2)} inside the ambient numerator space
    d2space = rr_basis(base, d2)
    extra = poly.ONE
    for P in finite_supp:
        extra = poly.mul(K, extra, P)
    wvecs = []
    for j in range(d2space.dim):
        for i in range(K.r):
            g = poly.shift((1 << i,), j)
            num = poly.mul(K, poly.add(K, poly.mul(K, g, g),
                                       poly.mul(K, g, d2space.denom)), extra)
            wvecs.append(_mask_of_poly(K, num, dim))
    echelon = _echelonize(wvecs)

    reps: dict[int, None] = {}
    for h in ambient.h_polynomials():
        if inf_in_supp and len(h) != dim:
            continue
        ok = True
        for P in finite_supp:
            if not poly.mod(K, h, P):
                ok = False
                break
        if not ok:
            continue
        reps.setdefault(_coset_min(_mask_of_poly(K, h, dim), echelon))
    ordered = sorted(reps)
    return ambient, [_poly_of_mask(K, m, dim) for m in ordered]


def artin_schreier_classes(base: BaseField, dkey: Divisor) -> list[QuadExt]:
    """All extensions with discriminant 2*dkey, canonical generators."""
    if not (dkey.is_effective and not dkey.is_zero):
        raise InvalidDiscriminantShape("need an effective divisor > 0")
    ambient, numerators = _artin_schreier_class_numerators(base, dkey)
    K = base.field
    out = []
    genus = dkey.degree - 1
    disc = 2 * dkey
    for h in numerators:
        omega = RationalFunction(K, h, ambient.denom)
        out.append(QuadExt(base, ARTIN_SCHREIER, omega, disc, genus))
    return out


# -- family enumeration ---------------------------------------------------------

def family_size(base: BaseField, m: int) -> int:
    """Exact number of quadratic extensions of genus m with q_F = q."""
    q = base.q
    if m == 0:
        # the degree-(2m+1) squarefree count is q, not q - q^0
        return 2 * q * q if base.field.p != 2 else 2 * (q * q - 1)
    return 2 * (q ** (2 * m + 2) - q ** (2 * m))


def enumerate_family(base: BaseField, m: int, cap: int = FAMILY_CAP) -> list[QuadExt]:
    """Every quadratic extension F with g_F = m and q_F = q, exactly once."""
    if m < 0:
        raise ValueError("genus must be >= 0")
    if family_size(base, m) > cap:
        raise CapExceeded(f"family of size {family_size(base, m)} exceeds cap {cap}")
    K = base.field
    out: list[QuadExt] = []
    if K.p != 2:
        n0 = K.least_nonsquare()
        inf_item = ((base.infinity, 1),)
        for degf in (2 * m + 1, 2 * m + 2):
            for f in poly.monic_of_degree(K, degf):
                if not poly.is_squarefree(K, f):
                    continue
                factors = tuple((Place(K, g), 1) for g, _ in poly.poly_factor(K, f))
                disc = Divisor(K, factors + (inf_item if degf % 2 else ()))
                for c in (1, n0):
                    omega = RationalFunction(K, poly.scale(K, f, c))
                    out.append(QuadExt(base, KUMMER, omega, disc, m))
    else:
        for dkey in effective_divisors(base, m + 1):
            out.extend(artin_schreier_classes(base, dkey))
    return out


# -- discriminant counting ------------------------------------------------------

def valid_disc_key(base: BaseField, dkey: Divisor) -> bool:
    if base.field.p == 2:
        return dkey.is_effective and not dkey.is_zero
    return dkey.is_squarefree and not dkey.is_zero and dkey.degree % 2 == 0


def count_by_discriminant(base: BaseField, dkey: Divisor) -> int:
    """N(dkey): number of extensions with the given discriminant key."""
    if not valid_disc_key(base, dkey):
        raise InvalidDiscriminantShape(f"{dkey} cannot index a discriminant")
    if base.field.p == 2:
        return 2 * phi(dkey)
    ext = discriminant_to_extension(base, dkey)  # constructive nonemptiness
    assert ext.disc == dkey
    return 2


def discriminant_to_extension(base: BaseField, dkey: Divisor) -> QuadExt:
    """Some extension realizing the discriminant key; total in genus zero."""
    if not valid_disc_key(base, dkey):
        raise InvalidDiscriminantShape(f"{dkey} cannot index a discriminant")
    K = base.field
    if K.p == 2:
        return artin_schreier_classes(base, dkey)[0]
    f = poly.ONE
    for place, _ in dkey.items:
        if not place.is_infinity:
            f = poly.mul(K, f, place.polynomial)
    omega = RationalFunction(K, f)
    ext = quadext_from_kummer(base, omega)
    if ext.disc != dkey:
        raise NoSuchDiscriminant(f"no extension with discriminant {dkey}")
    return ext


# -- Kummer generator normal form -----------------------------------------------

class KummerNormalForm(NamedTuple):
    pole_multiple: int          # n with 2n deg(v0) = deg(disc) + 2d
    class_degree: int           # d in [0, deg v0)
    class_index: int            # index of the degree-d class representative
    class_rep: Divisor
    generators: tuple[RationalFunction, ...]


def kummer_normalize(F: QuadExt, v0: Place) -> KummerNormalForm:
    """All generators of F in L(2n v0 - 2a) for the canonical degree-d class
    representative a; there are exactly (q-1)/2 of them."""
    base = F.base
    K = base.field
    if K.p == 2:
        raise EvenCharacteristic("Kummer normal form needs odd characteristic")
    if v0.degree % 2 == 0:
        raise EvenDegreePlace(f"{v0} has even degree")
    deg_disc = F.disc.degree
    d = (-(deg_disc // 2)) % v0.degree
    n = (deg_disc // 2 + d) // v0.degree
    if d == 0:
        rep = base.zero_divisor()
    else:
        w = next(p for p in base.places_of_degree(1) if p != v0)
        rep = Divisor(K, ((w, d),))
    target = Divisor(K, ((v0, -2 * n),)) + 2 * rep + F.disc
    space = rr_basis(base, Divisor(K, ((v0, 2 * n),)) - 2 * rep)
    gens = []
    for h in space.h_polynomials():
        if not h:
            continue
        cand = space.element(h)
        if cand.principal_divisor() == target and \
                kummer_same_extension(base, F.omega, cand):
            gens.append(cand)
    expected = (K.q - 1) // 2
    assert len(gens) == expected, (len(gens), expected)
    return KummerNormalForm(n, d, 0, rep, tuple(gens))
