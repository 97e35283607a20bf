"""Dense polynomials over GF(q).

A polynomial is a tuple of field-element indices, low degree first, with
no trailing zeros; () is the zero polynomial.  All functions take the
coefficient field as first argument.  For prime fields the arithmetic is
delegated to the kernel backend (compiled when available).
"""

from __future__ import annotations

from functools import lru_cache

from . import kernels as kern
from .errors import ZeroPolynomial
from .gf import Field

ZERO: tuple[int, ...] = ()
ONE: tuple[int, ...] = (1,)
X: tuple[int, ...] = (0, 1)


def trim(coeffs) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def deg(f) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def lc(f) -> int:
    if not f:
        raise ZeroPolynomial("leading coefficient of zero")
    return f[-1]


def const(K: Field, c: int) -> tuple[int, ...]:
    return (c,) if c % K.q else ZERO


def add(K: Field, a, b) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_add(a, b, K.p))
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return trim(out)


def neg(K: Field, a) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_neg(a, K.p))
    return tuple(K.neg(c) for c in a)


def sub(K: Field, a, b) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_sub(a, b, K.p))
    return add(K, a, neg(K, b))


def scale(K: Field, a, c: int) -> tuple[int, ...]:
    if c == 0:
        return ZERO
    return trim([K.mul(x, c) for x in a])


def mul(K: Field, a, b) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_mul(a, b, K.p))
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(ca, cb))
    return trim(out)


def shift(f, k: int) -> tuple[int, ...]:
    """Multiply by x^k."""
    if not f:
        return ZERO
    return (0,) * k + tuple(f)


def divmod_(K: Field, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroPolynomial("polynomial division by zero")
    if K.r == 1:
        q, r = kern.poly_divmod(a, b, K.p)
        return tuple(q), tuple(r)
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return ZERO, trim(r)
    inv_lb = K.inv(b[-1])
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            f = K.mul(c, inv_lb)
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = K.sub(r[i - db + j], K.mul(f, b[j]))
    return trim(q), trim(r)


def mod(K: Field, a, b) -> tuple[int, ...]:
    return divmod_(K, a, b)[1]


def monic(K: Field, f) -> tuple[int, ...]:
    if not f:
        return ZERO
    if f[-1] == 1:
        return tuple(f)
    return scale(K, f, K.inv(f[-1]))


def gcd(K: Field, a, b) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_gcd(a, b, K.p))
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(K, a, b)
    return monic(K, a)


def invmod(K: Field, a, m) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_invmod(a, m, K.p))
    r0, r1 = trim(m), mod(K, a, m)
    s0, s1 = ZERO, ONE
    while r1:
        q, r = divmod_(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(K, s0, mul(K, q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible")
    return scale(K, s0, K.inv(r0[0]))


def mulmod(K: Field, a, b, m) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_mulmod(a, b, m, K.p))
    return mod(K, mul(K, a, b), m)


def powmod(K: Field, a, e: int, m) -> tuple[int, ...]:
    if K.r == 1:
        return tuple(kern.poly_powmod(a, e, m, K.p))
    result, base = ONE, mod(K, a, m)
    while e:
        if e & 1:
            result = mod(K, mul(K, result, base), m)
        base = mod(K, mul(K, base, base), m)
        e >>= 1
    return result


def evaluate(K: Field, f, x: int) -> int:
    if K.r == 1:
        return kern.poly_eval(f, x, K.p)
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def derivative(K: Field, f) -> tuple[int, ...]:
    out = []
    for i in range(1, len(f)):
        out.append(K.mul(f[i], i % K.p))
    return trim(out)


def int_key(K: Field, f) -> int:
    """Base-q integer encoding of the coefficient vector (constant least
    significant); gives the canonical deterministic ordering."""
    key = 0
    for c in reversed(f):
        key = key * K.q + c
    return key


def from_int_key(K: Field, key: int, degree: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree + 1):
        out.append(key % K.q)
        key //= K.q
    return trim(out)


def monic_of_degree(K: Field, d: int):
    """All monic polynomials of degree d, in int_key order."""
    for k in range(K.q ** d):
        yield _monic_assemble(K, k, d)


def _monic_assemble(K: Field, k: int, d: int) -> tuple[int, ...]:
    low = []
    for _ in range(d):
        low.append(k % K.q)
        k //= K.q
    return tuple(low) + (1,)


def multiplicity(K: Field, f, p) -> int:
    """Multiplicity of the factor p in f (f nonzero)."""
    if not f:
        raise ZeroPolynomial("multiplicity in zero polynomial")
    count = 0
    while True:
        q, r = divmod_(K, f, p)
        if r:
            return count
        f = q
        count += 1


def is_squarefree(K: Field, f) -> bool:
    if not f:
        raise ZeroPolynomial("squarefree test of zero")
    if len(f) == 1:
        return True
    return deg(gcd(K, f, derivative(K, f))) == 0


def is_irreducible(K: Field, f) -> bool:
    d = deg(f)
    if d < 1:
        return False
    f = monic(K, f)
    x = X
    t = x
    powers = []
    for _ in range(d):
        t = powmod(K, t, K.q, f)
        powers.append(t)
    if powers[-1] != mod(K, x, f):
        return False
    ell = 2
    while ell <= d:
        if d % ell == 0 and _is_prime_small(ell):
            g = gcd(K, sub(K, powers[d // ell - 1], x), f)
            if len(g) != 1:
                return False
        ell += 1
    return True


def _is_prime_small(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def _monic_irreducibles_cached(p: int, r: int, d: int) -> tuple[tuple[int, ...], ...]:
    from .gf import field_create

    K = field_create(p, r)
    return tuple(f for f in (_monic_assemble(K, k, d) for k in range(K.q ** d))
                 if is_irreducible(K, f))


def monic_irreducibles(K: Field, d: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducibles of degree d over K, in int_key order."""
    return _monic_irreducibles_cached(K.p, K.r, d)


# -- factorization -----------------------------------------------------------

def _pth_root_poly(K: Field, f) -> tuple[int, ...]:
    # f = g(x^p) with g recovered coefficient-wise via c -> c^(q/p)
    out = []
    e = K.q // K.p
    for i in range(0, len(f), K.p):
        out.append(K.pow(f[i], e) if e > 1 else f[i])
    return trim(out)


def _ddf(K: Field, f) -> list[tuple[tuple[int, ...], int]]:
    # distinct-degree split of a monic squarefree f
    out = []
    t = mod(K, X, f)
    d = 0
    rest = f
    while deg(rest) > 0:
        d += 1
        if 2 * d > deg(rest):
            out.append((rest, deg(rest)))
            break
        t = powmod(K, t, K.q, rest)
        g = gcd(K, sub(K, t, X), rest)
        if deg(g) > 0:
            out.append((g, d))
            rest = divmod_(K, rest, g)[0]
            t = mod(K, t, rest)
    return out


def _edf(K: Field, f, d: int) -> list[tuple[int, ...]]:
    # equal-degree split, deterministic: candidate elements are tried in
    # int_key order, so factorization output is reproducible
    if deg(f) == d:
        return [monic(K, f)]
    n = deg(f)
    for key in range(1, K.q ** n):
        h = from_int_key(K, key, n - 1)
        if deg(h) < 1:
            continue
        if K.p == 2:
            # trace map over GF(2): sum of h^(2^i), i < log2(q^d)
            bits = d * K.r
            t, acc = h, h
            for _ in range(bits - 1):
                t = mulmod(K, t, t, f)
                acc = add(K, acc, t)
            w = gcd(K, acc, f)
        else:
            t = powmod(K, h, (K.q ** d - 1) // 2, f)
            w = gcd(K, sub(K, t, ONE), f)
        if 0 < deg(w) < deg(f):
            rest = divmod_(K, f, w)[0]
            return _edf(K, w, d) + _edf(K, rest, d)
    raise AssertionError("equal-degree splitting failed")


def factor(K: Field, f) -> tuple[int, list[tuple[tuple[int, ...], int]]]:
    """Factor f into (leading coefficient, [(monic irreducible, mult), ...]).

    The factor list is sorted by (degree, int_key); the product of the
    factors to their multiplicities times the unit equals f exactly.
    """
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = lc(f)
    f = monic(K, f)
    factors: dict[tuple[int, ...], int] = {}
    scale_mult = 1
    while deg(f) > 0:
        fp = derivative(K, f)
        if fp:
            w = divmod_(K, f, gcd(K, f, fp))[0]  # squarefree, same radical
            for g, d in _ddf(K, w):
                for irr in _edf(K, g, d):
                    m = multiplicity(K, f, irr)
                    factors[irr] = factors.get(irr, 0) + m * scale_mult
                    for _ in range(m):
                        f = divmod_(K, f, irr)[0]
        else:
            # f is a p-th power
            f = _pth_root_poly(K, f)
            scale_mult *= K.p
    out = sorted(factors.items(), key=lambda it: (deg(it[0]), int_key(K, it[0])))
    return unit, out


def poly_factor(K: Field, f) -> list[tuple[tuple[int, ...], int]]:
    """Monic irreducible factors with multiplicities (unit dropped)."""
    return factor(K, f)[1]


# -- rendering ---------------------------------------------------------------

def to_str(K: Field, f, var: str = "x") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(var if c == 1 else f"{c}*{var}")
        else:
            parts.append(f"{var}^{i}" if c == 1 else f"{c}*{var}^{i}")
    return "+".join(parts)


def from_str(K: Field, s: str, var: str = "x") -> tuple[int, ...]:
    s = s.strip().replace(" ", "")
    if s in ("0", ""):
        return ZERO
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        if not term:
            raise ValueError(f"malformed polynomial {s!r}")
        if var in term:
            cpart, _, epart = term.partition(var)
            cpart = cpart.rstrip("*")
            c = int(cpart) if cpart else 1
            e = int(epart[1:]) if epart.startswith("^") else (1 if not epart else None)
            if e is None:
                raise ValueError(f"malformed term {term!r}")
        else:
            c, e = int(term), 0
        if not 0 <= c < K.q:
            raise ValueError(f"coefficient {c} out of range for GF({K.q})")
        coeffs[e] = K.add(coeffs.get(e, 0), c)
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return trim(out)
