"""Reference (pure Python) prime-field polynomial kernels.

Polynomials over GF(p), p prime, are coefficient lists of ints in
[0, p), low degree first, no trailing zeros ([] is the zero polynomial).
The compiled backend in _speedups.pyx implements the same contract; both
are interchangeable and the selection happens in kernels/__init__.py.
"""

BACKEND_NAME = "python"


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return list(a[:n])


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def poly_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def poly_neg(a, p):
    return [(-c) % p for c in a]


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return trim(out)


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return [], trim(r)
    inv_lb = pow(lb, p - 2, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            f = (c * inv_lb) % p
            q[i - db] = f
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - f * b[j]) % p
    return trim(q), trim(r)


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def poly_invmod(a, m, p):
    # extended Euclid; a must be invertible mod m
    r0, r1 = trim(m), poly_mod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible")
    inv = pow(r0[0], p - 2, p)
    return trim([(c * inv) % p for c in s0])


def poly_mulmod(a, b, m, p):
    return poly_mod(poly_mul(a, b, p), m, p)


def poly_powmod(a, e, m, p):
    if e < 0:
        raise ValueError("negative exponent")
    result = [1]
    base = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), m, p)
        base = poly_mod(poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def poly_eval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def residue_symbol(a, m, p):
    """Quadratic residue symbol of a in GF(p)[x]/(m), m irreducible, p odd."""
    a = poly_mod(a, m, p)
    if not a:
        return 0
    d = len(m) - 1
    t = poly_powmod(a, (p ** d - 1) // 2, m, p)
    return 1 if t == [1] else -1


def abs_trace2(a, m):
    """Absolute trace GF(2^d) -> GF(2) of a in GF(2)[x]/(m), m irreducible."""
    a = poly_mod(a, m, 2)
    d = len(m) - 1
    acc = list(a)
    t = a
    for _ in range(d - 1):
        t = poly_mod(poly_mul(t, t, 2), m, 2)
        acc = poly_add(acc, t, 2)
    if len(acc) > 1:
        raise ArithmeticError("trace did not land in the prime field")
    return acc[0] if acc else 0
