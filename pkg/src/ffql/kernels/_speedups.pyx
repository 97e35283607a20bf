# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled prime-field polynomial kernels (same contract as _ref.py)."""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "cython"


cdef long long* _buf(object seq, Py_ssize_t* n_out) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef long long* out = <long long*> malloc((n if n else 1) * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    n_out[0] = n
    return out


cdef list _lst(long long* a, Py_ssize_t n):
    cdef Py_ssize_t i
    return [a[i] for i in range(n)]


cdef inline Py_ssize_t _trim_len(long long* a, Py_ssize_t n):
    while n and a[n - 1] == 0:
        n -= 1
    return n


cdef inline long long _modpow_int(long long b, long long e, long long p):
    cdef long long out = 1
    b %= p
    while e:
        if e & 1:
            out = out * b % p
        b = b * b % p
        e >>= 1
    return out


def trim(a):
    cdef Py_ssize_t n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return list(a[:n])


def poly_add(a, b, long long p):
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t na, nb, i
    cdef long long* x = _buf(a, &na)
    cdef long long* y = _buf(b, &nb)
    for i in range(nb):
        x[i] = (x[i] + y[i]) % p
    out = _lst(x, _trim_len(x, na))
    free(x)
    free(y)
    return out


def poly_sub(a, b, long long p):
    cdef Py_ssize_t na, nb, i, n
    cdef long long* x = _buf(a, &na)
    cdef long long* y = _buf(b, &nb)
    n = na if na > nb else nb
    cdef long long* z = <long long*> malloc((n if n else 1) * sizeof(long long))
    if z == NULL:
        free(x)
        free(y)
        raise MemoryError()
    for i in range(n):
        z[i] = ((x[i] if i < na else 0) - (y[i] if i < nb else 0)) % p
        if z[i] < 0:
            z[i] += p
    out = _lst(z, _trim_len(z, n))
    free(x)
    free(y)
    free(z)
    return out


def poly_neg(a, long long p):
    return [(p - c) % p for c in a]


cdef Py_ssize_t _mul_raw(long long* a, Py_ssize_t na, long long* b,
                         Py_ssize_t nb, long long* out, long long p):
    # out must have room for na + nb - 1 entries
    cdef Py_ssize_t i, j, n
    if na == 0 or nb == 0:
        return 0
    n = na + nb - 1
    for i in range(n):
        out[i] = 0
    for i in range(na):
        if a[i]:
            for j in range(nb):
                out[i + j] += a[i] * b[j]
        if (i & 15) == 15:
            for j in range(n):
                out[j] %= p
    for j in range(n):
        out[j] %= p
    return _trim_len(out, n)


def poly_mul(a, b, long long p):
    cdef Py_ssize_t na, nb, n
    cdef long long* x = _buf(a, &na)
    cdef long long* y = _buf(b, &nb)
    if na == 0 or nb == 0:
        free(x)
        free(y)
        return []
    cdef long long* z = <long long*> malloc((na + nb - 1) * sizeof(long long))
    if z == NULL:
        free(x)
        free(y)
        raise MemoryError()
    n = _mul_raw(x, na, y, nb, z, p)
    out = _lst(z, n)
    free(x)
    free(y)
    free(z)
    return out


cdef Py_ssize_t _mod_raw(long long* r, Py_ssize_t nr, long long* b,
                         Py_ssize_t nb, long long p):
    # r <- r mod b in place; returns trimmed length of the remainder
    cdef Py_ssize_t i, j
    cdef long long inv_lb, f
    if nb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lb = _modpow_int(b[nb - 1], p - 2, p)
    for i in range(nr - 1, nb - 2, -1):
        f = r[i] % p
        if f:
            f = f * inv_lb % p
            for j in range(nb):
                r[i - nb + 1 + j] = (r[i - nb + 1 + j] - f * b[j]) % p
                if r[i - nb + 1 + j] < 0:
                    r[i - nb + 1 + j] += p
    return _trim_len(r, nb - 1 if nr >= nb else nr)


def poly_divmod(a, b, long long p):
    cdef Py_ssize_t na, nb, i, j
    cdef long long inv_lb, f
    cdef long long* r = _buf(a, &na)
    cdef long long* d = _buf(b, &nb)
    if nb == 0:
        free(r)
        free(d)
        raise ZeroDivisionError("polynomial division by zero")
    if na < nb:
        out = ([], _lst(r, _trim_len(r, na)))
        free(r)
        free(d)
        return out
    cdef long long* q = <long long*> malloc((na - nb + 1) * sizeof(long long))
    if q == NULL:
        free(r)
        free(d)
        raise MemoryError()
    for i in range(na - nb + 1):
        q[i] = 0
    inv_lb = _modpow_int(d[nb - 1], p - 2, p)
    for i in range(na - 1, nb - 2, -1):
        f = r[i] % p
        if f:
            f = f * inv_lb % p
            q[i - nb + 1] = f
            for j in range(nb):
                r[i - nb + 1 + j] = (r[i - nb + 1 + j] - f * d[j]) % p
                if r[i - nb + 1 + j] < 0:
                    r[i - nb + 1 + j] += p
    out = (_lst(q, _trim_len(q, na - nb + 1)), _lst(r, _trim_len(r, nb - 1)))
    free(r)
    free(d)
    free(q)
    return out


def poly_mod(a, b, long long p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, long long p):
    cdef Py_ssize_t na, nb, i
    cdef long long inv
    cdef long long* x = _buf(a, &na)
    cdef long long* y = _buf(b, &nb)
    na = _trim_len(x, na)
    nb = _trim_len(y, nb)
    cdef long long* t
    cdef Py_ssize_t nt
    while nb:
        nt = _mod_raw(x, na, y, nb, p)
        t = x
        x = y
        y = t
        na = nb
        nb = nt
    if na:
        inv = _modpow_int(x[na - 1], p - 2, p)
        for i in range(na):
            x[i] = x[i] * inv % p
    out = _lst(x, na)
    free(x)
    free(y)
    return out


def poly_invmod(a, m, long long p):
    # extended Euclid at the Python level; the modular steps use the raw core
    r0, r1 = trim(m), poly_mod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible")
    cdef long long inv = _modpow_int(r0[0], p - 2, p)
    return [c * inv % p for c in s0]


def poly_mulmod(a, b, m, long long p):
    cdef Py_ssize_t na, nb, nm, n
    cdef long long* x = _buf(a, &na)
    cdef long long* y = _buf(b, &nb)
    cdef long long* mm = _buf(m, &nm)
    if na == 0 or nb == 0:
        free(x); free(y); free(mm)
        return []
    cdef long long* z = <long long*> malloc((na + nb - 1) * sizeof(long long))
    if z == NULL:
        free(x); free(y); free(mm)
        raise MemoryError()
    n = _mul_raw(x, na, y, nb, z, p)
    n = _mod_raw(z, n, mm, nm, p)
    out = _lst(z, n)
    free(x); free(y); free(mm); free(z)
    return out


def poly_powmod(a, e, m, long long p):
    if e < 0:
        raise ValueError("negative exponent")
    cdef Py_ssize_t nm, nb, nr, cap
    cdef long long* mm = _buf(m, &nm)
    nm = _trim_len(mm, nm)
    if nm == 0:
        free(mm)
        raise ZeroDivisionError("zero modulus")
    cap = 2 * nm + 2
    cdef long long* base = <long long*> malloc(cap * sizeof(long long))
    cdef long long* res = <long long*> malloc(cap * sizeof(long long))
    cdef long long* scratch = <long long*> malloc(2 * cap * sizeof(long long))
    if base == NULL or res == NULL or scratch == NULL:
        free(mm)
        if base != NULL: free(base)
        if res != NULL: free(res)
        if scratch != NULL: free(scratch)
        raise MemoryError()
    cdef Py_ssize_t i
    seq = poly_mod(a, m, p)
    nb = len(seq)
    for i in range(nb):
        base[i] = seq[i]
    res[0] = 1
    nr = 1
    ee = e
    while ee:
        if ee & 1:
            nr = _mul_raw(res, nr, base, nb, scratch, p)
            nr = _mod_raw(scratch, nr, mm, nm, p)
            for i in range(nr):
                res[i] = scratch[i]
        ee >>= 1
        if ee:
            nb = _mul_raw(base, nb, base, nb, scratch, p)
            nb = _mod_raw(scratch, nb, mm, nm, p)
            for i in range(nb):
                base[i] = scratch[i]
    out = _lst(res, nr)
    free(mm); free(base); free(res); free(scratch)
    return out


def poly_eval(a, long long x, long long p):
    cdef long long acc = 0
    for c in reversed(a):
        acc = (acc * x + <long long> c) % p
    return acc


def residue_symbol(a, m, long long p):
    """Quadratic residue symbol of a in GF(p)[x]/(m), m irreducible, p odd."""
    red = poly_mod(a, m, p)
    if not red:
        return 0
    cdef Py_ssize_t d = len(m) - 1
    e = (int(p) ** int(d) - 1) // 2  # exact Python integer exponent
    t = poly_powmod(red, e, m, p)
    return 1 if t == [1] else -1


def abs_trace2(a, m):
    """Absolute trace GF(2^d) -> GF(2) of a mod m, m irreducible over GF(2)."""
    cdef Py_ssize_t nm, nt, nacc, i, step
    cdef Py_ssize_t d = len(m) - 1
    cdef long long* mm = _buf(m, &nm)
    cdef long long* t = <long long*> malloc((nm + 2) * sizeof(long long))
    cdef long long* acc = <long long*> malloc((nm + 2) * sizeof(long long))
    cdef long long* scratch = <long long*> malloc((4 * nm + 8) * sizeof(long long))
    if t == NULL or acc == NULL or scratch == NULL:
        free(mm)
        if t != NULL: free(t)
        if acc != NULL: free(acc)
        if scratch != NULL: free(scratch)
        raise MemoryError()
    seq = poly_mod(a, m, 2)
    nt = len(seq)
    for i in range(nt):
        t[i] = seq[i]
        acc[i] = seq[i]
    nacc = nt
    for step in range(d - 1):
        nt = _mul_raw(t, nt, t, nt, scratch, 2)
        nt = _mod_raw(scratch, nt, mm, nm, 2)
        for i in range(nt):
            t[i] = scratch[i]
        # acc += t
        if nt > nacc:
            for i in range(nacc, nt):
                acc[i] = 0
            nacc = nt
        for i in range(nt):
            acc[i] = (acc[i] + t[i]) & 1
        nacc = _trim_len(acc, nacc)
    if nacc > 1:
        free(mm); free(t); free(acc); free(scratch)
        raise ArithmeticError("trace did not land in the prime field")
    cdef long long out = acc[0] if nacc else 0
    free(mm); free(t); free(acc); free(scratch)
    return out
