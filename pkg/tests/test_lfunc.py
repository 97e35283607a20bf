"""L-polynomials: definition sums vs point counts, reciprocal series,
critical-circle check, zeta closed forms."""

import cmath
import random

import pytest

from ffql.errors import PoleAt
from ffql.lfunc import (LPolynomial, chi_series_coefficients, degree_one_place_count,
                        durand_kerner, lfunc_eval, lstar_by_point_counts,
                        lstar_coefficients, lstar_coefficients_by_divisor_sum,
                        lstar_inverse_series, power_sums_from_coeffs, rh_check,
                        squarefree_part_int, zeta_rational)
from ffql.quadext import quadext_from_artin_schreier, quadext_from_kummer
from ffql.ratfunc import ratfunc_from_str


def test_zeta_values(b2, b3):
    assert abs(zeta_rational(b3, 2) - 27 / 16) < 1e-12
    assert abs(zeta_rational(b2, 2) - 8 / 3) < 1e-12
    with pytest.raises(PoleAt):
        zeta_rational(b3, 1)
    with pytest.raises(PoleAt):
        zeta_rational(b3, 0)


def test_lstar_known_curves(b2, b3):
    F = quadext_from_kummer(b3, ratfunc_from_str(b3.field, "x^3+2*x"))
    assert lstar_coefficients(F).coeffs == (1, 0, 3)
    G = quadext_from_artin_schreier(b2, ratfunc_from_str(b2.field, "x^3"))
    assert lstar_coefficients(G).coeffs == (1, 0, 2)


def test_lstar_genus_zero(b3, cache):
    for F in cache.family(b3, 0)[:5]:
        assert lstar_coefficients(F).coeffs == (1,)
        assert lfunc_eval(F, 1.7) == 1


def test_lstar_divisor_sum_agrees_with_production(b2, b3, cache):
    rng = random.Random(11)
    for base in (b2, b3):
        fam = cache.family(base, 1)
        for F in rng.sample(fam, 12):
            direct = lstar_coefficients_by_divisor_sum(F, 2 * F.genus)
            assert direct == lstar_coefficients(F).coeffs


def test_lstar_tail_vanishes(b2, b3, cache):
    # the definition sums vanish identically beyond degree 2*genus
    rng = random.Random(12)
    for base in (b2, b3):
        for m in (1, 2):
            fam = cache.family(base, m)
            for F in rng.sample(fam, 6):
                tail = lstar_coefficients_by_divisor_sum(F, 2 * m + 3)[2 * m + 1:]
                assert tail == (0, 0, 0)


def test_lstar_point_count_oracle(b2, b3, cache):
    rng = random.Random(13)
    for base in (b2, b3):
        for m in (1, 2):
            fam = cache.family(base, m)
            for F in rng.sample(fam, 10):
                assert lstar_by_point_counts(F) == lstar_coefficients(F).coeffs


def test_degree_trace_consistency(b2, b3, cache):
    # 1 + c_1 + (q+1)... : N_1 read off the coefficient equals the direct
    # splitting count of degree-one places
    for base in (b2, b3):
        for F in cache.family(base, 1):
            c1 = lstar_coefficients(F).coeffs[1]
            assert degree_one_place_count(F) == base.q + 1 + c1


def test_functional_equation(b2, b3, cache):
    for base in (b2, b3):
        for m in (1, 2):
            for F in cache.family(base, m):
                c = lstar_coefficients(F).coeffs
                g = F.genus
                assert all(c[2 * g - n] == base.q ** (g - n) * c[n]
                           for n in range(g + 1))


def test_eval_consistency(b3, cache):
    for F in cache.family(b3, 1)[:20]:
        lp = lstar_coefficients(F)
        for s in (1.0, 2.0, 0.5 + 1.3j):
            u = 3 ** (-complex(s)) if isinstance(s, complex) else 3.0 ** (-s)
            direct = sum(c * u ** i for i, c in enumerate(lp.coeffs))
            assert abs(lfunc_eval(F, s) - direct) <= 1e-12 * max(1.0, abs(direct))


def test_lfunc_eval_examples(b3):
    F = quadext_from_kummer(b3, ratfunc_from_str(b3.field, "x^3+2*x"))
    assert abs(lfunc_eval(F, 1) - 4 / 3) < 1e-12
    # on the critical line the modulus equals the product over roots
    lp = lstar_coefficients(F)
    u = 3 ** (-0.5 + 0.7j * 1j) if False else 3 ** complex(-0.5, -0.7)
    roots = durand_kerner([complex(c) for c in lp.coeffs])
    prod = lp.coeffs[-1]
    for r in roots:
        prod *= (u - r)
    # compare |L(u)| with |lc| * prod |u - root|
    assert abs(abs(lp.eval_u(u)) - abs(prod)) < 1e-9


def test_inverse_series_examples(b3, cache):
    F = quadext_from_kummer(b3, ratfunc_from_str(b3.field, "x^3+2*x"))
    b = lstar_inverse_series(F, 8)
    assert b[0] == 1
    assert b == (1, 0, -3, 0, 9, 0, -27, 0, 81)
    for F0 in cache.family(b3, 0)[:3]:
        assert lstar_inverse_series(F0, 5) == (1, 0, 0, 0, 0, 0)


def test_inverse_series_is_mobius_sum(b3, cache):
    # b_n literally equals the mobius-weighted divisor sum
    from ffql.chars import chi_divisor
    from ffql.places import effective_divisors, mobius

    for F in cache.family(b3, 1)[:6]:
        b = lstar_inverse_series(F, 4)
        for n in range(5):
            literal = sum(mobius(a) * chi_divisor(F, a)
                          for a in effective_divisors(b3, n))
            assert b[n] == literal


def test_convolution_identity(b2, b3, cache):
    rng = random.Random(14)
    for base in (b2, b3):
        for m in (1, 2):
            fam = cache.family(base, m)
            for F in rng.sample(fam, min(25, len(fam))):
                c = lstar_coefficients(F).coeffs
                b = lstar_inverse_series(F, 10)
                for n in range(11):
                    conv = sum((c[j] if j < len(c) else 0) * b[n - j]
                               for j in range(n + 1))
                    assert conv == (1 if n == 0 else 0)


def test_rh_closed_forms(b2, b3):
    assert rh_check(LPolynomial(3, 1, (1, 0, 3))) < 1e-12
    assert rh_check(LPolynomial(2, 1, (1, 0, 2))) < 1e-12
    # repeated-root polynomial still measured exactly via the squarefree part
    assert rh_check(LPolynomial(3, 2, (1, 0, 6, 0, 9))) < 1e-12
    # an off-circle polynomial is detected
    assert rh_check(LPolynomial(3, 1, (1, 0, 8))) > 0.05


def test_squarefree_part():
    sf = squarefree_part_int((1, 0, 6, 0, 9))
    assert [float(c) for c in sf[-3:]] == [3.0, 0.0, 9.0]


def test_power_sums_from_coeffs():
    # roots of 1 - 5u + 6u^2 = (1-2u)(1-3u): S_k = 2^k + 3^k
    S = power_sums_from_coeffs((1, -5, 6), 5)
    assert S == [2 ** k + 3 ** k for k in range(1, 6)]
