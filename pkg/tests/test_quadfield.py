from math import isqrt

import pytest
from hypothesis import given, strategies as st

from oracles import class_number_analytic, primes_below
from vrprimes.arith import kronecker, prime_ctx
from vrprimes.errors import NotFundamental, NotPrincipal, NotSplit
from vrprimes.quadfield import (
    IdealRep,
    QuadInt,
    class_number,
    class_number_table,
    enumerate_fundamental,
    gauss_reduce,
    generator_of_ideal_power,
    ideal_power_basis,
    is_fundamental,
    prime_above,
    residue_pair,
    root_of_d_mod_p2,
    units,
)

DISCS_1000 = enumerate_fundamental(1000)


def test_enumerate_fundamental_prefix():
    assert [-d for d in enumerate_fundamental(20)] == [3, 4, 7, 8, 11, 15, 19, 20]
    assert [-d for d in enumerate_fundamental(24)][-2:] == [23, 24]
    assert -12 not in enumerate_fundamental(24)
    assert [-d for d in enumerate_fundamental(24, strict=True)][-1] == 23


def test_enumeration_matches_definition():
    assert enumerate_fundamental(3000) == [d for d in range(-3, -3001, -1) if is_fundamental(d)]


def test_not_fundamental():
    with pytest.raises(NotFundamental):
        class_number(-12)
    with pytest.raises(NotFundamental):
        class_number(5)


def test_class_number_analytic_formula():
    for d in DISCS_1000:
        assert class_number(d) == class_number_analytic(d), d


def test_class_number_sieve_agrees():
    table = class_number_table(5000)
    for d in enumerate_fundamental(5000):
        assert table[-d] == class_number(d)


def test_small_class_numbers():
    assert [class_number(d) for d in (-3, -4, -7, -8, -11, -15, -19, -20, -23, -24)] == [
        1, 1, 1, 1, 1, 2, 1, 2, 3, 2,
    ]


def test_prime_above_examples():
    assert prime_above(-4, prime_ctx(5)) == IdealRep(5, 4, -4)
    P = prime_above(-3, prime_ctx(7))
    assert P.a == 7 and P.b % 2 == 1 and (P.b**2 + 3) % 28 == 0
    with pytest.raises(NotSplit):
        prime_above(-4, prime_ctx(3))


def _has_shorter_vector(A, B, d, n):
    """Exhaustive search of Z(2A, 0) + Z(B, 1) for a nonzero vector of norm < n."""
    ymax = isqrt(4 * n // -d) + 1
    xmax = isqrt(4 * n) + 1
    for y in range(-ymax, ymax + 1):
        x = (B * y) % (2 * A) - 2 * A * (xmax // (2 * A) + 2)
        while x <= xmax:
            if (x, y) != (0, 0) and (x * x - d * y * y) // 4 < n:
                return True
            x += 2 * A
    return False


def test_gauss_reduce_minimal_against_enumeration():
    for d in (-3, -4, -7, -15, -23, -47, -71, -104):
        for p in primes_below(60)[1:]:
            if kronecker(d, p) != 1:
                continue
            P = prime_above(d, prime_ctx(p))
            for h in range(1, 6):
                A, B = ideal_power_basis(P, h)
                if A >= 10**6:
                    break
                short, other = gauss_reduce((2 * A, 0), (B, 1), d)
                n = (short[0] ** 2 - d * short[1] ** 2) // 4
                assert not _has_shorter_vector(A, B, d, n)
                assert (short[0] * other[1] - short[1] * other[0]) in (2 * A, -2 * A)


def test_generator_examples():
    alpha = generator_of_ideal_power(prime_above(-4, prime_ctx(5)), 1)
    assert alpha.norm == 5
    P = prime_above(-23, prime_ctx(3))
    alpha = generator_of_ideal_power(P, 3)
    assert alpha.norm == 27
    assert (abs(alpha.x), abs(alpha.y)) == (4, 2)
    assert generator_of_ideal_power(P, 0) == QuadInt(2, 0, -23)
    with pytest.raises(NotPrincipal):
        generator_of_ideal_power(P, 1)


def test_generator_norms_over_table_range():
    for d in (-3, -4, -7, -8, -11, -15, -19, -20, -23, -24):
        h = class_number(d)
        for p in primes_below(100)[1:]:
            if kronecker(d, p) != 1:
                continue
            ctx = prime_ctx(p)
            alpha = generator_of_ideal_power(prime_above(d, ctx), h)
            assert alpha.norm == p**h
            pair = residue_pair(alpha, ctx)
            assert sum(1 for u in pair if u % p == 0) == 1


@given(st.sampled_from(enumerate_fundamental(3000)), st.sampled_from(primes_below(400)[1:]))
def test_generator_norm_large_class_numbers(d, p):
    if kronecker(d, p) != 1:
        return
    ctx = prime_ctx(p)
    h = class_number(d)
    alpha = generator_of_ideal_power(prime_above(d, ctx), h)
    assert alpha.norm == p**h


def test_residue_pair_examples():
    ctx = prime_ctx(7)
    r = root_of_d_mod_p2(-3, ctx)
    assert residue_pair(QuadInt(2, 0, -3), ctx) == (1, 1)
    assert residue_pair(QuadInt(0, 2, -3), ctx) == (r, ctx.p2 - r)


quad = st.tuples(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))


@given(st.sampled_from([(-3, 7), (-4, 13), (-23, 13), (-8, 11), (-15, 17)]), quad, quad)
def test_residue_pair_is_ring_homomorphism(dp, u, v):
    d, p = dp
    ctx = prime_ctx(p)
    a = QuadInt(2 * u[0] + (u[1] * d) % 2, u[1], d)
    b = QuadInt(2 * v[0] + (v[1] * d) % 2, v[1], d)
    ra, rb = residue_pair(a, ctx), residue_pair(b, ctx)
    for i in range(2):
        assert residue_pair(a * b, ctx)[i] == ra[i] * rb[i] % ctx.p2
        assert residue_pair(a + b, ctx)[i] == (ra[i] + rb[i]) % ctx.p2


@given(quad, quad)
def test_norm_is_multiplicative(u, v):
    d = -19
    a = QuadInt(2 * u[0] + u[1] % 2, u[1], d)
    b = QuadInt(2 * v[0] + v[1] % 2, v[1], d)
    assert (a * b).norm == a.norm * b.norm
    assert (a * a.conjugate()).y == 0


def test_units_have_norm_one():
    for d in (-3, -4, -7):
        us = units(d)
        assert all(u.norm == 1 for u in us)
        assert len(us) == {-3: 6, -4: 4}.get(d, 2)
