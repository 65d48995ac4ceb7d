import pytest
from hypothesis import given, strategies as st

from oracles import kronecker_naive, legendre, primes_below
from vrprimes.arith import (
    hensel_sqrt,
    invmod,
    is_prime,
    kronecker,
    odd_primes_upto,
    powmod,
    prime_ctx,
    sqrt_mod_p,
)
from vrprimes.errors import BadSeed, NonInvertible, NonResidue, NotPrime


def test_powmod_examples():
    assert powmod(8, 4, 25) == 21
    assert powmod(7, 12, 13) == 1
    assert powmod(123, 0, 7) == 1


@given(st.integers(0, 10**6), st.integers(0, 200), st.integers(2, 10**6))
def test_powmod_matches_builtin(b, e, m):
    assert powmod(b, e, m) == pow(b, e, m)


def test_invmod():
    assert invmod(6, 5) == 1
    assert invmod(2, 9) == 5
    with pytest.raises(NonInvertible):
        invmod(3, 9)


@given(st.integers(1, 10**9), st.sampled_from(primes_below(2000)))
def test_invmod_is_inverse(a, p):
    if a % p:
        assert a * invmod(a, p) % p == 1


def test_kronecker_examples():
    assert kronecker(-4, 5) == 1
    assert kronecker(-4, 3) == -1
    assert kronecker(-3, 3) == 0


def test_kronecker_euler_criterion_small_primes():
    for p in primes_below(200)[1:]:
        for a in range(-2 * p, 2 * p):
            assert kronecker(a, p) == legendre(a, p)


@given(st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_against_factorisation(d, n):
    if d % 4 in (0, 1):
        assert kronecker(d, n) == kronecker_naive(d, n)


@given(st.integers(-300, 300), st.integers(-300, 300), st.integers(1, 300))
def test_kronecker_multiplicative_top(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-300, 300), st.integers(1, 300), st.integers(1, 300))
def test_kronecker_multiplicative_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_primality():
    small = set(primes_below(5000))
    assert [n for n in range(5000) if is_prime(n)] == sorted(small)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to 2, 3, 5, 7
    assert odd_primes_upto(20) == [3, 5, 7, 11, 13, 17, 19]


def test_prime_ctx_rejects_composites():
    with pytest.raises(NotPrime):
        prime_ctx(9)
    with pytest.raises(NotPrime):
        prime_ctx(2)


def test_sqrt_mod_p():
    assert sqrt_mod_p(4, prime_ctx(5)) == 2
    assert sqrt_mod_p(9, prime_ctx(13)) == 3
    with pytest.raises(NonResidue):
        sqrt_mod_p(2, prime_ctx(5))


@given(st.sampled_from(primes_below(3000)[1:]), st.integers(1, 10**6))
def test_sqrt_mod_p_squares(p, a):
    ctx = prime_ctx(p)
    a %= p
    if a and legendre(a, p) == 1:
        r = sqrt_mod_p(a, ctx)
        assert r * r % p == a and r <= p - r


def test_hensel_examples():
    ctx = prime_ctx(5)
    lift = hensel_sqrt(-4, 4, ctx, 25)
    brute = [x for x in range(25) if x % 5 == 4 and (x * x + 4) % 25 == 0]
    assert [lift] == brute == [14]
    assert hensel_sqrt(-4, 4, ctx, 5) == 4
    assert hensel_sqrt(9, 3, ctx, 125) == 3
    with pytest.raises(BadSeed):
        hensel_sqrt(-4, 2, ctx, 25)
    with pytest.raises(BadSeed):
        hensel_sqrt(10, 0, ctx, 25)


@given(st.sampled_from(primes_below(200)[1:]), st.integers(1, 10**4), st.integers(1, 6))
def test_hensel_lifts(p, a, k):
    ctx = prime_ctx(p)
    if a % p == 0 or legendre(a, p) != 1:
        return
    r0 = sqrt_mod_p(a % p, ctx)
    m = p**k
    r = hensel_sqrt(a, r0, ctx, m)
    assert (r * r - a) % m == 0 and r % p == r0
