"""Slow exact-rational reference implementations used only by the tests."""

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def kronecker_naive(d, n):
    """(d|n) from the prime factorisation of n > 0, with the (d|2) rule."""
    out = 1
    m = n
    q = 2
    while m > 1:
        if q * q > m:
            q = m
        while m % q == 0:
            m //= q
            if q == 2:
                out *= 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
            else:
                out *= legendre(d, q)
        q += 1
    return out


@lru_cache(None)
def bernoulli_exact(n):
    """[B_0, ..., B_n] with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return tuple(B)


@lru_cache(None)
def euler_exact(n):
    """[E_0, ..., E_n] from sum_j C(2m, 2j) E_2j = 0."""
    E = [0] * (n + 1)
    E[0] = 1
    for m in range(2, n + 1, 2):
        E[m] = -sum(comb(m, j) * E[j] for j in range(0, m, 2))
    return tuple(E)


def gen_bernoulli_exact(n, d):
    f = -d
    B = bernoulli_exact(n)
    s = Fraction(0)
    for a in range(1, f + 1):
        c = kronecker_naive(d, a)
        if c:
            s += c * sum(comb(n, k) * B[k] * Fraction(a, f) ** (n - k) for k in range(n + 1))
    return s * Fraction(f) ** (n - 1)


def mod_p(x: Fraction, p):
    assert x.denominator % p
    return x.numerator * pow(x.denominator, -1, p) % p


def class_number_analytic(d):
    f = -d
    w = {-3: 6, -4: 4}.get(d, 2)
    s = sum(kronecker_naive(d, a) * a for a in range(1, f) if gcd(a, f) == 1)
    h = Fraction(w, 2 * f) * abs(s)
    assert h.denominator == 1
    return int(h)


def primes_below(n):
    return [q for q in range(2, n) if all(q % r for r in range(2, int(q**0.5) + 1))]
