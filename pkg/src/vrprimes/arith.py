"""Modular integer arithmetic.

Python's ``int`` is arbitrary precision, so it plays the role of the wide
integer type everywhere (ideal-power lattices need ``p**h`` with ``h`` in the
hundreds). Residues are plain ints in ``[0, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BadSeed, NonInvertible, NonResidue, NotPrime

# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    s, t = 0, n - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    for a in _MR_BASES:
        x = pow(a, t, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes_upto(n: int) -> list[int]:
    return [q for q in range(3, n + 1, 2) if is_prime(q)]


@dataclass(frozen=True)
class PrimeCtx:
    """An odd prime ``p < 2**31`` together with ``p**2`` and small inverses."""

    p: int
    p2: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.p <= 2 or self.p >= 2**31 or not is_prime(self.p):
            raise NotPrime(f"expected an odd prime below 2**31, got {self.p}")
        object.__setattr__(self, "p2", self.p * self.p)
        object.__setattr__(self, "inverses", _inverse_table(self.p))

    def inv(self, a: int) -> int:
        """Inverse of ``a`` mod p."""
        a %= self.p
        if a == 0:
            raise NonInvertible(f"0 has no inverse mod {self.p}")
        if a < len(self.inverses):
            return self.inverses[a]
        return pow(a, -1, self.p)


@lru_cache(maxsize=None)
def _inverse_table(p: int, size: int = 4096) -> tuple[int, ...]:
    n = min(p, size)
    inv = [0] * n
    if n > 1:
        inv[1] = 1
    for a in range(2, n):
        inv[a] = (p - (p // a) * inv[p % a] % p) % p
    return tuple(inv)


@lru_cache(maxsize=None)
def prime_ctx(p: int) -> PrimeCtx:
    return PrimeCtx(p)


def powmod(base: int, exp: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, m)


def invmod(a: int, m: int) -> int:
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NonInvertible(f"{a} is not invertible mod {m}") from None


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n) over all integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_p(a: int, ctx: PrimeCtx) -> int:
    """Square root of ``a`` mod p by Tonelli-Shanks; returns the root in [0, p/2]."""
    p = ctx.p
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def hensel_sqrt(a: int, r0: int, ctx: PrimeCtx, target_modulus: int) -> int:
    """Lift a root ``r0`` of ``x**2 = a`` (mod p) to ``target_modulus = p**k``.

    Returns the unique root in ``[0, target_modulus)`` congruent to ``r0`` mod p.
    """
    p = ctx.p
    if a % p == 0:
        raise BadSeed(f"{a} is divisible by {p}; lifting is not unique")
    if (r0 * r0 - a) % p:
        raise BadSeed(f"{r0}**2 is not {a} mod {p}")
    k, t = 0, target_modulus
    while t % p == 0:
        t //= p
        k += 1
    if t != 1 or k == 0:
        raise ValueError(f"target modulus {target_modulus} is not a power of {p}")
    r, e = r0 % p, 1
    while e < k:
        e = min(2 * e, k)
        m = p**e
        r = (r - (r * r - a) * pow(2 * r, -1, m)) % m
    return r
