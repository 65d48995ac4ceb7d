"""Arithmetic in imaginary quadratic fields Q(sqrt(d)), d a fundamental discriminant.

Elements of the maximal order are written ``(x + y sqrt(d)) / 2`` with
``x = y d (mod 2)``; ideals are ``Z a + Z (b + sqrt(d)) / 2`` with
``b**2 = d (mod 4a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple

import numpy as np

from .arith import PrimeCtx, hensel_sqrt, kronecker, prime_ctx, sqrt_mod_p
from .errors import NotFundamental, NotPrincipal, NotSplit


def is_fundamental(d: int) -> bool:
    if d >= 0:
        return False
    if d % 4 == 1:
        return _squarefree(-d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(-m)
    return False


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    q = 3
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        q += 2
    return True


def check_fundamental(d: int) -> int:
    if not is_fundamental(d):
        raise NotFundamental(f"{d} is not a negative fundamental discriminant")
    return d


def _squarefree_sieve(n: int) -> np.ndarray:
    ok = np.ones(n + 1, dtype=bool)
    ok[0] = False
    q = 2
    while q * q <= n:
        ok[q * q :: q * q] = False
        q += 1
    return ok


def enumerate_fundamental(limit: int, strict: bool = False) -> list[int]:
    """Negative fundamental discriminants with ``|d| <= limit`` (``<`` if strict), by |d|."""
    if limit < 3:
        return []
    top = limit - 1 if strict else limit
    sf = _squarefree_sieve(top)
    out = []
    for n in range(3, top + 1):
        if n % 4 == 3:
            if sf[n]:
                out.append(-n)
        elif n % 4 == 0:
            m = n // 4
            if m % 4 in (1, 2) and sf[m]:
                out.append(-n)
    return out


@dataclass(frozen=True)
class QuadInt:
    """The algebraic integer ``(x + y sqrt(d)) / 2``."""

    x: int
    y: int
    d: int

    def __post_init__(self):
        if (self.x - self.y * self.d) % 2:
            raise ValueError(f"({self.x} + {self.y} sqrt({self.d}))/2 is not integral")

    @classmethod
    def rational(cls, n: int, d: int) -> "QuadInt":
        return cls(2 * n, 0, d)

    @property
    def norm(self) -> int:
        return (self.x * self.x - self.d * self.y * self.y) // 4

    def conjugate(self) -> "QuadInt":
        return QuadInt(self.x, -self.y, self.d)

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.x + other.x, self.y + other.y, self.d)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        x = (self.x * other.x + self.d * self.y * other.y) // 2
        y = (self.x * other.y + self.y * other.x) // 2
        return QuadInt(x, y, self.d)

    def __str__(self):
        return f"({self.x} + {self.y}*sqrt({self.d}))/2"


def units(d: int) -> list[QuadInt]:
    """Roots of unity in the maximal order."""
    if d == -3:
        return [QuadInt(x, y, d) for x, y in ((2, 0), (-2, 0), (1, 1), (1, -1), (-1, 1), (-1, -1))]
    if d == -4:
        return [QuadInt(x, y, d) for x, y in ((2, 0), (-2, 0), (0, 1), (0, -1))]
    return [QuadInt(2, 0, d), QuadInt(-2, 0, d)]


@dataclass(frozen=True)
class IdealRep:
    """The ideal ``Z a + Z (b + sqrt(d)) / 2`` of norm ``a``."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if (self.b * self.b - self.d) % (4 * self.a):
            raise ValueError(f"b**2 != d mod 4a for {self}")

    def conjugate(self) -> "IdealRep":
        return IdealRep(self.a, -self.b, self.d)


class ResiduePair(NamedTuple):
    """Images mod p**2 under the two maps sqrt(d) -> +r and sqrt(d) -> -r."""

    plus: int
    minus: int


def class_number(d: int) -> int:
    """Count reduced forms (a, b, c), b**2 - 4ac = d, |b| <= a <= c, b >= 0 on the boundary."""
    check_fundamental(d)
    D = -d
    h = 0
    b = D % 2
    while 3 * b * b <= D:
        m = (b * b + D) // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                # (a, b, c) and (a, -b, c), unless the sign is forced
                h += 1 if b == 0 or a == b or a * a == m else 2
            a += 1
        b += 2
    return h


def class_number_table(limit: int) -> np.ndarray:
    """Numbers of reduced primitive forms for all discriminants ``-n``, n <= limit.

    Counts every reduced form; for fundamental discriminants all forms are
    primitive, so entries at fundamental ``n`` are class numbers.
    """
    counts = np.zeros(limit + 1, dtype=np.int64)
    amax = isqrt(limit // 3) + 1
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            # c >= a; c == a forces b >= 0
            c0 = a if b >= 0 else a + 1
            cmax = (limit + b * b) // (4 * a)
            if cmax < c0:
                continue
            n = 4 * a * np.arange(c0, cmax + 1, dtype=np.int64) - b * b
            counts[n] += 1
    return counts


def prime_above(d: int, ctx: PrimeCtx) -> IdealRep:
    """The prime ideal (p, (b + sqrt(d))/2) with the smaller b in [0, 2p)."""
    p = ctx.p
    if kronecker(d, p) != 1:
        raise NotSplit(f"{p} does not split in Q(sqrt({d}))")
    r = sqrt_mod_p(d, ctx)
    cands = [b for b in (r, p - r, r + p, 2 * p - r) if 0 <= b < 2 * p and (b - d) % 2 == 0]
    return IdealRep(p, min(cands), d)


def gauss_reduce(u: tuple[int, int], v: tuple[int, int], d: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lagrange-Gauss reduction of a rank-2 lattice under the form x**2 - d y**2.

    Vectors are (x, y) coordinates of ``(x + y sqrt(d))/2``. Returns a reduced
    basis whose first vector is a shortest nonzero vector.
    """

    def dot(s, t):
        return s[0] * t[0] - d * s[1] * t[1]

    nu, nv = dot(u, u), dot(v, v)
    if nu < nv:
        u, v, nu, nv = v, u, nv, nu
    while True:
        # subtract the nearest integer multiple of v from u
        mu = (2 * dot(u, v) + nv) // (2 * nv)
        if mu:
            u = (u[0] - mu * v[0], u[1] - mu * v[1])
            nu = dot(u, u)
        if nu >= nv:
            return v, u
        u, v, nu, nv = v, u, nv, nu


def ideal_power_basis(ideal: IdealRep, h: int) -> tuple[int, int]:
    """``(A, B)`` with ``ideal**h = Z A + Z (B + sqrt(d))/2`` and ``A = p**h``."""
    p, d = ideal.a, ideal.d
    A = p**h
    if h == 1:
        return A, ideal.b
    B = hensel_sqrt(d, ideal.b % p, prime_ctx(p), A)
    if (B - d) % 2:
        B += A
    return A, B


def generator_of_ideal_power(ideal: IdealRep, h: int) -> QuadInt:
    """A generator of ``ideal**h``, which must be principal."""
    d = ideal.d
    if h == 0:
        return QuadInt(2, 0, d)
    A, B = ideal_power_basis(ideal, h)
    short, _ = gauss_reduce((2 * A, 0), (B, 1), d)
    alpha = QuadInt(short[0], short[1], d)
    if alpha.norm != A:
        raise NotPrincipal(f"{ideal}**{h} has no generator (shortest norm {alpha.norm} > {A})")
    return alpha


def root_of_d_mod_p2(d: int, ctx: PrimeCtx) -> int:
    if kronecker(d, ctx.p) != 1:
        raise NotSplit(f"{d} is not a nonzero square mod {ctx.p}")
    return hensel_sqrt(d, sqrt_mod_p(d, ctx), ctx, ctx.p2)


def residue_pair(alpha: QuadInt, ctx: PrimeCtx, root: int | None = None) -> ResiduePair:
    """Images of alpha in Z/p**2 under sqrt(d) -> r and sqrt(d) -> -r."""
    p2 = ctx.p2
    r = root_of_d_mod_p2(alpha.d, ctx) if root is None else root
    inv2 = (p2 + 1) // 2
    return ResiduePair((alpha.x + alpha.y * r) * inv2 % p2, (alpha.x - alpha.y * r) * inv2 % p2)
