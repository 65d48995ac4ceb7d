"""Bernoulli numbers, Euler numbers and generalized Bernoulli numbers mod p.

Only residues mod p are computed here. Conventions: ``B_1 = -1/2`` (the
generating function is ``t / (e^t - 1)``), and ``E_n`` comes from
``2 / (e^t + e^-t) = sum E_n t^n / n!``.

Witness encodings follow the usual table legend: an odd integer ``2n - 1``
records ``p | zeta(1 - 2n)``; an even integer ``2n`` records
``p | L(chi, -2n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import NamedTuple

import numpy as np

from .arith import PrimeCtx, kronecker, prime_ctx
from .errors import ConductorNotCoprime


class Verdict(NamedTuple):
    ok: bool
    witnesses: list[int]


@lru_cache(maxsize=64)
def binomial_rows(p: int, nmax: int) -> tuple[tuple[int, ...], ...]:
    """Pascal's triangle mod p, rows 0..nmax."""
    rows = [(1,)]
    for n in range(1, nmax + 1):
        prev = rows[-1]
        rows.append((1,) + tuple((prev[k - 1] + prev[k]) % p for k in range(1, n)) + (1,))
    return tuple(rows)


@dataclass(frozen=True)
class BernoulliTable:
    """``B_k mod p`` for k in {0, 1} and even ``2 <= k <= p - 3``."""

    p: int
    values: dict[int, int] = field(repr=False)

    def __getitem__(self, k: int) -> int:
        if k > 1 and k % 2:
            return 0
        return self.values[k]

    def __contains__(self, k: int) -> bool:
        return k in self.values or (k > 1 and k % 2 == 1 and k <= self.p - 2)


@dataclass(frozen=True)
class EulerTable:
    """``E_k mod p`` for even ``0 <= k <= p - 3``; odd-index values vanish."""

    p: int
    values: dict[int, int] = field(repr=False)

    def __getitem__(self, k: int) -> int:
        if k % 2:
            return 0
        return self.values[k]


@lru_cache(maxsize=64)
def bernoulli_table(p: int) -> BernoulliTable:
    ctx = prime_ctx(p)
    top = p - 3
    rows = binomial_rows(p, max(top + 1, 2))
    B = [0] * (max(top, 1) + 1)
    B[0] = 1
    B[1] = (p - 1) * ctx.inv(2) % p
    # sum_{k<=m} C(m+1, k) B_k = 0, solved for B_m; m + 1 <= p - 2 is invertible.
    for m in range(2, top + 1, 2):
        row = rows[m + 1]
        s = row[0] * B[0] + row[1] * B[1]
        for k in range(2, m, 2):
            s += row[k] * B[k]
        B[m] = -s * ctx.inv(m + 1) % p
    values = {0: 1, 1: B[1]}
    values.update({k: B[k] for k in range(2, top + 1, 2)})
    return BernoulliTable(p, values)


@lru_cache(maxsize=64)
def euler_table(p: int) -> EulerTable:
    top = p - 3
    rows = binomial_rows(p, max(top, 0))
    E = {0: 1}
    # sum_{j<=n} C(2n, 2j) E_{2j} = 0 for n >= 1.
    for m in range(2, top + 1, 2):
        row = rows[m]
        E[m] = -sum(row[j] * E[j] for j in range(0, m, 2)) % p
    return EulerTable(p, E)


def is_regular(p: int) -> Verdict:
    """Kummer regularity: p divides none of B_2, ..., B_{p-3}."""
    table = bernoulli_table(p)
    witnesses = [k - 1 for k in range(2, p - 2, 2) if table[k] == 0]
    return Verdict(not witnesses, witnesses)


@dataclass(frozen=True)
class QuadChar:
    """Kronecker character ``a -> (d|a)`` of a negative fundamental discriminant."""

    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise ValueError("only imaginary quadratic characters are supported")

    @cached_property
    def values(self) -> tuple[int, ...]:
        return tuple(kronecker(self.d, a) for a in range(-self.d))

    @property
    def conductor(self) -> int:
        return -self.d

    def __call__(self, a: int) -> int:
        return self.values[a % self.conductor]


@lru_cache(maxsize=4096)
def quad_char(d: int) -> QuadChar:
    return QuadChar(d)


def _char_power_sums(chi: QuadChar, ctx: PrimeCtx, jmax: int) -> list[int]:
    """``S_j = sum_{a=1}^f chi(a) (a/f)^j mod p`` for j = 0..jmax."""
    p, f = ctx.p, chi.conductor
    finv = pow(f, -1, p)
    a = np.arange(1, f + 1, dtype=np.int64)
    ch = np.array(chi.values[1:] + chi.values[:1], dtype=np.int64)
    keep = ch != 0
    x = (a[keep] % p) * finv % p
    ch = ch[keep]
    sums = []
    pw = np.ones_like(x)
    for _ in range(jmax + 1):
        sums.append(int((ch * pw).sum()) % p)
        pw = pw * x % p
    return sums


def gen_bernoulli_residues(chi: QuadChar, ctx: PrimeCtx, nmax: int) -> list[int]:
    """``B_{n,chi} mod p`` for n = 0..nmax (nmax <= p - 2).

    Uses ``B_{n,chi} = f^(n-1) sum_a chi(a) B_n(a/f)`` with the Bernoulli
    polynomial expanded over the character power sums.
    """
    p, f = ctx.p, chi.conductor
    if f % p == 0:
        raise ConductorNotCoprime(f"p = {p} divides the conductor {f}")
    if nmax > p - 2:
        raise ValueError(f"n must be at most p - 2 = {p - 2}")
    table = bernoulli_table(p)
    rows = binomial_rows(p, max(nmax, 1))
    S = _char_power_sums(chi, ctx, nmax)
    finv = pow(f, -1, p)
    out = []
    for n in range(nmax + 1):
        row = rows[n]
        poly_sum = sum(row[k] * table[k] * S[n - k] for k in range(n + 1) if k < 2 or k % 2 == 0)
        scale = pow(f, n - 1, p) if n >= 1 else finv
        out.append(poly_sum * scale % p)
    return out


def gen_bernoulli_mod_p(n: int, chi: QuadChar, ctx: PrimeCtx) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return gen_bernoulli_residues(chi, ctx, n)[n]


def l_condition(chi: QuadChar, ctx: PrimeCtx) -> Verdict:
    """p divides none of L(chi, -2), ..., L(chi, 3 - p).

    ``L(chi, -2n) = -B_{2n+1,chi} / (2n+1)`` with ``2n + 1 <= p - 2``.
    """
    p = ctx.p
    if gcd(chi.conductor, p) != 1:
        raise ConductorNotCoprime(f"p = {p} divides the conductor {chi.conductor}")
    if p < 5:
        return Verdict(True, [])
    B = gen_bernoulli_residues(chi, ctx, p - 2)
    witnesses = [m for m in range(2, p - 2, 2) if B[m + 1] == 0]
    return Verdict(not witnesses, witnesses)
