"""Very regular primes p for an imaginary quadratic field Q(sqrt(d)).

For a split prime p = P * Pbar the test has three parts:

1. p is Kummer regular (p divides no B_2, ..., B_{p-3});
2. p divides none of L(chi_d, -2), ..., L(chi_d, 3 - p);
3. for h the class number and alpha a generator of P**h, the unit residue
   of alpha mod Pbar**2 satisfies ``u**(p-1) != 1 (mod p**2)``.

All three are always evaluated so reports carry every witness.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from math import isqrt

from .arith import PrimeCtx, kronecker, prime_ctx
from .bernoulli import is_regular, l_condition, quad_char
from .errors import InternalInconsistency, NotOneModFour, NotSplit
from .quadfield import (
    QuadInt,
    check_fundamental,
    class_number,
    enumerate_fundamental,
    generator_of_ideal_power,
    prime_above,
    residue_pair,
    root_of_d_mod_p2,
)

CHECK = "✓"
CROSS = "✗"


class Verdict(str, enum.Enum):
    VERY_REGULAR = "VeryRegular"
    NOT_VERY_REGULAR = "NotVeryRegular"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class VRReport:
    d: int
    p: int
    split: bool
    zeta_witnesses: list[int] = field(default_factory=list)
    l_witnesses: list[int] = field(default_factory=list)
    artin_ok: bool | None = None
    verdict: Verdict = Verdict.NOT_APPLICABLE

    def to_dict(self) -> dict:
        out = asdict(self)
        out["verdict"] = self.verdict.value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "VRReport":
        data = dict(data)
        data["verdict"] = Verdict(data["verdict"])
        return cls(**data)

    def cell(self) -> str:
        """Table-cell text: blank, a tick, or witnesses (ascending) then a cross."""
        if not self.split:
            return ""
        if self.verdict is Verdict.VERY_REGULAR:
            return CHECK
        parts = [",".join(str(w) for w in sorted(self.zeta_witnesses + self.l_witnesses))]
        if self.artin_ok is False:
            parts.append(CROSS)
        return ", ".join(s for s in parts if s)


def _units_mod_w_ok(d: int, p: int) -> None:
    w = {-3: 6, -4: 4}.get(d, 2)
    if w % p == 0:
        raise ValueError(f"p = {p} divides the number of roots of unity of Q(sqrt({d}))")


def artin_unit(
    d: int,
    ctx: PrimeCtx,
    conjugate: bool = False,
    flip_root: bool = False,
    unit: QuadInt | None = None,
    h: int | None = None,
) -> int:
    """The unit residue mod p**2 of a generator of P**h.

    ``conjugate`` uses Pbar in place of P; ``flip_root`` uses -r for the
    square root of d mod p**2; ``unit`` multiplies the generator first. None
    of these should change the verdict; they exist for the symmetry checks.
    """
    ideal = prime_above(d, ctx)
    if conjugate:
        ideal = ideal.conjugate()
    if h is None:
        h = class_number(d)
    alpha = generator_of_ideal_power(ideal, h)
    if unit is not None:
        alpha = alpha * unit
    r = root_of_d_mod_p2(d, ctx)
    if flip_root:
        r = ctx.p2 - r
    u_plus, u_minus = residue_pair(alpha, ctx, root=r)
    units = [u for u in (u_plus, u_minus) if u % ctx.p]
    if len(units) != 1:
        raise InternalInconsistency(f"residues {u_plus}, {u_minus} of {alpha} mod {ctx.p}**2")
    return units[0]


def artin_condition(d: int, ctx: PrimeCtx, **kwargs) -> bool:
    """True when the projection of P**h generates (1 + Pbar)/(1 + Pbar**2)."""
    check_fundamental(d)
    if kronecker(d, ctx.p) != 1:
        raise NotSplit(f"{ctx.p} does not split in Q(sqrt({d}))")
    _units_mod_w_ok(d, ctx.p)
    u = artin_unit(d, ctx, **kwargs)
    return pow(u, ctx.p - 1, ctx.p2) != 1


def two_squares(p: int) -> tuple[int, int]:
    """``(a, b)`` with ``a**2 + b**2 = p`` for a prime ``p = 1 (mod 4)`` (Cornacchia)."""
    if p % 4 != 1:
        raise NotOneModFour(f"{p} is not 1 mod 4")
    ctx = prime_ctx(p)
    # r**2 = -1 mod p, via a quadratic non-residue
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    r = pow(z, (p - 1) // 4, p)
    a, b = p, r if r > ctx.p // 2 else p - r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    assert b * b + c * c == p
    return b, c


def artin_condition_gaussian(ctx: PrimeCtx) -> bool:
    """The d = -4 form of the condition: ``(4ab)**(p-1) != 1 (mod p**2)``."""
    a, b = two_squares(ctx.p)
    return pow(4 * a * b, ctx.p - 1, ctx.p2) != 1


def very_regular(d: int, ctx: PrimeCtx, h: int | None = None) -> VRReport:
    check_fundamental(d)
    p = ctx.p
    if kronecker(d, p) != 1:
        return VRReport(d, p, split=False)
    zeta = is_regular(p)
    lval = l_condition(quad_char(d), ctx)
    artin_ok = artin_condition(d, ctx, h=h)
    ok = zeta.ok and lval.ok and artin_ok
    return VRReport(
        d,
        p,
        split=True,
        zeta_witnesses=list(zeta.witnesses),
        l_witnesses=list(lval.witnesses),
        artin_ok=artin_ok,
        verdict=Verdict.VERY_REGULAR if ok else Verdict.NOT_VERY_REGULAR,
    )


def list_very_regular_discriminants(p: int, limit: int) -> list[int]:
    """|d| for fundamental d with |d| <= limit at which p is very regular."""
    ctx = prime_ctx(p)
    return [
        -d
        for d in enumerate_fundamental(limit)
        if very_regular(d, ctx).verdict is Verdict.VERY_REGULAR
    ]
