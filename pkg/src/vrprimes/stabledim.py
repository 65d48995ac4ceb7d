"""Poincare series of stable completed cohomology, and a small bigraded engine.

Series have exact integer coefficients and an explicit truncation degree.
Anything that assumes the p-adic Borel regulator classes are infinitely
divisible (automatic for regular p) is reported with ``conditional: True``.

Two constants for F = Q are kept as documentation only: completed H_2 has
rank one, and ``dim H~_4 - dim H~_5 = 1``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import InternalInconsistency, NonConvergence


class TruncSeries:
    """Integer power series ``sum c_n q^n`` known up to degree ``D`` inclusive."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int], D: int | None = None):
        c = [int(x) for x in coeffs]
        if D is not None:
            c = (c + [0] * (D + 1))[: D + 1]
        if not c:
            raise ValueError("a truncated series needs at least the constant term")
        self.coeffs = c

    @classmethod
    def one(cls, D: int) -> "TruncSeries":
        return cls([1], D)

    @classmethod
    def monomial(cls, n: int, D: int, c: int = 1) -> "TruncSeries":
        s = [0] * (D + 1)
        if n <= D:
            s[n] = c
        return cls(s)

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if n > self.D:
            raise IndexError(f"degree {n} is beyond the truncation {self.D}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        D = min(self.D, other.D)
        return self.coeffs[: D + 1] == other.coeffs[: D + 1]

    def __repr__(self) -> str:
        terms = [f"{c}q^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'}; D={self.D})"

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        D = min(self.D, other.D)
        return TruncSeries([a + b for a, b in zip(self.coeffs[: D + 1], other.coeffs[: D + 1])])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-a for a in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        D = min(self.D, other.D)
        a, b = self.coeffs, other.coeffs
        out = [0] * (D + 1)
        for i in range(D + 1):
            if a[i]:
                ai = a[i]
                for j in range(D + 1 - i):
                    out[i + j] += ai * b[j]
        return TruncSeries(out)

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ZeroDivisionError("constant term must be a unit in Z")
        a = self.coeffs
        inv = [0] * (self.D + 1)
        inv[0] = c0
        for n in range(1, self.D + 1):
            inv[n] = -c0 * sum(a[k] * inv[n - k] for k in range(1, n + 1))
        return TruncSeries(inv)

    def substitute_sign(self) -> "TruncSeries":
        """``f(-q)``."""
        return TruncSeries([c if n % 2 == 0 else -c for n, c in enumerate(self.coeffs)])


class Kind(str, enum.Enum):
    EXTERIOR = "exterior"
    POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class Generator:
    degree: int
    multiplicity: int = 1
    kind: Kind = Kind.POLYNOMIAL

    def __post_init__(self):
        if self.degree <= 0:
            raise ValueError("generator degrees must be positive")
        if self.multiplicity < 0:
            raise ValueError("multiplicity must be nonnegative")


GradedGenerators = Sequence[Generator]


def progression(start: int, step: int, D: int) -> list[int]:
    return list(range(start, D + 1, step)) if start <= D else []


def exterior(degrees: Iterable[int], multiplicity: int = 1) -> list[Generator]:
    return [Generator(k, multiplicity, Kind.EXTERIOR) for k in degrees]


def polynomial(degrees: Iterable[int], multiplicity: int = 1) -> list[Generator]:
    return [Generator(k, multiplicity, Kind.POLYNOMIAL) for k in degrees]


def series_from_generators(gens: GradedGenerators, D: int) -> TruncSeries:
    """Poincare series of the free graded-commutative algebra on ``gens``, to degree D."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    c = [1] + [0] * D
    for g in gens:
        k = g.degree
        if k > D:
            continue
        for _ in range(g.multiplicity):
            if g.kind is Kind.POLYNOMIAL:
                # multiply by 1/(1 - q^k)
                for n in range(k, D + 1):
                    c[n] += c[n - k]
            else:
                # multiply by (1 + q^k)
                for n in range(D, k - 1, -1):
                    c[n] += c[n - k]
    return TruncSeries(c)


def padic_borel_series(D: int) -> TruncSeries:
    """``prod_k 1/(1 - q^(4k-2))``: ranks of rational completed cohomology for F = Q."""
    return series_from_generators(polynomial(progression(2, 4, D)), D)


def general_field_series(r1: int, r2: int, D: int) -> TruncSeries:
    """``prod 1/(1 - q^(4k-2))^r1 * prod 1/(1 - q^(2k))^r2`` for signature (r1, r2)."""
    if r1 < 0 or r2 < 0:
        raise ValueError("signature entries must be nonnegative")
    gens = polynomial(progression(2, 4, D), r1) + polynomial(progression(2, 2, D), r2)
    return series_from_generators(gens, D)


def euler_identity_holds(D: int) -> bool:
    """``prod 1/(1 - q^(4k-2)) == prod (1 + q^(2k))`` through degree D."""
    odd_parts = padic_borel_series(D)
    distinct_parts = series_from_generators(exterior(progression(2, 2, D)), D)
    return odd_parts == distinct_parts


def rank_difference(n: int, r1: int, r2: int) -> int:
    """``dim K~_{2n-2} - dim K~_{2n-1}`` (tensored with Q) for signature (r1, r2)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return r2 + 1
    return r1 + r2 if n % 2 == 0 else r2


class StableRangeWarning(UserWarning):
    pass


def unstable_h2_dim(N: int) -> int:
    """``dim H^2(Gamma(p), F_p) = C(N^2 - 1, 2) + 1`` for SL_N(Z), N in the stable range."""
    if N < 1:
        raise ValueError("N must be positive")
    if N < 3:
        warnings.warn(f"N = {N} is outside the stable range; formula value only", StableRangeWarning)
    return comb(N * N - 1, 2) + 1


@dataclass(frozen=True)
class HkEstimate:
    N: int
    k: int
    degree: int
    exact: int
    leading: Fraction
    correction: Fraction | None
    error_exponent: int

    @property
    def expansion(self) -> Fraction:
        return self.leading + (self.correction or 0)

    @property
    def residual(self) -> Fraction:
        return self.exact - self.expansion

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "degree": self.degree,
            "exact": self.exact,
            "leading": str(self.leading),
            "correction": None if self.correction is None else str(self.correction),
            "expansion": str(self.expansion),
            "residual": str(self.residual),
            "error_exponent": self.error_exponent,
        }


def unstable_hk_asymptotic(N: int, k: int, degree_d: int = 1) -> HkEstimate:
    """``dim wedge^k M`` with M of dimension ``d (N^2 - 1)``, and its expansion in N.

    Over Q: ``N^2k/k! - C(k+1, 2) N^(2k-2)/k! + O(N^(2k-4))``. Over a field of
    degree d only the leading term ``N^(2kd)/k!`` is claimed, up to
    ``O(N^(2d(k-1)))``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if degree_d < 1:
        raise ValueError("field degree must be positive")
    exact = comb(degree_d * (N * N - 1), k)
    if degree_d == 1:
        leading = Fraction(N ** (2 * k), factorial(k))
        correction = -Fraction(comb(k + 1, 2) * N ** (2 * (k - 1)), factorial(k))
        return HkEstimate(N, k, 1, exact, leading, correction, 2 * (k - 2))
    leading = Fraction(N ** (2 * k * degree_d), factorial(k))
    return HkEstimate(N, k, degree_d, exact, leading, None, 2 * degree_d * (k - 1))


# Bigraded engine -------------------------------------------------------------


@dataclass(frozen=True)
class _Gen:
    name: str
    degree: int
    kind: Kind


@dataclass
class BigradedPage:
    """A page E_r of a first-quadrant cohomological spectral sequence.

    ``basis[(i, j)]`` lists monomials (exponent tuples over ``gens``) whose
    classes form a basis; column i carries the exterior (base) degree, row j
    the polynomial (fibre) degree. ``d^r`` maps (i, j) to (i + r, j - r + 1).
    """

    r: int
    gens: tuple[_Gen, ...]
    basis: dict[tuple[int, int], list[tuple[int, ...]]]

    def dims(self) -> dict[tuple[int, int], int]:
        return {ij: len(v) for ij, v in self.basis.items() if v}

    def total_dims(self, D: int) -> list[int]:
        out = [0] * (D + 1)
        for (i, j), v in self.basis.items():
            if i + j <= D:
                out[i + j] += len(v)
        return out

    def monomial_name(self, m: tuple[int, ...]) -> str:
        parts = []
        for g, e in zip(self.gens, m):
            if e:
                parts.append(g.name + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"


def _monomials(gens: Sequence[_Gen], D: int) -> list[tuple[int, ...]]:
    out = []

    def rec(idx: int, deg: int, acc: list[int]):
        if idx == len(gens):
            out.append(tuple(acc))
            return
        g = gens[idx]
        top = 1 if g.kind is Kind.EXTERIOR else (D - deg) // g.degree
        for e in range(0, top + 1):
            if deg + e * g.degree > D:
                break
            acc.append(e)
            rec(idx + 1, deg + e * g.degree, acc)
            acc.pop()

    rec(0, 0, [])
    return out


def _bidegree(gens: Sequence[_Gen], m: tuple[int, ...]) -> tuple[int, int]:
    i = sum(g.degree * e for g, e in zip(gens, m) if g.kind is Kind.EXTERIOR)
    j = sum(g.degree * e for g, e in zip(gens, m) if g.kind is Kind.POLYNOMIAL)
    return i, j


def _apply_derivation(
    gens: Sequence[_Gen], images: dict[int, int], m: tuple[int, ...]
) -> dict[tuple[int, ...], int]:
    """Apply the derivation sending polynomial generator a to exterior generator images[a].

    Monomials are ordered products: polynomial generators (even) first, then
    exterior generators in index order; signs come from moving the new odd
    factor into place.
    """
    out: dict[tuple[int, ...], int] = {}
    for a, t in images.items():
        e = m[a]
        if e == 0 or m[t]:
            continue
        new = list(m)
        new[a] -= 1
        new[t] = 1
        passed = sum(
            m[s] for s in range(len(gens)) if gens[s].kind is Kind.EXTERIOR and s < t
        )
        coeff = e * (-1) ** passed
        key = tuple(new)
        out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


def koszul_generators(D: int) -> tuple[_Gen, ...]:
    """Polynomial x^_2, x^_6, ... and exterior x_3, x_5, x_7, ..., all of degree <= D."""
    polys = [_Gen(f"xh{k}", k, Kind.POLYNOMIAL) for k in progression(2, 4, D)]
    exts = [_Gen(f"x{k}", k, Kind.EXTERIOR) for k in progression(3, 2, D)]
    return tuple(polys + exts)


def transgression_rule(gens: Sequence[_Gen]) -> dict[int, dict[int, int]]:
    """``d^(4n-1)(x^_{4n-2}) = x_{4n-1}``: page -> {polynomial index: exterior index}."""
    index = {(g.kind, g.degree): n for n, g in enumerate(gens)}
    rule: dict[int, dict[int, int]] = {}
    for n, g in enumerate(gens):
        if g.kind is Kind.POLYNOMIAL:
            t = index.get((Kind.EXTERIOR, g.degree + 1))
            if t is not None:
                rule.setdefault(g.degree + 1, {})[n] = t
    return rule


def run_spectral_sequence(
    gens: Sequence[_Gen], rule: dict[int, dict[int, int]], D: int
) -> list[BigradedPage]:
    """Pages E_2, E_3, ... up to stabilization, truncated at total degree D.

    Differentials must send basis monomials to multiples of distinct basis
    monomials (true for transgressions of free generators); anything else
    raises ``NotImplementedError``.
    """
    basis: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for m in _monomials(gens, D):
        basis.setdefault(_bidegree(gens, m), []).append(m)
    pages = [BigradedPage(2, tuple(gens), {k: list(v) for k, v in basis.items()})]
    alive = {m for v in basis.values() for m in v}
    for r in range(2, D + 3):
        images = rule.get(r, {})
        if not images:
            pages.append(BigradedPage(r + 1, tuple(gens), pages[-1].basis))
            continue
        killed: set[tuple[int, ...]] = set()
        hit: set[tuple[int, ...]] = set()
        for m in sorted(alive):
            img = _apply_derivation(gens, images, m)
            img = {k: v for k, v in img.items() if sum(g.degree * e for g, e in zip(gens, k)) <= D}
            if not img:
                continue
            if len(img) != 1:
                raise NotImplementedError(f"d^{r} of {m} is not a single monomial")
            (target,) = img
            i, j = _bidegree(gens, m)
            if _bidegree(gens, target) != (i + r, j - r + 1):
                raise InternalInconsistency(f"d^{r} of {m} lands in the wrong bidegree")
            if target not in alive:
                raise NotImplementedError(f"d^{r} of {m} leaves the page basis")
            if target in hit or m in hit or target in killed:
                raise NotImplementedError(f"d^{r} is not a monomial matching at {m}")
            killed.add(m)
            hit.add(target)
        alive -= killed | hit
        new_basis = {ij: [m for m in v if m in alive] for ij, v in pages[-1].basis.items()}
        pages.append(BigradedPage(r + 1, tuple(gens), new_basis))
    # d^r vanishes for r > D + 1 on a page truncated at total degree D
    if any(r > D + 1 for r, imgs in rule.items() if imgs and _rule_acts(gens, imgs, alive, D)):
        raise NonConvergence(f"differentials survive past page {D + 2}")
    return pages


def _rule_acts(gens, images, alive, D) -> bool:
    for m in alive:
        img = _apply_derivation(gens, images, m)
        if any(sum(g.degree * e for g, e in zip(gens, k)) <= D for k in img):
            return True
    return False


@dataclass
class DegenerationReport:
    D: int
    e2_dims: list[int]
    einf_dims: list[int]
    expected: list[int]
    pages_with_differentials: list[int]
    einf_basis: dict[int, list[str]] = field(default_factory=dict)
    conditional: bool = True

    @property
    def matches(self) -> bool:
        return self.einf_dims == self.expected

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "e2_dims": self.e2_dims,
            "einf_dims": self.einf_dims,
            "expected": self.expected,
            "matches": self.matches,
            "pages_with_differentials": self.pages_with_differentials,
            "einf_basis": {str(k): v for k, v in self.einf_basis.items()},
            "conditional": self.conditional,
        }


def hs_degeneration_check(D: int) -> DegenerationReport:
    """Run Q[x^_2, x^_6, ...] (x) L[x_3, x_5, ...] with transgressions to E_infinity.

    Compares total-degree dimensions of E_infinity with L[x_5, x_9, x_13, ...].
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    if D > 40:
        raise ValueError("hs_degeneration_check is desk-scale only (D <= 40)")
    # differentials raise total degree by one, so degree D needs D + 1 computed
    gens = koszul_generators(D + 1)
    rule = transgression_rule(gens)
    pages = run_spectral_sequence(gens, rule, D + 1)
    einf = pages[-1]
    basis_by_degree: dict[int, list[str]] = {}
    for (i, j), v in sorted(einf.basis.items()):
        if i + j > D:
            continue
        for m in v:
            basis_by_degree.setdefault(i + j, []).append(einf.monomial_name(m))
    expected = series_from_generators(exterior(progression(5, 4, D)), D).coeffs
    return DegenerationReport(
        D=D,
        e2_dims=pages[0].total_dims(D),
        einf_dims=einf.total_dims(D),
        expected=expected,
        pages_with_differentials=sorted(r for r, v in rule.items() if v and r <= D + 1),
        einf_basis=basis_by_degree,
    )


def _signed_weight_series(exterior_degrees, polynomial_degrees, D) -> TruncSeries:
    # weight = internal degree: exterior classes are suspensions (weight deg - 1);
    # sign = (-1)^degree
    s = TruncSeries.one(D)
    for a in exterior_degrees:
        w = a - 1
        if w <= D:
            s = s * (TruncSeries.one(D) + TruncSeries.monomial(w, D, (-1) ** a))
    for b in polynomial_degrees:
        if b <= D:
            s = s * (TruncSeries.one(D) - TruncSeries.monomial(b, D, (-1) ** b)).inverse()
    return s


def koszul_series_identity(
    D: int,
    exterior_degrees: Sequence[int] | None = None,
    polynomial_degrees: Sequence[int] | None = None,
) -> bool:
    """Euler-characteristic identity between E_2 and the Koszul target, through weight D.

    E_2 = Q[x^_2, x^_6, ...] (x) L[x_3, x_5, ...] and the target
    L[x_5, x_9, ...] are graded by internal weight (polynomial generators by
    degree, exterior generators by degree - 1) and signed by (-1)^degree.
    Each contractible pair (x^_{4n-2}, x_{4n-1}) contributes the factor
    ``(1 - q^(4n-2)) / (1 - q^(4n-2)) = 1``, so both sides agree exactly when
    the generator degrees pair up.
    """
    if D < 0:
        raise ValueError("D must be nonnegative")
    if D > 64:
        raise ValueError("D must be at most 64")
    ext = list(exterior_degrees) if exterior_degrees is not None else progression(3, 2, D + 1)
    poly = list(polynomial_degrees) if polynomial_degrees is not None else progression(2, 4, D)
    lhs = _signed_weight_series(ext, poly, D)
    rhs = _signed_weight_series(progression(5, 4, D + 1), [], D)
    return lhs == rhs


def free_algebra_generators(r1: int, r2: int, D: int) -> list[Generator]:
    """Polynomial generators with multiplicity r1 + r2 in degrees 2 mod 4 and r2 in degrees 0 mod 4."""
    return polynomial(progression(2, 4, D), r1 + r2) + polynomial(progression(4, 4, D), r2)


def series_report(r1: int, r2: int, D: int) -> dict:
    s = general_field_series(r1, r2, D)
    return {"r1": r1, "r2": r2, "D": D, "coefficients": s.coeffs, "conditional": True}

