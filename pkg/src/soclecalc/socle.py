"""Socle intersection numbers: the closed product formula, the necklace
(wheel) evaluation, and the string-equation engine that connects them.

Two fully independent evaluation paths are provided.  faber() is the
closed formula in Bernoulli, factorial and double-factorial data.  The
necklace path reduces a query with the string equation until each branch
reaches the canonical shape (exactly one zero exponent, the rest
positive) and evaluates that shape through the oriented-wheel sum over
three-point ramification-cycle integrals.

Domain caveat, established by exact computation and documented in the
test suite: the two paths agree for every query with at most one zero
exponent, and provably disagree as soon as two or more exponents are
zero.  The closed formula is not compatible with the string equation on
multi-zero patterns (removing a zero from a list that still contains a
zero breaks the factorial bookkeeping), so on that subfamily the
necklace path computes the string-consistent value and faber() does not
equal it.  socle_compute(..., "both") reports such disagreements as
first-class results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import prod
from typing import Iterator, Sequence

from .drcycle import dr_standard, dr3_closed
from .exact import bernoulli, double_factorial_odd, factorial
from .report import CheckResult, failed, passed

__all__ = [
    "DimensionError",
    "SocleQuery",
    "SocleResult",
    "Wheel",
    "faber",
    "iter_socle_queries",
    "iter_wheels",
    "necklace_lhs",
    "necklace_socle",
    "relation_integral_check",
    "socle_compute",
    "socle_necklace",
    "string_apply",
    "verify_string_consistency",
    "wheel_collapse_check",
    "wheels_enumerate",
]


class DimensionError(ValueError):
    """Exponent list violates the dimension constraint sum(d) = g-2+n."""


@dataclass(frozen=True)
class SocleQuery:
    """A genus together with the cotangent-power exponents.

    Validates the dimension constraint at construction: the exponents of
    a non-vanishing socle pairing must satisfy sum(d) = g - 2 + n.
    """

    g: int
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.g < 1:
            raise ValueError(f"genus must be >= 1, got {self.g}")
        if not self.d:
            raise ValueError("need at least one marked point")
        if any(x < 0 for x in self.d):
            raise ValueError(f"exponents must be >= 0, got {self.d}")
        total, expect = sum(self.d), self.g - 2 + len(self.d)
        if total != expect:
            raise DimensionError(
                f"sum(d) = {total} but g-2+n = {expect} for g={self.g}, "
                f"n={len(self.d)}"
            )

    @property
    def n(self) -> int:
        return len(self.d)


@dataclass(frozen=True)
class Wheel:
    """Oriented necklace: vertices 1..m in the cyclic order given by
    `cycle` (vertex 1 anchored first), with a genus per vertex index."""

    cycle: tuple[int, ...]
    genera: tuple[int, ...]

    def __post_init__(self):
        m = len(self.cycle)
        if sorted(self.cycle) != list(range(1, m + 1)) or self.cycle[0] != 1:
            raise ValueError("cycle must be a permutation of 1..m starting at 1")
        if len(self.genera) != m or any(x < 0 for x in self.genera):
            raise ValueError("need one genus >= 0 per vertex")

    @property
    def m(self) -> int:
        return len(self.cycle)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def iter_wheels(m: int, total_genus: int) -> Iterator[Wheel]:
    """Stream the (m-1)! oriented cyclic orders times the compositions
    of total_genus; used directly when materializing would be wasteful."""
    if m < 1 or total_genus < 0:
        raise ValueError("need m >= 1 and total_genus >= 0")
    for tail in permutations(range(2, m + 1)):
        cycle = (1,) + tail
        for genera in _compositions(total_genus, m):
            yield Wheel(cycle, genera)


def wheels_enumerate(m: int, total_genus: int) -> list[Wheel]:
    """All oriented necklaces on m vertices with genera summing to
    total_genus; the m=1 case is the single one-vertex loop wheel."""
    return list(iter_wheels(m, total_genus))


def faber(q: SocleQuery) -> Fraction:
    """The closed product formula for the socle pairing.

    Exact on every dimension-valid query; agrees with the
    string-consistent evaluation iff at most one exponent is zero (see
    the module docstring).
    """
    g, d, n = q.g, q.d, q.n
    value = (
        Fraction((-1) ** (g - 1))
        * bernoulli(2 * g)
        * factorial(2 * g - 3 + n)
        / (2 ** (2 * g - 1) * factorial(2 * g))
    )
    for di in d:
        value /= double_factorial_odd(2 * di - 1)
    return value


@lru_cache(maxsize=None)
def _necklace_lhs(g: int, d: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    m = len(d)
    for wheel in iter_wheels(m, g - 1):
        term = Fraction(1)
        for i, di in enumerate(d):
            if wheel.genera[i] != di - 1:
                term = Fraction(0)
                break
            term *= dr3_closed(wheel.genera[i], 1, -1)
        total += term
    return total / factorial(m - 1)


def necklace_lhs(g: int, d: Sequence[int]) -> Fraction:
    """Literal oriented-wheel sum with the dimension filter applied:
    a wheel contributes the product of per-vertex unit-multiplicity
    integrals when every vertex genus equals its exponent minus one, and
    zero otherwise; the sum is divided by (m-1)!.

    The collapse identity (the filter leaves (m-1)! identical summands)
    makes this equal to prod(dr_standard(d_i - 1)); that equality is a
    verification target (wheel_collapse_check), not an implementation
    shortcut.
    """
    d = tuple(int(x) for x in d)
    if not d or any(x < 1 for x in d):
        raise ValueError(f"need m >= 1 positive exponents, got {d}")
    if sum(x - 1 for x in d) != g - 1:
        raise DimensionError(
            f"sum(d_i - 1) = {sum(x - 1 for x in d)} but g-1 = {g - 1}"
        )
    return _necklace_lhs(g, d)


def necklace_socle(g: int, d: Sequence[int]) -> Fraction:
    """Necklace-side evaluation of a canonical query: exactly one zero
    exponent, all others positive.  Fully independent of faber()."""
    d = tuple(int(x) for x in d)
    zeros = d.count(0)
    if zeros != 1 or any(x < 0 for x in d):
        raise ValueError(
            f"canonical shape needs exactly one zero exponent, got {d}"
        )
    SocleQuery(g, d)  # dimension validation
    positives = tuple(x for x in d if x > 0)
    m = len(positives)
    coeff = (
        Fraction((-1) ** (g - 1))
        * bernoulli(2 * g)
        * factorial(2 * g - 2 + m)
        / (2 * factorial(2 * g))
    )
    return coeff * necklace_lhs(g, positives)


def string_apply(g: int, d: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """One string-equation step: remove the last zero exponent and emit
    one reduced list per remaining positive slot, decremented there.

    Mechanical on (g, d): dimension validity is not required here, but
    reductions of a dimension-valid query are again dimension-valid.
    """
    d = tuple(int(x) for x in d)
    if len(d) < 2:
        raise ValueError("string reduction needs n >= 2")
    if 0 not in d:
        raise ValueError("string reduction needs a zero exponent")
    last_zero = len(d) - 1 - d[::-1].index(0)
    rest = d[:last_zero] + d[last_zero + 1 :]
    if all(x == 0 for x in rest):
        raise ValueError(f"no positive exponent to decrement in {d}")
    out = []
    for j, x in enumerate(rest):
        if x >= 1:
            out.append((g, rest[:j] + (x - 1,) + rest[j + 1 :]))
    return out


@lru_cache(maxsize=None)
def _necklace_value(g: int, d: tuple[int, ...]) -> Fraction:
    zeros = d.count(0)
    if d == (0,):
        # only valid at g=1; canonicalize through the identity query
        return _necklace_value(1, (1, 0))
    if zeros == 1:
        return necklace_socle(g, d)
    if zeros == 0:
        # lift: bump the largest exponent, append a zero; the lifted
        # canonical query string-reduces to this query plus sibling
        # branches, each strictly more concentrated (sum d_i^2 grows),
        # so the recursion terminates
        k = max(range(len(d)), key=lambda i: (d[i], -i))
        lifted = d[:k] + (d[k] + 1,) + d[k + 1 :]
        value = _necklace_value(g, lifted + (0,))
        for j in range(len(d)):
            if j == k:
                continue
            branch = lifted[:j] + (lifted[j] - 1,) + lifted[j + 1 :]
            value -= _necklace_value(g, branch)
        return value
    # two or more zeros: keep applying the string equation
    return sum(
        (_necklace_value(rg, rd) for rg, rd in string_apply(g, d)),
        Fraction(0),
    )


def socle_necklace(q: SocleQuery) -> Fraction:
    """String-consistent evaluation through the necklace path."""
    return _necklace_value(q.g, q.d)


@dataclass(frozen=True)
class SocleResult:
    method: str
    faber_value: Fraction | None
    necklace_value: Fraction | None

    @property
    def agree(self) -> bool | None:
        if self.faber_value is None or self.necklace_value is None:
            return None
        return self.faber_value == self.necklace_value

    @property
    def value(self) -> Fraction:
        v = self.faber_value if self.faber_value is not None else self.necklace_value
        assert v is not None
        return v


def socle_compute(q: SocleQuery, method: str = "both") -> SocleResult:
    """Evaluate a socle query by the closed formula, the necklace path,
    or both (reporting agreement)."""
    if method not in ("faber", "necklace", "both"):
        raise ValueError(f"unknown method {method!r}")
    fv = faber(q) if method in ("faber", "both") else None
    nv = socle_necklace(q) if method in ("necklace", "both") else None
    return SocleResult(method, fv, nv)


def verify_string_consistency(g: int, d: Sequence[int]) -> CheckResult:
    """Check that the closed formula commutes with one string-equation
    step.

    Accepts either input convention and dispatches on the dimension
    count: when sum(d) = g-1+n the zero-appended query (g, d+(0,)) is
    itself dimension-valid and is checked directly against the sum of
    its reductions; when sum(d) = g-2+n (d is a valid query on its own)
    every single-slot lift (d + e_k, 0) is checked instead.
    """
    d = tuple(int(x) for x in d)
    n, total = len(d), sum(d)
    params = {"g": g, "d": d}
    if total == g - 1 + n:
        candidates = [d + (0,)]
    elif total == g - 2 + n:
        candidates = [
            d[:k] + (d[k] + 1,) + d[k + 1 :] + (0,) for k in range(n)
        ]
    else:
        raise DimensionError(
            f"sum(d) = {total} matches neither g-1+n = {g - 1 + n} nor "
            f"g-2+n = {g - 2 + n}"
        )
    for appended in candidates:
        lhs = faber(SocleQuery(g, appended))
        rhs = sum(
            (faber(SocleQuery(rg, rd)) for rg, rd in string_apply(g, appended)),
            Fraction(0),
        )
        if lhs != rhs:
            return failed(
                "socle.string_consistency",
                {"appended": appended, "lhs": lhs, "rhs": rhs},
                **params,
            )
    return passed("socle.string_consistency", **params)


def relation_integral_check(g: int, d: Sequence[int]) -> CheckResult:
    """Integrated shadow of the necklace relation: the wheel sum against
    a cotangent monomial equals the normalized sum of the closed-formula
    values with one exponent decremented per slot."""
    d = tuple(int(x) for x in d)
    m = len(d)
    lhs = necklace_lhs(g, d)
    coeff = Fraction(2 * factorial(2 * g)) / (
        Fraction((-1) ** (g - 1)) * bernoulli(2 * g) * factorial(2 * g - 2 + m)
    )
    total = sum(
        (
            faber(SocleQuery(g, d[:i] + (d[i] - 1,) + d[i + 1 :]))
            for i in range(m)
        ),
        Fraction(0),
    )
    rhs = coeff * total
    if lhs == rhs:
        return passed("socle.relation_integral", g=g, d=d)
    return failed("socle.relation_integral", {"lhs": lhs, "rhs": rhs}, g=g, d=d)


def wheel_collapse_check(g: int, d: Sequence[int]) -> CheckResult:
    """Compare the literal wheel-sum evaluation of necklace_lhs with the
    collapsed product of unit-multiplicity integrals."""
    d = tuple(int(x) for x in d)
    lhs = necklace_lhs(g, d)
    rhs = prod((dr_standard(x - 1) for x in d), start=Fraction(1))
    if lhs == rhs:
        return passed("socle.wheel_collapse", g=g, d=d)
    return failed("socle.wheel_collapse", {"lhs": lhs, "rhs": rhs}, g=g, d=d)


def iter_socle_queries(
    g_max: int, n_max: int, max_zeros: int | None = None
) -> Iterator[SocleQuery]:
    """All dimension-valid queries with g <= g_max and n <= n_max, one
    representative per exponent multiset (values are symmetric in d).

    max_zeros restricts the number of zero exponents; max_zeros=1 is the
    domain on which the closed formula and the necklace path provably
    agree.
    """
    for g in range(1, g_max + 1):
        for n in range(1, n_max + 1):
            total = g - 2 + n
            if total < 0:
                continue
            for d in combinations_with_replacement(range(total, -1, -1), n):
                if sum(d) != total:
                    continue
                if max_zeros is not None and d.count(0) > max_zeros:
                    continue
                yield SocleQuery(g, d)
