"""The graded ring of quasimodular forms C[G2, G4, G6].

Provides basis enumeration by weight, exact evaluation of polynomials in
the generators to truncated q-series, and the inverse problem: exact
recognition of a truncated series as such a polynomial by Gaussian
elimination over the rationals.  Recognition is the workhorse of the
top-weight verification in the elliptic module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exact import format_rational, parse_rational
from .qseries import QSeries, eisenstein

__all__ = [
    "FitInconsistency",
    "Monomial",
    "QuasimodularPoly",
    "basis",
    "evaluate",
    "fit",
    "graded_part",
    "monomial_weight",
]

# exponent triple (a, b, c) standing for G2^a * G4^b * G6^c
Monomial = tuple[int, int, int]


def monomial_weight(mono: Monomial) -> int:
    a, b, c = mono
    return 2 * a + 4 * b + 6 * c


def _basis_key(mono: Monomial):
    # graded order; within a weight, G2-heavy monomials first
    return (monomial_weight(mono), tuple(-e for e in mono))


class QuasimodularPoly:
    """Polynomial in G2, G4, G6 with exact rational coefficients.

    Stored as a canonical sorted tuple of (monomial, coefficient) pairs
    with zero coefficients dropped; the zero polynomial has no terms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = list(terms)
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != 3 or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent triple {mono!r}")
            coeff = Fraction(coeff)
            if coeff != 0:
                acc[mono] = acc.get(mono, Fraction(0)) + coeff
        self._terms = tuple(
            (m, c) for m, c in sorted(acc.items(), key=lambda t: _basis_key(t[0]))
            if c != 0
        )

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self._terms:
            if m == tuple(mono):
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> list[int]:
        return sorted({monomial_weight(m) for m, _ in self._terms})

    def max_weight(self) -> int:
        """Weight of the zero polynomial is defined as 0 here."""
        return max((monomial_weight(m) for m, _ in self._terms), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, QuasimodularPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __add__(self, other: "QuasimodularPoly") -> "QuasimodularPoly":
        acc = dict(self._terms)
        for m, c in other._terms:
            acc[m] = acc.get(m, Fraction(0)) + c
        return QuasimodularPoly(acc)

    def __neg__(self) -> "QuasimodularPoly":
        return QuasimodularPoly({m: -c for m, c in self._terms})

    def __sub__(self, other: "QuasimodularPoly") -> "QuasimodularPoly":
        return self + (-other)

    def scale(self, c) -> "QuasimodularPoly":
        c = Fraction(c)
        return QuasimodularPoly({m: c * x for m, x in self._terms})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QuasimodularPoly):
            return NotImplemented
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return QuasimodularPoly(acc)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ("G2", "G4", "G6")
        parts = []
        for mono, coeff in self._terms:
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors) if factors else "1"
            parts.append(body if coeff == 1 and factors else f"({coeff})*{body}")
        return " + ".join(parts)

    def to_obj(self) -> list[dict]:
        return [
            {"exp": list(m), "coeff": format_rational(c)} for m, c in self._terms
        ]

    @classmethod
    def from_obj(cls, obj: list[dict]) -> "QuasimodularPoly":
        return cls({tuple(t["exp"]): parse_rational(t["coeff"]) for t in obj})


@dataclass(frozen=True)
class FitInconsistency:
    """Report that a series is not a quasimodular polynomial at the
    requested weight bound: the exact linear system has no solution."""

    first_inconsistent_power: int
    max_weight: int

    def __str__(self) -> str:
        return (
            f"no quasimodular polynomial of weight <= {self.max_weight} "
            f"matches; first inconsistent coefficient at q^"
            f"{self.first_inconsistent_power}"
        )


def basis(max_weight: int) -> list[Monomial]:
    """All exponent triples of weight <= max_weight, graded lexicographic."""
    if max_weight < 0:
        raise ValueError("max_weight must be >= 0")
    out = []
    for c in range(max_weight // 6 + 1):
        for b in range((max_weight - 6 * c) // 4 + 1):
            for a in range((max_weight - 6 * c - 4 * b) // 2 + 1):
                out.append((a, b, c))
    return sorted(out, key=_basis_key)


@lru_cache(maxsize=None)
def _generator_power(k: int, e: int, order: int) -> QSeries:
    if e == 0:
        return QSeries.constant(1, order)
    return _generator_power(k, e - 1, order) * eisenstein(k, order)


def _monomial_series(mono: Monomial, order: int) -> QSeries:
    a, b, c = mono
    return (
        _generator_power(2, a, order)
        * _generator_power(4, b, order)
        * _generator_power(6, c, order)
    )


def evaluate(p: QuasimodularPoly, order: int) -> QSeries:
    """Substitute the Eisenstein q-expansions and expand exactly."""
    out = QSeries.zero(order)
    for mono, coeff in p._terms:
        out = out + _monomial_series(mono, order).scale(coeff)
    return out


def graded_part(p: QuasimodularPoly, weight: int) -> QuasimodularPoly:
    """Restriction of p to the monomials of exactly the given weight."""
    return QuasimodularPoly(
        {m: c for m, c in p._terms if monomial_weight(m) == weight}
    )


def fit(
    s: QSeries,
    max_weight: int,
    free_constant: bool = False,
    margin: int = 5,
) -> QuasimodularPoly | FitInconsistency:
    """Recognize a truncated series as a polynomial in G2, G4, G6.

    Matches the coefficients of q^0 .. q^order exactly against the span
    of the weight <= max_weight monomials, by Gaussian elimination over
    the rationals.  The system must be overdetermined by at least
    `margin` surplus rows (a fit that merely interpolates proves
    nothing); too small an order is an error, not a guess.

    With free_constant=True the q^0 row is dropped and the pure-constant
    monomial is excluded, which is the mode for regularized series whose
    q^0 coefficient is undefined: the returned polynomial then implies a
    regularized constant, namely its own q^0 value.

    Returns the unique matching polynomial, or a FitInconsistency naming
    the first q-power at which no polynomial can match.
    """
    if max_weight < 0 or max_weight % 2:
        raise ValueError(f"max_weight must be even and >= 0, got {max_weight}")
    if margin < 1:
        raise ValueError("margin must be >= 1; zero-surplus fits are unverified")
    if not s.constant_known and not free_constant:
        raise ValueError(
            "series has unknown q^0 coefficient; fit requires free_constant=True"
        )
    monos = basis(max_weight)
    if free_constant:
        monos = [m for m in monos if m != (0, 0, 0)]
    powers = list(range(1 if free_constant else 0, s.order + 1))
    surplus = len(powers) - len(monos)
    if surplus < margin:
        raise ValueError(
            f"series order {s.order} leaves surplus {surplus} rows for "
            f"{len(monos)} monomials; need margin >= {margin}"
        )

    cols = [_monomial_series(m, s.order) for m in monos]
    matrix = [[col.coeffs[n] for col in cols] for n in powers]
    rhs = [s.coeffs[n] for n in powers]

    coeffs, ok = _solve_exact(matrix, rhs)
    if not ok:
        for n, row_power in enumerate(powers):
            lhs = sum(matrix[n][j] * coeffs[j] for j in range(len(monos)))
            if lhs != rhs[n]:
                return FitInconsistency(row_power, max_weight)
        raise AssertionError("inconsistent solve reported but residual is zero")
    return QuasimodularPoly(dict(zip(monos, coeffs)))


def _solve_exact(matrix, rhs):
    """Solve the overdetermined exact system A x = b.

    Returns (x, True) when x satisfies every row, (x, False) when the
    pivot rows determine an x that fails some surplus row (the caller
    reports the first failing q-power).  Raises if the columns are
    linearly dependent, which cannot happen for distinct Eisenstein
    monomials with enough rows.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            raise ValueError("dependent monomial columns; increase the order")
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
    x = [Fraction(0)] * ncols
    for rr, cc in pivots:
        x[cc] = aug[rr][ncols]
    consistent = all(aug[i][ncols] == 0 for i in range(r, nrows))
    return x, consistent
