"""Truncated formal power series in q over exact rationals.

A QSeries keeps coefficients of q^0 .. q^order inclusive.  Arithmetic
between two series truncates to the smaller order: series are
approximations by construction, so the silent truncation is the
documented behaviour, never an error.

The q^0 slot can be flagged unknown (constant_known=False).  That state
arises for regularized coefficient series whose constant term is only
defined through a limiting procedure; any operation that would read the
unknown constant either propagates the flag or raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import bernoulli, format_rational, parse_rational

__all__ = [
    "QSeries",
    "divisor_sigma",
    "eisenstein",
    "q_d_q",
]


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[Fraction, ...]
    constant_known: bool = True

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("QSeries needs at least the q^0 coefficient")
        if not self.constant_known:
            # canonical placeholder so that equality stays structural
            coeffs = (Fraction(0),) + coeffs[1:]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value, order: int) -> "QSeries":
        return cls((Fraction(value),) + (Fraction(0),) * order)

    def __getitem__(self, n: int) -> Fraction:
        if n == 0 and not self.constant_known:
            raise ValueError("q^0 coefficient of this series is unknown")
        return self.coeffs[n]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], self.constant_known)

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.order, other.order)
        known = self.constant_known and other.constant_known
        return QSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), known
        )

    def __neg__(self) -> "QSeries":
        return QSeries(tuple(-c for c in self.coeffs), self.constant_known)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(tuple(c * x for x in self.coeffs), self.constant_known)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        if not (self.constant_known and other.constant_known):
            raise ValueError(
                "cannot multiply series with unknown q^0 coefficient"
            )
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, ci in enumerate(self.coeffs[: n + 1]):
            if ci == 0:
                continue
            for j in range(n - i + 1):
                out[i + j] += ci * other.coeffs[j]
        return QSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int) or e < 0:
            raise ValueError("series power must be a non-negative integer")
        out = QSeries.constant(1, self.order)
        for _ in range(e):
            out = out * self
        return out

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        start = 0 if self.constant_known else 1
        return all(c == 0 for c in self.coeffs[start:])

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [format_rational(c) for c in self.coeffs],
            "constant_known": self.constant_known,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "QSeries":
        coeffs = tuple(parse_rational(c) for c in obj["coeffs"])
        if len(coeffs) != obj["order"] + 1:
            raise ValueError("order field disagrees with coefficient count")
        return cls(coeffs, bool(obj.get("constant_known", True)))

    def __str__(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if n == 0:
                if not self.constant_known:
                    parts.append("(q^0 unknown)")
                elif c != 0:
                    parts.append(str(c))
                continue
            if c == 0:
                continue
            q = "q" if n == 1 else f"q^{n}"
            parts.append(q if c == 1 else f"{c}*{q}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def divisor_sigma(power: int, n: int) -> int:
    """sigma_power(n), the sum of d^power over divisors d of n."""
    if n < 1:
        raise ValueError(f"divisor_sigma needs n >= 1, got {n}")
    return sum(d**power for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def eisenstein(k: int, order: int, divisor_power: int | None = None) -> QSeries:
    """Eisenstein series G_k truncated at q^order.

    G_k(q) = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n.  The divisor
    power k-1 is the one consistent with the weight convention
    wt(G_k) = k and with the Laurent expansion of the shifted
    Weierstrass function; divisor_power lets callers substitute another
    exponent (the variant with power k is demonstrably incompatible
    with the propagator identity, see elliptic.check_propagator_identity).
    """
    if k < 2 or k % 2:
        raise ValueError(f"eisenstein weight must be even and >= 2, got {k}")
    power = k - 1 if divisor_power is None else divisor_power
    coeffs = [-bernoulli(k) / (2 * k)]
    coeffs.extend(Fraction(divisor_sigma(power, n)) for n in range(1, order + 1))
    return QSeries(tuple(coeffs))


def q_d_q(s: QSeries) -> QSeries:
    """The derivation q d/dq: multiplies the q^n coefficient by n.

    The constant is killed, so the output q^0 coefficient is known (0)
    even when the input constant was a regularization placeholder.
    """
    return QSeries(tuple(n * c for n, c in enumerate(s.coeffs)))
