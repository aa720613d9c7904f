"""The global orbital series O(s, delta) and its values.

O(s, delta) is the product of the local J~ over the primes dividing
S_delta. It is rebuilt three ways: as that product, as a sum over the
divisors of S_delta, and (over Q only) from the fundamental discriminant
and Kronecker symbols alone, with no local field machinery at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import arith
from .errors import GuardError, OrbitalZetaError, SquareDeltaError
from .expoly import ExpPoly, format_fraction
from .fields import QQ, AlgebraicInt, BaseField, IdealData, LocalPrime, prime_support
from .local import SplitType, local_data, matrix_delta
from .order_zeta import jtilde, order_polynomial, orbital_value

DIVISOR_LIMIT = 1 << 20


def _as_delta(delta, field: BaseField | None) -> AlgebraicInt:
    if isinstance(delta, AlgebraicInt):
        return delta
    return (field or QQ)(int(delta))


@dataclass(frozen=True)
class GlobalOrbitalSeries:
    delta: AlgebraicInt
    s_delta: IdealData
    local: tuple[tuple[LocalPrime, SplitType, int], ...]
    product: ExpPoly

    @property
    def field(self) -> BaseField:
        return self.delta.field

    def chi(self, q: LocalPrime) -> int:
        for r, t, _ in self.local:
            if r == q:
                return t.chi
        raise OrbitalZetaError(f"{q} does not divide delta")

    def value_at_one(self) -> Fraction:
        return self.product.at_integer(1)

    def to_json(self) -> dict:
        return {
            "field": self.field.spec(),
            "delta": str(self.delta),
            "S": self.s_delta.pairs(),
            "norm": self.s_delta.norm,
            "local": [
                {**q.to_json(), "type": t.value, "n": n} for q, t, n in self.local if n > 0
            ],
            "expoly": self.product.to_json(),
            "value_at_1": format_fraction(self.value_at_one()),
        }


def global_series(delta, field: BaseField | None = None) -> GlobalOrbitalSeries:
    """Product of J~ over the primes dividing S_delta."""
    delta = _as_delta(delta, field)
    data = tuple(local_data(delta))
    S = IdealData.from_pairs((q, n) for q, _, n in data)
    prod = ExpPoly.constant(1)
    for q, t, n in data:
        if n:
            prod = prod * jtilde(order_polynomial(t, n, q.q))
    return GlobalOrbitalSeries(delta, S, data, prod)


def _divisor_guard(S: IdealData) -> None:
    count = 1
    for _, k in S.factors:
        count *= k + 1
    if count > DIVISOR_LIMIT:
        raise GuardError(f"S_delta has {count} divisors, more than 2^20")


def divisor_expansion(series: GlobalOrbitalSeries) -> ExpPoly:
    """N(S)^s sum_(d | S) N(d)^(1-2s) prod_(p | S/d) (1 - chi(p) N(p)^-s)."""
    S = series.s_delta
    _divisor_guard(S)
    NS = Fraction(S.norm)
    total = ExpPoly()
    for d in S.divisors():
        Nd = Fraction(d.norm)
        # N(S)^s N(d)^(1-2s) = N(d) * (N(d)^2 / N(S))^-s
        term = ExpPoly.monomial(Nd * Nd / NS, Nd)
        for p in (S / d).primes():
            term = term * ExpPoly.from_terms([(1, 1), (p.q, -series.chi(p))])
        total = total + term
    return total


def langlands_value(series: GlobalOrbitalSeries) -> Fraction:
    """sum_(d | S) N(d) prod_(p | d) (1 - chi(p) / N(p))."""
    S = series.s_delta
    _divisor_guard(S)
    total = Fraction(0)
    for d in S.divisors():
        term = Fraction(d.norm)
        for p in d.primes():
            term *= 1 - Fraction(series.chi(p), p.q)
        total += term
    return total


def local_value_product(series: GlobalOrbitalSeries) -> Fraction:
    """Product of the closed-form local orbital values."""
    out = Fraction(1)
    for q, t, n in series.local:
        out *= orbital_value(t, n, q.q)
    return out


def orbital_from_matrix(gamma, field: BaseField | None = None) -> GlobalOrbitalSeries:
    """Thin wrapper: the series only depends on delta = tr^2 - 4 det."""
    F = field or QQ
    g = tuple(tuple(_as_delta(x, F) for x in row) for row in gamma)
    return global_series(matrix_delta(g))


def determinant_exponents(gamma, field: BaseField | None = None) -> dict[LocalPrime, int]:
    """k_q = val_q(det gamma) at each prime dividing the determinant."""
    F = field or QQ
    (a, b), (c, d) = tuple(tuple(_as_delta(x, F) for x in row) for row in gamma)
    det = a * d - b * c
    if det.is_zero():
        raise OrbitalZetaError("singular matrix")
    return {q: q.valuation(det) for q in prime_support(det)}


# ---------------------------------------------------------------------------
# Over Q straight from the fundamental discriminant
# ---------------------------------------------------------------------------


def rational_conductor(delta: int) -> tuple[int, int]:
    """(S, D) with delta = S^2 D and D the discriminant of Q(sqrt delta)."""
    if delta == 0 or arith.is_square(delta):
        raise SquareDeltaError(f"delta = {delta} is a square")
    if delta % 4 not in (0, 1):
        raise OrbitalZetaError(f"delta = {delta} is not 0 or 1 mod 4")
    D = arith.fundamental_discriminant(delta)
    S2 = delta // D
    S = math.isqrt(S2)
    if S * S != S2 or S * S * D != delta:
        raise AssertionError("delta / D is not a square")  # pragma: no cover
    return S, D


def arthur_series(delta: int) -> ExpPoly:
    """S^s sum_(d | S) d^(1-2s) prod_(p | S/d) (1 - (D/p) p^-s) over Q."""
    S, D = rational_conductor(delta)
    total = ExpPoly()
    for d in arith.divisors(S):
        dd = Fraction(d)
        term = ExpPoly.monomial(dd * dd / S, dd)
        for p in arith.factor(S // d).primes() if S // d > 1 else []:
            term = term * ExpPoly.from_terms([(1, 1), (p, -arith.kronecker(D, p))])
        total = total + term
    return total


def arthur_value(delta: int) -> Fraction:
    """sum_(d | S) d prod_(p | d) (1 - (D/p) / p) over Q."""
    S, D = rational_conductor(delta)
    total = Fraction(0)
    for d in arith.divisors(S):
        term = Fraction(d)
        for p in arith.factor(d).primes() if d > 1 else []:
            term *= 1 - Fraction(arith.kronecker(D, p), p)
        total += term
    return total


# ---------------------------------------------------------------------------
# Weights with the p^(-k/2) normalisation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticWeight:
    """``coeff * p^(-k/2)`` kept exact."""

    coeff: Fraction
    p: int
    k: int

    def exact(self) -> Fraction | None:
        """The value as a rational when k is even."""
        if self.k % 2:
            return None
        return self.coeff / Fraction(self.p) ** (self.k // 2)

    def __float__(self) -> float:
        return float(self.coeff) * self.p ** (-self.k / 2)

    def to_json(self) -> dict:
        return {
            "coeff": format_fraction(self.coeff),
            "p": self.p,
            "exponent": format_fraction(Fraction(-self.k, 2)),
        }

    def __str__(self) -> str:
        return f"{format_fraction(self.coeff)}*{self.p}^({format_fraction(Fraction(-self.k, 2))})"


def elliptic_delta(tau: int, p: int, k: int, sign: str) -> int:
    """delta of X^2 - tau X + sign p^k, i.e. tau^2 -/+ 4 p^k."""
    if sign not in ("+", "-"):
        raise OrbitalZetaError("sign must be '+' or '-'")
    det = p**k if sign == "+" else -(p**k)
    return tau * tau - 4 * det


def normalized_elliptic_weight(tau: int, p: int, k: int, sign: str) -> EllipticWeight:
    """p^(-k/2) times the Langlands value for X^2 - tau X + sign p^k over Q."""
    if not arith.is_prime(p):
        raise OrbitalZetaError(f"{p} is not prime")
    delta = elliptic_delta(tau, p, k, sign)
    return EllipticWeight(langlands_value(global_series(delta)), p, k)
