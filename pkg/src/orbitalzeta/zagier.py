"""The generalised Zagier zeta function L(s, delta) and its completion.

The finite part is exact: summing N(I)^(1-2s) times the stripped Euler
factors over the ideals I allowed by the congruence conditions gives
N(S)^-s O(s, delta) as an exponential polynomial, over any base field.
The analytic part (Dirichlet L-values, Gamma factors) is over Q only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import gamma as _gamma

from . import arith
from .errors import OrbitalZetaError
from .expoly import ExpPoly
from .fields import QQ, AlgebraicInt, BaseField, IdealData, prime_support
from .global_formula import global_series, rational_conductor
from .lfunctions import dirichlet_L
from .local import satisfies_congruence, validate_delta


@dataclass(frozen=True)
class ZagierDecomposition:
    delta: AlgebraicInt
    admissible: tuple[IdealData, ...]
    # for each admissible I, the primes where chi_I is forced to vanish
    dropped: tuple[tuple, ...]
    finite_part: ExpPoly
    s_delta: IdealData

    def admissible_norms(self) -> list[int]:
        return sorted(I.norm for I in self.admissible)


def _square_divisor_candidates(delta: AlgebraicInt) -> list[IdealData]:
    """Ideals I with I^2 | (delta)."""
    pairs = [(q, q.valuation(delta) // 2) for q in prime_support(delta)]
    return IdealData.from_pairs(pairs).divisors()


def zagier_decompose(delta, field: BaseField | None = None) -> ZagierDecomposition:
    """Admissible ideals from the congruence predicate, and the finite part Z(s).

    A prime q is dropped from chi_I when I*q is still admissible, which
    is how S_delta / I shows up without ever computing S_delta. The result
    is checked against N(S)^-s O(s, delta) and a mismatch is a hard error.
    """
    if not isinstance(delta, AlgebraicInt):
        delta = (field or QQ)(int(delta))
    validate_delta(delta)
    admissible = [I for I in _square_divisor_candidates(delta) if satisfies_congruence(I, delta)]
    adm_set = set(admissible)
    series = global_series(delta)
    chi = {q: t.chi for q, t, _ in series.local}
    Z = ExpPoly()
    dropped = []
    for I in admissible:
        NI = I.norm
        term = ExpPoly.monomial(NI * NI, NI)
        drop = []
        for q in chi:
            if I * IdealData.from_pairs([(q, 1)]) in adm_set:
                drop.append(q)
                term = term * ExpPoly.from_terms([(1, 1), (q.q, -chi[q])])
        dropped.append(tuple(drop))
        Z = Z + term
    S = series.s_delta
    if Z * ExpPoly.monomial(Fraction(1, S.norm)) != series.product:
        raise AssertionError(f"finite Zagier identity fails for delta = {delta}")
    return ZagierDecomposition(delta, tuple(admissible), tuple(dropped), Z, S)


# ---------------------------------------------------------------------------
# Analytic side over Q
# ---------------------------------------------------------------------------


def parity(delta: int) -> int:
    """i_delta: 0 for delta > 0, 1 for delta < 0."""
    return 0 if delta > 0 else 1


@dataclass(frozen=True)
class CompletedZagier:
    delta: int
    D: int
    S: int
    i: int

    @property
    def conductor(self) -> int:
        return abs(self.D)

    @classmethod
    def of(cls, delta: int) -> "CompletedZagier":
        delta = int(delta)
        S, D = rational_conductor(delta)
        return cls(delta, D, S, parity(delta))

    def L(self, s: complex) -> complex:
        return zagier_L(s, self.delta)

    def Lambda(self, s: complex) -> complex:
        return completed_lambda(s, self.delta)

    def Lambda_chi(self, s: complex) -> complex:
        """(|D|/pi)^(s/2) Gamma((s+i)/2) L(s, chi_D)."""
        s = complex(s)
        return (
            cmath.exp(s / 2 * math.log(abs(self.D) / math.pi))
            * complex(_gamma((s + self.i) / 2))
            * dirichlet_L(s, self.D)
        )


def zagier_L(s: complex, delta: int) -> complex:
    """N(S)^-s O(s, delta) L(s, chi_D) over Q."""
    s = complex(s)
    S, D = rational_conductor(int(delta))
    O = global_series(int(delta)).product
    return cmath.exp(-s * math.log(S)) * O.evaluate(s) * dirichlet_L(s, D)


def zagier_L_direct(s: complex, delta: int) -> complex:
    """sum over f with f^2 | delta and delta/f^2 = 0,1 mod 4 of f^(1-2s) L(s, (delta/f^2 / .)).

    Each non-primitive L-function is the primitive one with the Euler
    factors at primes dividing the conductor ratio removed; those primes
    are read off the Kronecker symbol of delta/f^2 itself.
    """
    s = complex(s)
    delta = int(delta)
    _, D = rational_conductor(delta)
    base = dirichlet_L(s, D)
    total = 0j
    g = 1
    for p, e in arith.factor(delta).factors:
        g *= p ** (e // 2)
    for f in arith.divisors(g):
        d = delta // (f * f)
        if d % 4 not in (0, 1):
            continue
        term = cmath.exp((1 - 2 * s) * math.log(f)) * base
        for p in arith.factor(d).primes():
            if arith.kronecker(d, p) == 0 and arith.kronecker(D, p) != 0:
                term *= 1 - arith.kronecker(D, p) * cmath.exp(-s * math.log(p))
        total += term
    return total


def completed_lambda(s: complex, delta: int) -> complex:
    """(|delta|/pi)^(s/2) Gamma((s + i_delta)/2) L(s, delta)."""
    s = complex(s)
    delta = int(delta)
    i = parity(delta)
    return (
        cmath.exp(s / 2 * math.log(abs(delta) / math.pi))
        * complex(_gamma((s + i) / 2))
        * zagier_L(s, delta)
    )


def functional_equation_residual(s: complex, delta: int) -> float:
    """|Lambda(s) - Lambda(1-s)| / (1 + |Lambda(s)|)."""
    a = completed_lambda(s, delta)
    b = completed_lambda(1 - complex(s), delta)
    return abs(a - b) / (1 + abs(a))


def check_rational(delta) -> int:
    if isinstance(delta, AlgebraicInt):
        if not delta.field.is_rational:
            raise OrbitalZetaError("numerical L-functions are implemented over Q only")
        return delta.a
    return int(delta)
