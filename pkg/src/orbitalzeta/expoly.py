"""Finite exponential polynomials ``sum c_i * m_i**(-s)`` with rational data.

Every exact identity in the package (local zeta functions, the global
orbital series, functional equations) is checked at this level, term by
term, before anything is evaluated numerically.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import OrbitalZetaError


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def format_fraction(x: Fraction) -> str:
    """Rational as a "num/den" string, denominators always written out."""
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ExpPoly:
    """Immutable map ``base -> coeff`` read as ``sum coeff * base**(-s)``.

    Bases are positive rationals, so the algebra is closed under the
    reflection ``s -> 1 - s``. Zero coefficients are never stored.
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def from_terms(cls, items: Iterable[tuple] | Mapping) -> "ExpPoly":
        """Build from ``(base, coeff)`` pairs (or a mapping), merging like bases."""
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[Fraction, Fraction] = {}
        for base, coeff in items:
            base, coeff = _frac(base), _frac(coeff)
            if base <= 0:
                raise OrbitalZetaError(f"base must be positive, got {base}")
            acc[base] = acc.get(base, Fraction(0)) + coeff
        return cls(tuple(sorted((b, c) for b, c in acc.items() if c != 0)))

    @classmethod
    def constant(cls, c=1) -> "ExpPoly":
        return cls.from_terms([(1, c)])

    @classmethod
    def monomial(cls, base, coeff=1) -> "ExpPoly":
        """The single term ``coeff * base**(-s)``."""
        return cls.from_terms([(base, coeff)])

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        return ExpPoly.from_terms(self.terms + other.terms)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly(tuple((b, -c) for b, c in self.terms))

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        return self + (-other)

    def __mul__(self, other) -> "ExpPoly":
        if not isinstance(other, ExpPoly):
            return ExpPoly.from_terms((b, c * _frac(other)) for b, c in self.terms)
        return ExpPoly.from_terms(
            (b1 * b2, c1 * c2) for b1, c1 in self.terms for b2, c2 in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExpPoly":
        out = ExpPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def reflect(self) -> "ExpPoly":
        """The exponential polynomial of ``s -> P(1 - s)``.

        ``c * b**(-(1 - s)) = (c / b) * (1 / b)**(-s)``.
        """
        return ExpPoly.from_terms((1 / b, c / b) for b, c in self.terms)

    def is_self_dual(self) -> bool:
        return self.reflect() == self

    def __call__(self, s) -> complex:
        return self.evaluate(s)

    def evaluate(self, s) -> complex:
        s = complex(s)
        return sum(float(c) * cmath.exp(-s * cmath.log(float(b))) for b, c in self.terms)

    def at_integer(self, n: int) -> Fraction:
        """Exact value at an integer point."""
        return sum((c * b ** (-n) for b, c in self.terms), Fraction(0))

    def to_json(self) -> list[dict[str, str]]:
        return [{"base": format_fraction(b), "coeff": format_fraction(c)} for b, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "ExpPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_terms((Fraction(t["base"]), Fraction(t["coeff"])) for t in data)

    def __repr__(self) -> str:
        if not self.terms:
            return "ExpPoly(0)"
        parts = [f"{c}*({b})^-s" if b != 1 else f"{c}" for b, c in self.terms]
        return "ExpPoly(" + " + ".join(parts) + ")"


def expoly_mul(p1: ExpPoly, p2: ExpPoly) -> ExpPoly:
    return p1 * p2


def expoly_reflect(p: ExpPoly) -> ExpPoly:
    return p.reflect()
