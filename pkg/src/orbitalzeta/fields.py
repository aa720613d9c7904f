"""Base fields Q and Q(sqrt m): integers, prime ideals, factored ideals.

Ideals of a quadratic ring of integers are handled as Z-lattices in the
coordinates of the integral basis ``{1, w}``, kept in Hermite normal form.
That is enough for membership, reduction and enumeration of the finite
quotients ``O_K / q^N`` used by every local test.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator

from . import arith
from .errors import OrbitalZetaError


@dataclass(frozen=True)
class BaseField:
    """Q (``m is None``) or Q(sqrt m) for squarefree ``m`` not in {0, 1}."""

    m: int | None = None

    def __post_init__(self):
        if self.m is not None:
            if self.m in (0, 1) or arith.squarefree_part(self.m) != self.m:
                raise OrbitalZetaError(f"m={self.m} must be squarefree and not 0 or 1")

    @property
    def is_rational(self) -> bool:
        return self.m is None

    @property
    def degree(self) -> int:
        return 1 if self.m is None else 2

    @property
    def discriminant(self) -> int:
        if self.m is None:
            return 1
        return self.m if self.m % 4 == 1 else 4 * self.m

    @property
    def omega_trace(self) -> int:
        """t in w^2 = t*w - n."""
        return 1 if self.m is not None and self.m % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        """n in w^2 = t*w - n."""
        if self.m is None:
            return 0
        return (1 - self.m) // 4 if self.m % 4 == 1 else -self.m

    def __call__(self, a: int, b: int = 0) -> "AlgebraicInt":
        return AlgebraicInt(self, a, b)

    def spec(self) -> str:
        return "Q" if self.m is None else f"Q(sqrt:{self.m})"

    def __str__(self) -> str:
        return self.spec()

    def primes_above(self, p: int) -> list["LocalPrime"]:
        return primes_above(self, p)


QQ = BaseField()


@dataclass(frozen=True)
class AlgebraicInt:
    """``a + b*w`` in the ring of integers of ``field`` (``b == 0`` over Q)."""

    field: BaseField
    a: int
    b: int = 0

    def __post_init__(self):
        if self.field.is_rational and self.b:
            raise OrbitalZetaError("elements of Z have no w-coordinate")

    def _coerce(self, other) -> "AlgebraicInt":
        if isinstance(other, AlgebraicInt):
            if other.field != self.field:
                raise OrbitalZetaError("elements live in different fields")
            return other
        return AlgebraicInt(self.field, int(other), 0)

    def __add__(self, other):
        o = self._coerce(other)
        return AlgebraicInt(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicInt(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        t, n = self.field.omega_trace, self.field.omega_norm
        a, b, c, d = self.a, self.b, o.a, o.b
        return AlgebraicInt(self.field, a * c - n * b * d, a * d + b * c + t * b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = AlgebraicInt(self.field, 1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "AlgebraicInt":
        return AlgebraicInt(self.field, self.a + self.field.omega_trace * self.b, -self.b)

    def norm(self) -> int:
        if self.field.is_rational:
            return self.a
        t, n = self.field.omega_trace, self.field.omega_norm
        return self.a * self.a + t * self.a * self.b + n * self.b * self.b

    def trace(self) -> int:
        if self.field.is_rational:
            return self.a
        return 2 * self.a + self.field.omega_trace * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational_integer(self) -> bool:
        return self.b == 0

    def exact_div(self, k: int) -> "AlgebraicInt":
        """Division by a rational integer that divides both coordinates."""
        if self.a % k or self.b % k:
            raise OrbitalZetaError(f"{self} is not divisible by {k}")
        return AlgebraicInt(self.field, self.a // k, self.b // k)

    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def __repr__(self) -> str:
        return f"AlgebraicInt({self}, {self.field})"


def sqrt_in_ring(x: AlgebraicInt) -> AlgebraicInt | None:
    """A square root of ``x`` inside O_K, or None when x is not a square in K."""
    F = x.field
    if F.is_rational:
        if x.a >= 0 and arith.is_square(x.a):
            return F(math.isqrt(x.a))
        return None
    N = x.norm()
    if N < 0 or not arith.is_square(N):
        return None
    rN = math.isqrt(N)
    for nx in {rN, -rN}:
        T2 = x.trace() + 2 * nx
        if T2 < 0 or not arith.is_square(T2):
            continue
        for T in {math.isqrt(T2), -math.isqrt(T2)}:
            if T != 0:
                # y^2 - T y + nx = 0 with y^2 = x gives y = (x + nx) / T
                num = x + nx
                if num.a % T or num.b % T:
                    continue
                y = num.exact_div(T)
                if y * y == x:
                    return y
            elif x.b == 0 and x.a % F.m == 0 and arith.is_square(x.a // F.m):
                # y is a rational multiple of sqrt(m); integrality forces an integer multiple
                k = math.isqrt(x.a // F.m)
                sqrt_m = F(0, 1) if F.omega_trace == 0 else F(-1, 2)
                return sqrt_m * k
    return None


def is_square_in_field(x: AlgebraicInt) -> bool:
    return sqrt_in_ring(x) is not None


# ---------------------------------------------------------------------------
# Z-lattices in Z^2 (ideals of a quadratic ring of integers)
# ---------------------------------------------------------------------------


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice ``Z*(a, 0) + Z*(b, d)`` with ``0 <= b < a``."""

    a: int
    b: int
    d: int

    @classmethod
    def from_generators(cls, vectors) -> "Lattice":
        pivot = None
        flat: list[int] = []
        for x, y in vectors:
            if pivot is None:
                if y != 0:
                    pivot = (x, y)
                else:
                    flat.append(x)
                continue
            px, py = pivot
            if y == 0:
                flat.append(x)
                continue
            g, s, t = _egcd(py, y)
            flat.append((y // g) * px - (py // g) * x)
            pivot = (s * px + t * x, g)
        a = 0
        for x in flat:
            a = math.gcd(a, x)
        if pivot is None or a == 0:
            raise OrbitalZetaError("generators do not span a full-rank lattice")
        px, py = pivot
        if py < 0:
            px, py = -px, -py
        return cls(a, px % a, py)

    @property
    def index(self) -> int:
        return self.a * self.d

    def contains(self, x: int, y: int) -> bool:
        if y % self.d:
            return False
        return (x - (y // self.d) * self.b) % self.a == 0

    def reduce(self, x: int, y: int) -> tuple[int, int]:
        t = y // self.d
        return ((x - t * self.b) % self.a, y - t * self.d)

    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, 0), (self.b, self.d))


def ideal_product(F: BaseField, I: Lattice, J: Lattice) -> Lattice:
    gens = []
    for u in I.basis():
        for v in J.basis():
            w = F(*u) * F(*v)
            gens.append(w.coords())
    return Lattice.from_generators(gens)


# ---------------------------------------------------------------------------
# Prime ideals with their local data
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalPrime:
    """A prime q of K over the rational prime p with its local invariants.

    ``root`` pins down which prime over p this is (the residue of w in
    O_K/q when q has degree one); it is None over Q and for inert primes.
    """

    field: BaseField
    p: int
    e: int
    f: int
    root: int | None = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def q(self) -> int:
        """Size of the residue field."""
        return self.p**self.f

    @property
    def residue_characteristic(self) -> int:
        return self.p

    @cached_property
    def lattice(self) -> Lattice | None:
        if self.field.is_rational:
            return None
        if self.f == 2:
            return Lattice(self.p, 0, self.p)
        return Lattice.from_generators([(self.p, 0), (-self.root, 1)])

    @cached_property
    def uniformizer(self) -> AlgebraicInt:
        F = self.field
        if F.is_rational or self.f == 2:
            return F(self.p)
        pi = F(-self.root, 1)
        if self.in_power(pi, 2):
            pi = pi + self.p
        return pi

    def power(self, N: int) -> Lattice:
        """q^N as a lattice (quadratic fields only)."""
        if N in self._cache:
            return self._cache[N]
        if N == 0:
            L = Lattice(1, 0, 1)
        elif N == 1:
            L = self.lattice
        else:
            L = ideal_product(self.field, self.power(N - 1), self.lattice)
        self._cache[N] = L
        return L

    def in_power(self, x: AlgebraicInt | int, N: int) -> bool:
        """x in q^N."""
        if N <= 0:
            return True
        if isinstance(x, int):
            x = self.field(x)
        if self.field.is_rational:
            return x.a % self.p**N == 0
        return self.power(N).contains(x.a, x.b)

    def congruent(self, x, y, N: int) -> bool:
        return self.in_power(x - y, N)

    def valuation(self, x: AlgebraicInt | int) -> int:
        if isinstance(x, int):
            x = self.field(x)
        if x.is_zero():
            raise OrbitalZetaError("valuation of zero is infinite")
        if self.field.is_rational:
            return arith.valuation(x.a, self.p)
        v = 0
        while self.in_power(x, v + 1):
            v += 1
        return v

    def residues(self, N: int) -> Iterator[AlgebraicInt]:
        """A complete set of representatives of O_K / q^N."""
        F = self.field
        if F.is_rational:
            for x in range(self.p**N):
                yield F(x)
            return
        L = self.power(N)
        for y in range(L.d):
            for x in range(L.a):
                yield F(x, y)

    def units(self, N: int) -> Iterator[AlgebraicInt]:
        for x in self.residues(N):
            if not self.in_power(x, 1):
                yield x

    def label(self) -> str:
        if self.field.is_rational or self.f == 2:
            return f"({self.p})"
        return f"({self.p}, w{-self.root:+d})" if self.root else f"({self.p}, w)"

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "f": self.f, "label": self.label()}

    def sort_key(self):
        return (self.q, self.p, self.root if self.root is not None else -1)

    def __str__(self) -> str:
        return self.label()


@lru_cache(maxsize=4096)
def _primes_above(F: BaseField, p: int) -> tuple[LocalPrime, ...]:
    return tuple(_split_prime(F, p))


def primes_above(F: BaseField, p: int) -> list[LocalPrime]:
    """The primes of K over ``p`` with e and f (Dedekind-Kummer on w's minimal polynomial).

    Results are memoised so the lattice caches on each prime are shared.
    """
    return list(_primes_above(F, p))


def _split_prime(F: BaseField, p: int) -> list[LocalPrime]:
    if not arith.is_prime(p):
        raise OrbitalZetaError(f"{p} is not prime")
    if F.is_rational:
        return [LocalPrime(F, p, 1, 1)]
    t, n = F.omega_trace, F.omega_norm
    roots = [r for r in range(p) if (r * r - t * r + n) % p == 0]
    k = arith.kronecker(F.discriminant, p)
    if k == -1:
        return [LocalPrime(F, p, 1, 2)]
    if k == 0:
        return [LocalPrime(F, p, 2, 1, roots[0])]
    return [LocalPrime(F, p, 1, 1, r) for r in roots]


def prime_support(x: AlgebraicInt) -> list[LocalPrime]:
    """Primes dividing the principal ideal (x), ordered by norm."""
    if x.is_zero():
        raise OrbitalZetaError("zero generates no proper factorisation")
    out = []
    for p in arith.factor(abs(x.norm())).primes():
        for q in primes_above(x.field, p):
            if q.in_power(x, 1):
                out.append(q)
    return sorted(out, key=LocalPrime.sort_key)


# ---------------------------------------------------------------------------
# Ideals in factored form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealData:
    """Product of prime powers; exponents are positive."""

    factors: tuple[tuple[LocalPrime, int], ...] = ()

    @classmethod
    def from_pairs(cls, pairs) -> "IdealData":
        merged: dict[LocalPrime, int] = {}
        for q, k in pairs:
            if k < 0:
                raise OrbitalZetaError("negative exponent in an integral ideal")
            if k:
                merged[q] = merged.get(q, 0) + k
        return cls(tuple(sorted(merged.items(), key=lambda t: t[0].sort_key())))

    @property
    def norm(self) -> int:
        out = 1
        for q, k in self.factors:
            out *= q.q**k
        return out

    def exponent(self, q: LocalPrime) -> int:
        for r, k in self.factors:
            if r == q:
                return k
        return 0

    def primes(self) -> list[LocalPrime]:
        return [q for q, _ in self.factors]

    def divides(self, other: "IdealData") -> bool:
        return all(other.exponent(q) >= k for q, k in self.factors)

    def __truediv__(self, other: "IdealData") -> "IdealData":
        if not other.divides(self):
            raise OrbitalZetaError("quotient is not integral")
        return IdealData.from_pairs((q, k - other.exponent(q)) for q, k in self.factors)

    def __mul__(self, other: "IdealData") -> "IdealData":
        return IdealData.from_pairs(self.factors + other.factors)

    def divisors(self) -> list["IdealData"]:
        qs = self.primes()
        out = []
        for exps in product(*(range(k + 1) for _, k in self.factors)):
            out.append(IdealData.from_pairs(zip(qs, exps)))
        return out

    def is_unit(self) -> bool:
        return not self.factors

    def to_json(self) -> list[dict]:
        return [dict(q.to_json(), exp=k) for q, k in self.factors]

    def pairs(self) -> list[list[int]]:
        return [[q.p, k] for q, k in self.factors]

    def __str__(self) -> str:
        if not self.factors:
            return "(1)"
        return "*".join(f"{q}^{k}" if k > 1 else str(q) for q, k in self.factors)


def ideals_up_to(F: BaseField, bound: int) -> list[IdealData]:
    """Every nonzero ideal of O_K with norm at most ``bound``."""
    primes: list[LocalPrime] = []
    for p in range(2, bound + 1):
        if arith.is_prime(p):
            primes.extend(q for q in primes_above(F, p) if q.q <= bound)
    primes.sort(key=LocalPrime.sort_key)
    out: list[IdealData] = []

    def extend(start: int, pairs: list, norm: int):
        out.append(IdealData.from_pairs(pairs))
        for i in range(start, len(primes)):
            q = primes[i]
            if norm * q.q > bound:
                break
            k, nn = 1, norm * q.q
            while nn <= bound:
                extend(i + 1, pairs + [(q, k)], nn)
                k += 1
                nn *= q.q

    extend(0, [], 1)
    return out


# ---------------------------------------------------------------------------
# Parsing of the textual field and element specs
# ---------------------------------------------------------------------------

_FIELD_RE = re.compile(r"^\s*Q\s*(?:\(\s*sqrt\s*:\s*(-?\d+)\s*\))?\s*$")


def parse_field(spec: str) -> BaseField:
    """``"Q"`` or ``"Q(sqrt:m)"``."""
    m = _FIELD_RE.match(spec)
    if not m:
        raise OrbitalZetaError(f"bad field spec {spec!r}; expected 'Q' or 'Q(sqrt:m)'")
    return BaseField(int(m.group(1))) if m.group(1) else QQ


def parse_element(F: BaseField, spec: str) -> AlgebraicInt:
    """``"a"``, ``"a+b*w"``, ``"b*w"`` and the like."""
    s = spec.replace(" ", "")
    if "w" not in s:
        try:
            return F(int(s))
        except ValueError:
            raise OrbitalZetaError(f"bad element spec {spec!r}") from None
    if F.is_rational:
        raise OrbitalZetaError("w is not defined over Q")
    m = re.match(r"^([+-]?\d+)?(?:([+-]?)(\d*)\*?w)$", s)
    if not m:
        raise OrbitalZetaError(f"bad element spec {spec!r}")
    a = int(m.group(1)) if m.group(1) else 0
    b = int(m.group(3)) if m.group(3) else 1
    if m.group(2) == "-":
        b = -b
    return F(a, b)
