"""Dirichlet L-functions of quadratic characters in double precision.

L(s, chi_D) = |D|^-s sum_(a=1..|D|) chi_D(a) zeta(s, a/|D|), with each
Hurwitz zeta evaluated by Euler-Maclaurin after shifting the argument by
``SHIFT``. The 1/(s - 1) pieces are combined across the character before
evaluation, so s = 1 is an ordinary point.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from . import arith
from .errors import OrbitalZetaError

SHIFT = 30
BERNOULLI_TERMS = 12

# B_2k / (2k)! for k = 1..BERNOULLI_TERMS
_B = bernoulli(2 * BERNOULLI_TERMS)
_EM = tuple(float(_B[2 * k]) / math.factorial(2 * k) for k in range(1, BERNOULLI_TERMS + 1))


def _expm1_over(z: complex) -> complex:
    """(e^z - 1) / z, continuous through z = 0."""
    if abs(z) < 1e-3:
        return 1 + z / 2 + z * z / 6 + z**3 / 24 + z**4 / 120
    return (cmath.exp(z) - 1) / z


def _hurwitz_regular(s: complex, x: float) -> complex:
    """zeta(s, x) minus its pole term (SHIFT + x)^(1-s) / (s - 1)."""
    n = np.arange(SHIFT) + x
    total = complex(np.sum(np.exp(-s * np.log(n))))
    w = SHIFT + x
    logw = math.log(w)
    total += 0.5 * cmath.exp(-s * logw)
    # Euler-Maclaurin tail: sum B_2k/(2k)! * s(s+1)...(s+2k-2) * w^(-s-2k+1)
    rising = s
    power = cmath.exp(-(s + 1) * logw)
    for k, c in enumerate(_EM, start=1):
        total += c * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= w * w
    return total


def hurwitz_zeta(s: complex, x: float) -> complex:
    """zeta(s, x) for 0 < x <= 1 and s != 1."""
    s = complex(s)
    if s == 1:
        raise OrbitalZetaError("the Hurwitz zeta function has a pole at s = 1")
    w = SHIFT + x
    return _hurwitz_regular(s, x) + cmath.exp((1 - s) * math.log(w)) / (s - 1)


def _power(x: np.ndarray, s: complex) -> np.ndarray:
    """x^-s with the modulus from a correctly rounded power."""
    out = np.power(x, -s.real).astype(complex)
    if s.imag:
        out *= np.exp(-1j * s.imag * np.log(x))
    return out


@lru_cache(maxsize=512)
def _character(D: int) -> tuple[int, ...]:
    N = abs(D)
    return tuple(arith.kronecker(D, a) for a in range(1, N + 1))


def dirichlet_L(s: complex, D: int) -> complex:
    """L(s, (D/.)) for a fundamental discriminant D != 1."""
    if D == 1:
        raise OrbitalZetaError("D = 1 gives the Riemann zeta function, which is excluded")
    if not arith.is_fundamental_discriminant(D):
        raise OrbitalZetaError(f"{D} is not a fundamental discriminant")
    s = complex(s)
    N = abs(D)
    chi = np.array(_character(D), dtype=float)
    a = np.nonzero(chi)[0] + 1
    c = chi[a - 1]
    # the head |D|^-s sum_(n < SHIFT) (n + a/|D|)^-s is just sum chi(m) m^-s
    m = (np.arange(SHIFT)[:, None] * N + a[None, :]).ravel()
    head = np.tile(c, SHIFT) * _power(m.astype(float), s)
    parts = [head]
    x = a / N
    w = SHIFT + x
    logw = np.log(w)
    scale = complex(_power(np.array([float(N)]), s)[0])
    tail = 0.5 * _power(w, s)
    rising = s
    power = _power(w, s + 1)
    w2 = w * w
    for k, e in enumerate(_EM, start=1):
        tail = tail + e * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power = power / w2
    parts.append(scale * c * tail)
    # sum chi(a) w_a^(1-s) / (s-1) = sum chi(a) (w_a^(1-s) - 1) / (s-1) because
    # sum chi(a) = 0; near s = 1 the quotient is taken through its series
    if abs(1 - s) * float(logw.max()) < 1e-3:
        pole = -logw * np.array([_expm1_over((1 - s) * lw) for lw in logw])
    else:
        pole = (_power(w, s - 1) - 1) / (s - 1)
    parts.append(scale * c * pole)
    terms = np.concatenate(parts)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))
