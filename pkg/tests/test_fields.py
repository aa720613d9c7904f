import random

import pytest

from orbitalzeta import arith
from orbitalzeta.errors import OrbitalZetaError
from orbitalzeta.fields import (
    QQ,
    IdealData,
    ideals_up_to,
    is_square_in_field,
    parse_element,
    parse_field,
    prime_support,
    primes_above,
    sqrt_in_ring,
)
from orbitalzeta.suites import TEST_FIELDS


def test_primes_above_examples():
    (q,) = primes_above(parse_field("Q(sqrt:5)"), 3)
    assert (q.e, q.f, q.q) == (1, 2, 9)
    (q,) = primes_above(QQ, 7)
    assert (q.e, q.f) == (1, 1)
    (q,) = primes_above(parse_field("Q(sqrt:2)"), 2)
    assert (q.e, q.f) == (2, 1)


@pytest.mark.parametrize("spec", TEST_FIELDS[1:] + ("Q(sqrt:-7)", "Q(sqrt:17)"))
def test_efg_equals_two(spec):
    F = parse_field(spec)
    for p in (2, 3, 5, 7, 11, 13, 17, 19):
        qs = primes_above(F, p)
        assert sum(q.e * q.f for q in qs) == 2
        # the number of primes matches the Kronecker symbol of the discriminant
        k = arith.kronecker(F.discriminant, p)
        assert len(qs) == (2 if k == 1 else 1)
        assert all(q.e == (2 if k == 0 else 1) for q in qs)


@pytest.mark.parametrize("spec", TEST_FIELDS[1:])
def test_valuation_respects_norm(spec):
    F = parse_field(spec)
    rng = random.Random(spec)
    for _ in range(200):
        x = F(rng.randint(-60, 60), rng.randint(-60, 60))
        if x.is_zero():
            continue
        N = abs(x.norm())
        assert N == abs((x * x.conjugate()).a)
        # N(x) = prod N(q)^v_q(x)
        prod = 1
        for q in prime_support(x):
            prod *= q.q ** q.valuation(x)
        assert prod == N


@pytest.mark.parametrize("spec", TEST_FIELDS)
def test_square_detection(spec):
    F = parse_field(spec)
    rng = random.Random(spec)
    for _ in range(100):
        y = F(rng.randint(-30, 30), 0 if F.is_rational else rng.randint(-30, 30))
        if y.is_zero():
            continue
        assert is_square_in_field(y * y)
        r = sqrt_in_ring(y * y)
        assert r * r == y * y


def test_ideal_enumeration_counts_over_q():
    ideals = ideals_up_to(QQ, 200)
    assert sorted(I.norm for I in ideals) == list(range(1, 201))


def test_ideal_enumeration_gaussian():
    # ideals of Z[i] of norm n are counted by sum_{d | n} chi_-4(d)
    F = parse_field("Q(sqrt:-1)")
    counts = [0] * 301
    for I in ideals_up_to(F, 300):
        counts[I.norm] += 1
    for n in range(1, 301):
        assert counts[n] == sum(arith.kronecker(-4, d) for d in arith.divisors(n))


def test_ideal_arithmetic():
    F = parse_field("Q(sqrt:-5)")
    q2 = primes_above(F, 2)[0]
    q3a, q3b = primes_above(F, 3)
    I = IdealData.from_pairs([(q2, 2), (q3a, 1)])
    J = IdealData.from_pairs([(q3a, 1)])
    assert I.norm == 4 * 3
    assert J.divides(I) and not IdealData.from_pairs([(q3b, 1)]).divides(I)
    assert (I / J) * J == I
    assert len(I.divisors()) == 3 * 2


def test_parsing():
    F = parse_field("Q(sqrt:-5)")
    assert parse_element(F, "3+2*w") == F(3, 2)
    assert parse_element(F, "-w") == F(0, -1)
    assert parse_element(QQ, "-12") == QQ(-12)
    with pytest.raises(OrbitalZetaError):
        parse_field("Q(i)")
    with pytest.raises(OrbitalZetaError):
        parse_element(QQ, "1+w")
