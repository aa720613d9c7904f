from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitalzeta.errors import GuardError, OrbitalZetaError
from orbitalzeta.expoly import ExpPoly
from orbitalzeta.fields import QQ, parse_field, primes_above
from orbitalzeta.local import SplitType
from orbitalzeta.order_zeta import (
    count_ideals_oracle,
    counts_times_denominator,
    jtilde,
    jtilde_divisor_form,
    order_polynomial,
    orbital_value,
)

Q_SIZES = (2, 3, 4, 5, 7, 9)
R, U, S = SplitType.RAMIFIED, SplitType.INERT, SplitType.SPLIT


def explicit(family, n, q):
    """R_n = sum q^i X^2i, U_n = (1+X)R_(n-1) + q^n X^2n, S_n = (1-X)R_(n-1) + q^n X^2n."""
    def r(m):
        c = [0] * (2 * m + 1)
        for i in range(m + 1):
            c[2 * i] = q**i
        return c

    if family is R:
        return r(n)
    if n == 0:
        return [1]
    sign = 1 if family is U else -1
    prev = r(n - 1)
    c = [0] * (2 * n + 1)
    for i, a in enumerate(prev):
        c[i] += a
        c[i + 1] += sign * a
    c[2 * n] += q**n
    return c


def test_examples():
    assert order_polynomial(R, 1, 3).coeffs == (1, 0, 3)
    assert order_polynomial(U, 1, 3).coeffs == (1, 1, 3)
    for q in Q_SIZES:
        assert order_polynomial(S, 0, q).coeffs == (1,)
        assert order_polynomial(U, 0, q).coeffs == (1,)
        assert order_polynomial(R, 0, q).coeffs == (1,)


@pytest.mark.parametrize("family", list(SplitType))
def test_closed_forms_and_recurrence(family):
    for q in Q_SIZES:
        for n in range(11):
            P = order_polynomial(family, n, q)
            assert list(P.coeffs) == explicit(family, n, q)
            if n:
                # consecutive depths only differ in the top two degrees
                prev = list(order_polynomial(family, n - 1, q).coeffs) + [0, 0]
                diff = [a - b for a, b in zip(P.coeffs, prev)]
                assert all(c == 0 for c in diff[: 2 * n - 1])


@pytest.mark.parametrize("family", list(SplitType))
def test_polynomial_functional_equation(family):
    for q in Q_SIZES:
        for n in range(11):
            P = order_polynomial(family, n, q)
            assert P.is_self_dual()
            # (q x^2)^n P(1/(q x)) = P(x) at a few rational points
            for x in (Fraction(1, 2), Fraction(3), Fraction(-2, 7)):
                assert (q * x * x) ** n * P(1 / (q * x)) == P(x)


def test_jtilde_examples():
    assert jtilde(order_polynomial(R, 0, 5)) == ExpPoly.constant(1)
    J = jtilde(order_polynomial(U, 1, 3))
    assert J == ExpPoly.from_terms([(Fraction(1, 3), 1), (1, 1), (3, 3)])
    assert J.at_integer(1) == 5


@given(st.sampled_from(list(SplitType)), st.integers(0, 10), st.sampled_from(Q_SIZES))
def test_jtilde_self_dual_and_divisor_form(family, n, q):
    J = jtilde(order_polynomial(family, n, q))
    assert J.is_self_dual()
    assert jtilde_divisor_form(family, n, q) == J
    assert J.at_integer(1) == orbital_value(family, n, q)


def test_orbital_value_examples():
    assert orbital_value(S, 1, 3) == 3
    assert orbital_value(U, 1, 3) == 5
    assert orbital_value(R, 1, 3) == 4
    for family in SplitType:
        assert orbital_value(family, 0, 7) == 1


def test_bad_inputs():
    with pytest.raises(OrbitalZetaError):
        order_polynomial(R, -1, 3)
    with pytest.raises(OrbitalZetaError):
        order_polynomial(R, 1, 6)


def test_count_oracle_examples():
    # the raw counts are the coefficients of P / V; multiplying back by V gives P
    q3 = primes_above(QQ, 3)[0]
    counts = count_ideals_oracle(U, 1, q3, 2)
    assert counts == [1, 1, 4]
    assert counts_times_denominator(counts, U) == [1, 1, 3]
    counts = count_ideals_oracle(R, 1, 2, 2)
    assert counts == [1, 1, 3]
    assert counts_times_denominator(counts, R) == [1, 0, 2]
    for family in SplitType:
        assert count_ideals_oracle(family, 0, 5, 0) == [1]


@pytest.mark.parametrize("family", list(SplitType))
@pytest.mark.parametrize("p", [2, 3])
def test_count_oracle_matches_polynomial(family, p):
    for n in range(3):
        counts = count_ideals_oracle(family, n, p, 4)
        P = order_polynomial(family, n, p)
        assert counts == P.series(5)
        assert counts_times_denominator(counts, family) == (list(P.coeffs) + [0] * 5)[:5]


def test_count_oracle_guard():
    with pytest.raises(GuardError):
        count_ideals_oracle(R, 1, 5, 9)
    with pytest.raises(OrbitalZetaError):
        count_ideals_oracle(R, 1, primes_above(parse_field("Q(sqrt:2)"), 3)[0], 2)
