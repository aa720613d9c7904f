from fractions import Fraction

from hypothesis import given, strategies as st

from orbitalzeta.expoly import ExpPoly, expoly_mul, expoly_reflect

bases = st.integers(1, 12).flatmap(lambda n: st.integers(1, 12).map(lambda d: Fraction(n, d)))
coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=10)
polys = st.lists(st.tuples(bases, coeffs), max_size=5).map(ExpPoly.from_terms)


def test_examples():
    P = ExpPoly.from_terms([(3, 2), (5, -1)])
    assert expoly_mul(ExpPoly.constant(1), P) == P
    two = ExpPoly.monomial(2)
    assert two * two == ExpPoly.monomial(4)
    a = ExpPoly.from_terms([(1, 1), (3, -1)])
    b = ExpPoly.from_terms([(1, 1), (3, 1)])
    assert a * b == ExpPoly.from_terms([(1, 1), (9, -1)])


def test_reflect_examples():
    # 3 * 9^-s  ->  (1/3) * (1/9)^-s
    assert expoly_reflect(ExpPoly.monomial(9, 3)) == ExpPoly.monomial(Fraction(1, 9), Fraction(1, 3))
    assert expoly_reflect(ExpPoly.monomial(1, 7)) == ExpPoly.monomial(1, 7)


def test_zero_terms_dropped():
    assert not ExpPoly.from_terms([(2, 1), (2, -1)])


@given(polys)
def test_reflect_involution(P):
    assert P.reflect().reflect() == P


@given(polys, polys)
def test_reflect_is_multiplicative(P, Q):
    assert (P * Q).reflect() == P.reflect() * Q.reflect()


@given(polys, polys, st.integers(-3, 4))
def test_evaluation_homomorphism(P, Q, n):
    assert (P * Q).at_integer(n) == P.at_integer(n) * Q.at_integer(n)
    assert (P + Q).at_integer(n) == P.at_integer(n) + Q.at_integer(n)


@given(polys, st.integers(-3, 4))
def test_reflection_is_s_to_one_minus_s(P, n):
    assert P.reflect().at_integer(n) == P.at_integer(1 - n)


@given(polys)
def test_float_evaluation_agrees(P):
    z = P.evaluate(2)
    assert abs(z - float(P.at_integer(2))) < 1e-9 * (1 + abs(z))


@given(polys)
def test_json_roundtrip(P):
    assert ExpPoly.from_json(P.to_json()) == P
