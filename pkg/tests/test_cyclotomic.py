import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclok.cyclotomic import (
    Cyclotomic,
    DivisionByZero,
    NotIntegral,
    NotUnitLength,
    UnitVector,
    classify_unit_vector,
)

Z = Cyclotomic.zeta


def numeric(z: Cyclotomic) -> complex:
    # independent embedding: sum c_j exp(2 pi i j / M)
    w = cmath.exp(2j * cmath.pi / z.conductor)
    return sum(complex(float(c)) * w**j for j, c in enumerate(z.coeffs))


conductors = st.integers(min_value=1, max_value=24)


@st.composite
def elements(draw, conductor=None, integral=False):
    m = conductor if conductor is not None else draw(conductors)
    if integral:
        coeffs = draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    else:
        coeffs = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=6), min_size=m, max_size=m))
    return Cyclotomic(m, coeffs)


@st.composite
def pairs(draw, integral=False):
    m = draw(conductors)
    return draw(elements(m, integral)), draw(elements(m, integral))


def test_ring_examples():
    assert Z(4) * Z(4) == -1
    assert Z(3) + Z(3, 2) == -1
    lifted = Cyclotomic.zeta(2).lift(4)
    assert lifted.conductor == 4 and lifted == -1


def test_conjugate_examples():
    assert Z(8).conjugate() == Z(8, 7)
    assert Cyclotomic.rational(3).conjugate() == 3
    assert (1 + Z(4)).conjugate() == 1 - Z(4)


def test_galois_examples():
    assert Z(5).galois(2) == Z(5, 2)
    z = Cyclotomic(7, [1, 2, 0, -1])
    assert z.galois(1) == z
    assert (1 + Z(3)).galois(2) == 1 + Z(3, 2)


def test_galois_requires_unit():
    with pytest.raises(ValueError):
        Z(6).galois(2)


def test_to_rational_examples():
    assert (Z(3) + Z(3, 2)).to_rational() == -1
    assert Z(4).to_rational() is None
    assert Cyclotomic.rational(Fraction(7, 2)).to_rational() == Fraction(7, 2)


def test_reduce_mod_p_examples():
    assert Z(4).reduce_mod_p(2) == 1
    assert (1 + Z(4)).reduce_mod_p(2) == 0
    assert Cyclotomic(9, [2, 3, 1]).reduce_mod_p(3) == 0


def test_reduce_requires_integral():
    with pytest.raises(NotIntegral):
        Cyclotomic.rational(Fraction(1, 2), 4).reduce_mod_p(2)


def test_root_of_unity_order_examples():
    assert Z(8, 3).root_of_unity_order() == 8
    assert Cyclotomic.rational(-1, 3).root_of_unity_order() == 2
    assert (1 + Z(4)).root_of_unity_order() is None


def test_classify_examples():
    zero8 = Cyclotomic.rational(0, 8)
    assert classify_unit_vector([zero8, Z(8, 3), zero8]) == UnitVector(1, 8)
    assert classify_unit_vector([1 + Z(3), Cyclotomic.rational(0, 3)]) == UnitVector(0, 6)
    res = classify_unit_vector([Cyclotomic.rational(1), Cyclotomic.rational(1)])
    assert isinstance(res, NotUnitLength) and res.norm == 2


def test_text_form():
    assert str(1 - Z(8, 2)) == "Q(zeta_8): 1 - 1*z^2"
    assert str(Cyclotomic.rational(0, 5)) == "Q(zeta_5): 0"


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Cyclotomic.rational(0, 5).inverse()


def test_mixed_conductors_lift():
    s = Z(4) + Z(6)
    assert s.conductor == 12
    assert abs(numeric(s) - (1j + cmath.exp(1j * cmath.pi / 3))) < 1e-9


@given(elements())
def test_parse_print_round_trip(z):
    assert Cyclotomic.parse(str(z)) == z
    assert str(Cyclotomic.parse(str(z))) == str(z)


@given(pairs())
def test_ring_ops_match_numeric_embedding(ab):
    a, b = ab
    assert abs(numeric(a + b) - (numeric(a) + numeric(b))) < 1e-7
    assert abs(numeric(a * b) - numeric(a) * numeric(b)) < 1e-6


@given(pairs())
def test_conjugate_is_multiplicative(ab):
    a, b = ab
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert abs(numeric(a.conjugate()) - numeric(a).conjugate()) < 1e-7


@given(pairs(), st.integers(1, 50))
def test_galois_commutes_with_ring_ops(ab, k):
    a, b = ab
    m = a.conductor
    if math.gcd(k, m) != 1:
        k = 1
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)


@given(elements())
def test_inverse(z):
    if z.is_zero():
        return
    assert z * z.inverse() == 1


@given(st.sampled_from([2, 3, 5]), st.integers(1, 3), st.data())
def test_reduction_homomorphism_prime_power(p, k, data):
    m = p**k
    if m > 27:
        m = p
    a = data.draw(elements(m, integral=True))
    b = data.draw(elements(m, integral=True))
    assert (a + b).reduce_mod_p(p) == (a.reduce_mod_p(p) + b.reduce_mod_p(p)) % p
    assert (a * b).reduce_mod_p(p) == (a.reduce_mod_p(p) * b.reduce_mod_p(p)) % p


@given(elements())
def test_norm_is_positive_numerically(z):
    n = z * z.conjugate()
    assert numeric(n).real > -1e-9


@given(conductors, st.integers(0, 100), st.integers(1, 8), st.data(), st.sampled_from([1, -1]))
def test_classify_unit_vectors(m, j, dim, data, sign):
    i = data.draw(st.integers(0, dim - 1))
    zs = [Cyclotomic.rational(0, m)] * dim
    u = Z(m, j) * sign
    zs[i] = u
    res = classify_unit_vector(zs)
    assert isinstance(res, UnitVector) and res.index == i
    # order oracle from the numeric argument
    angle = cmath.phase(numeric(u)) / (2 * cmath.pi)
    q = Fraction(angle).limit_denominator(200) % 1
    assert res.order == q.denominator


@given(conductors, st.lists(st.lists(st.integers(-2, 2), min_size=1, max_size=6), min_size=2, max_size=5))
def test_classify_never_accepts_two_nonzero_entries(m, rows):
    zs = [Cyclotomic(m, r) for r in rows]
    res = classify_unit_vector(zs)
    if isinstance(res, UnitVector):
        assert sum(1 for z in zs if not z.is_zero()) == 1
