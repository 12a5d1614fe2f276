import random
from fractions import Fraction

import pytest

from knotsum.errors import NonIntegralExponent, NonIntegralSignPower
from knotsum.laurent import LaurentPoly

X = LaurentPoly.var(1)
ONE = LaurentPoly.one()


def poly(*terms):
    """poly((coeff, power_in_quarters), ...)"""
    return LaurentPoly({q: c for c, q in terms})


def random_poly(rng, span=3, max_coeff=4):
    return LaurentPoly({
        4 * rng.randint(-span, span): rng.randint(-max_coeff, max_coeff)
        for _ in range(rng.randint(0, 4))
    })


def test_mul_exponent_additivity():
    a_sq = LaurentPoly({8: 1})
    a_neg_sq = LaurentPoly({-8: 1})
    assert a_sq * a_neg_sq == ONE


def test_add_identity():
    p = X * X - X + ONE
    assert p + LaurentPoly.zero() == p


def test_delta_square():
    delta = LaurentPoly({8: -1, -8: -1})
    assert delta * delta == LaurentPoly({16: 1, 0: 2, -16: 1})


def test_canonical_no_zero_coeffs():
    p = X - X
    assert p.is_zero()
    assert p.terms == {}


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(200):
        p, q, r = (random_poly(rng) for _ in range(3))
        assert (p + q) + r == p + (q + r)
        assert p + q == q + p
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p * ONE == p
        assert p + LaurentPoly.zero() == p


def test_power():
    assert (X + ONE) ** 2 == X * X + 2 * X + ONE
    assert X ** 0 == ONE
    assert LaurentPoly({4: -1}) ** -3 == LaurentPoly({-12: -1})


def test_substitute_square():
    p = X * X - X + ONE
    assert p.substitute(1, 8) == poly((1, 16), (-1, 8), (1, 0))


def test_substitute_identity():
    rng = random.Random(5)
    for _ in range(50):
        p = random_poly(rng)
        assert p.substitute(1, 4) == p


def test_substitute_jones_quarter():
    f_trefoil = LaurentPoly({-16: 1, -48: 1, -64: -1})
    v = f_trefoil.substitute(1, -1)
    assert v == LaurentPoly({4: 1, 12: 1, 16: -1})


def test_substitute_sign_error_on_fractional():
    p = LaurentPoly({2: 1})  # v^(1/2)
    with pytest.raises(NonIntegralSignPower):
        p.substitute(-1, 4)


def test_substitute_off_grid_error():
    p = LaurentPoly({1: 1})  # v^(1/4)
    with pytest.raises(NonIntegralExponent):
        p.substitute(1, 2)


def test_substitute_is_ring_homomorphism():
    rng = random.Random(7)
    for _ in range(100):
        p, q = random_poly(rng), random_poly(rng)
        sign = rng.choice([1, -1])
        k = rng.choice([-8, -4, 4, 8])
        assert (p * q).substitute(sign, k) == p.substitute(sign, k) * q.substitute(sign, k)
        assert (p + q).substitute(sign, k) == p.substitute(sign, k) + q.substitute(sign, k)


def test_evaluate():
    p = X * X - X + ONE
    assert p.evaluate(-1) == 3
    assert ONE.evaluate(Fraction(7, 3)) == 1
    bracket_trefoil = LaurentPoly({20: -1, -12: -1, -28: 1})
    assert bracket_trefoil.evaluate(1) == -1


def test_evaluate_fractional_exponent_error():
    with pytest.raises(NonIntegralExponent):
        LaurentPoly({2: 1}).evaluate(2)


def test_dot_equals_examples():
    p = X * X - X + ONE
    q = -(X ** 3) + X * X - X
    ok, sign, shift = p.dot_equals(q)
    assert ok and sign == -1 and shift == -4
    assert p.dot_equals(p) == (True, 1, 0)
    r = X * X + X + ONE
    assert p.dot_equals(r)[0] is False


def test_dot_equals_is_equivalence():
    rng = random.Random(13)
    polys = [random_poly(rng) for _ in range(20)]
    for p in polys:
        assert p.dot_equals(p)[0]
        shifted = p.shifted(8)
        assert p.dot_equals(shifted)[0]
        assert p.dot_equals(-p)[0]
        assert shifted.dot_equals(p)[0]  # symmetric
    for p in polys:
        for q in polys:
            for r in polys:
                if p.dot_equals(q)[0] and q.dot_equals(r)[0]:
                    assert p.dot_equals(r)[0]


def test_dot_normal():
    p = -(X ** 3) + X * X - X
    n = p.dot_normal()
    assert n == X * X - X + ONE
    assert LaurentPoly.zero().dot_normal().is_zero()


def test_divide_exact():
    rng = random.Random(3)
    for _ in range(100):
        p, q = random_poly(rng), random_poly(rng)
        if q.is_zero():
            continue
        assert (p * q).divide_exact(q) == p
    with pytest.raises(ArithmeticError):
        (X + ONE).divide_exact(LaurentPoly({0: 2}))
