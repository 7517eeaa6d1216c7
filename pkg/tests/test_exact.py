import math
import random
from fractions import Fraction

import pytest

from dirichlet_lab.exact import (Quad, cmp_exact, cmp_scaled_power, exact_abs,
                                 exact_sign, make_quad)


def test_make_quad_collapses_rational_cases():
    assert make_quad(3, 0, 2, 5) == Fraction(3, 2)
    assert make_quad(1, 2, 3, 4) == Fraction(5, 3)  # sqrt(4) folds
    v = make_quad(-1, 1, 2, 5)
    assert isinstance(v, Quad)
    assert abs(float(v) - 0.6180339887498949) < 1e-15


def test_normalization_and_equality():
    a = make_quad(2, 2, 4, 5)
    b = make_quad(1, 1, 2, 5)
    assert a == b
    c = make_quad(-1, -1, -2, 5)  # sign moved out of denominator
    assert c.c > 0 and float(c) == pytest.approx(float(b))


def test_arithmetic_against_float():
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = rng.randint(-9, 9), rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 9)
        d = rng.choice([2, 3, 5, 7, 13])
        q = make_quad(a, b, c, d)
        if not isinstance(q, Quad):
            continue
        r = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        fq, fr = float(q), float(r)
        assert float(q + r) == pytest.approx(fq + fr)
        assert float(q - r) == pytest.approx(fq - fr)
        assert float(q * r) == pytest.approx(fq * fr, abs=1e-12)
        if r != 0:
            assert float(q / r) == pytest.approx(fq / fr)
        if fq != 0:
            assert float(q.reciprocal()) == pytest.approx(1.0 / fq)
        assert float(q ** 3) == pytest.approx(fq ** 3, rel=1e-12)


def test_sign_is_exact_near_ties():
    # 665857/470832 is a convergent of sqrt(2): the difference is ~1e-12
    v = make_quad(-665857, 470832, 1, 2)
    assert isinstance(v, Quad)
    assert v.sign() == -1  # sqrt(2) < 665857/470832
    w = make_quad(665857, -470832, 1, 2)
    assert w.sign() == 1


def test_ordering_with_fractions():
    golden = make_quad(-1, 1, 2, 5)  # 0.61803398874989...
    assert golden > Fraction(618033, 1000000)
    assert golden < Fraction(618034, 1000000)
    assert not golden == Fraction(618034, 1000000)


def test_cmp_exact_mixed():
    golden = make_quad(-1, 1, 2, 5)
    other = make_quad(1, 1, 4, 5)  # (1+sqrt5)/4 ~ 0.809
    assert cmp_exact(golden, other) < 0
    assert cmp_exact(other, golden) > 0
    assert cmp_exact(golden, golden) == 0
    assert cmp_exact(Fraction(1, 2), Fraction(2, 3)) < 0


@pytest.mark.parametrize("value,coef,base,exp,expected", [
    (Fraction(3), Fraction(1), 9, Fraction(1, 2), 0),      # 3 == 9^0.5
    (Fraction(31, 10), Fraction(1), 9, Fraction(1, 2), 1),
    (Fraction(29, 10), Fraction(1), 9, Fraction(1, 2), -1),
    (Fraction(1, 3), Fraction(1), 9, Fraction(-1, 2), 0),
    (Fraction(8), Fraction(1), 4, Fraction(3, 2), 0),      # 4^1.5 = 8
    (Fraction(-1), Fraction(1), 7, Fraction(5, 3), -1),    # negative vs positive
    (Fraction(5), Fraction(-1), 7, Fraction(1, 2), 1),     # positive vs negative
])
def test_cmp_scaled_power_rational(value, coef, base, exp, expected):
    assert cmp_scaled_power(value, coef, base, exp) == expected


def test_cmp_scaled_power_quad_values():
    golden = make_quad(-1, 1, 2, 5)  # 0.618...
    # against sqrt(t): golden < sqrt(2)
    assert cmp_scaled_power(golden, Fraction(1), 2, Fraction(1, 2)) < 0
    # against 1/sqrt(3) ~ 0.577: golden greater
    assert cmp_scaled_power(golden, Fraction(1), 3, Fraction(-1, 2)) > 0
    # against 1/sqrt(2) ~ 0.707: golden smaller
    assert cmp_scaled_power(golden, Fraction(1), 2, Fraction(-1, 2)) < 0


def test_cmp_scaled_power_randomized_against_float():
    rng = random.Random(11)
    for _ in range(500):
        value = Fraction(rng.randint(1, 400), rng.randint(1, 400))
        coef = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        base = rng.randint(2, 50)
        exp = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        got = cmp_scaled_power(value, coef, base, exp)
        approx = float(value) - float(coef) * base ** float(exp)
        if abs(approx) > 1e-9:
            assert got == (1 if approx > 0 else -1), (value, coef, base, exp)


def test_pow_and_abs():
    v = make_quad(1, -1, 1, 2)  # 1 - sqrt(2) < 0
    assert exact_sign(v) == -1
    a = exact_abs(v)
    assert exact_sign(a) == 1
    assert float(v ** 2) == pytest.approx((1 - math.sqrt(2)) ** 2)
    assert v ** 0 == Fraction(1)


def test_mixed_radicands_rejected():
    a = make_quad(0, 1, 1, 2)
    b = make_quad(0, 1, 1, 3)
    with pytest.raises(ValueError):
        _ = a + b
