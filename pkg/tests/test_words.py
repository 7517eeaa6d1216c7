import random
from fractions import Fraction

import pytest

from dirichlet_lab.words import (EmptyWordError, Word, backward_ratio,
                                 canonical_word, convergents, cylinder,
                                 enumerate_words, evaluate, twin_word, word)


def test_word_validation():
    with pytest.raises(ValueError):
        word(1, 0, 2)
    with pytest.raises(ValueError):
        Word((1, -3))
    assert len(Word(())) == 0


def test_canonical_flag():
    assert word(1).is_canonical()
    assert word(1, 2).is_canonical()
    assert not word(1, 1).is_canonical()
    assert Word(()).is_canonical()


def test_convergents_spec_rows():
    t = convergents(word(1, 2, 3))
    assert [(t.pk(k), t.qk(k)) for k in (1, 2, 3)] == [(1, 1), (2, 3), (7, 10)]
    empty = convergents(Word(()))
    assert (empty.pk(-1), empty.qk(-1)) == (1, 0)
    assert (empty.pk(0), empty.qk(0)) == (0, 1)
    fib = convergents(word(1, 1, 1, 1, 1))
    assert [fib.qk(k) for k in range(1, 6)] == [1, 2, 3, 5, 8]


def test_evaluate_examples():
    assert evaluate(word(1, 2, 3)) == Fraction(7, 10)
    assert evaluate(word(2)) == Fraction(1, 2)
    assert evaluate(word(1, 1, 1)) == Fraction(2, 3)
    with pytest.raises(EmptyWordError):
        evaluate(Word(()))


def test_convergents_match_evaluate_oracle():
    # recurrence vs independent nested-fraction evaluation
    for length in range(1, 6):
        for w in enumerate_words(length, 3):
            assert convergents(w).value() == evaluate(w)


def test_determinant_identity():
    rng = random.Random(3)
    for _ in range(200):
        w = Word(tuple(rng.randint(1, 50) for _ in range(rng.randint(1, 12))))
        t = convergents(w)
        for k in range(1, t.n + 1):
            assert t.pk(k - 1) * t.qk(k) - t.pk(k) * t.qk(k - 1) == (-1) ** k


def test_cylinder_examples():
    c = cylinder(word(1))
    assert (c.left, c.right) == (Fraction(1, 2), Fraction(1))
    assert not c.left_closed and c.right_closed
    c2 = cylinder(word(1, 1))
    assert (c2.left, c2.right) == (Fraction(1, 2), Fraction(2, 3))
    assert c2.left_closed and not c2.right_closed
    assert c2.length == Fraction(1, 6)
    ones10 = cylinder(Word((1,) * 10))
    assert ones10.length == Fraction(1, 89 * (89 + 55))


def test_cylinder_length_identity_and_bounds():
    for w in enumerate_words(4, 4):
        t = convergents(w)
        c = cylinder(w)
        qn, qn1 = t.qk(t.n), t.qk(t.n - 1)
        assert c.length == Fraction(1, qn * (qn + qn1))
        assert Fraction(1, 2 * qn * qn) <= c.length <= Fraction(1, qn * qn)


def test_cylinder_nesting_and_disjointness():
    rng = random.Random(5)
    for _ in range(50):
        w = Word(tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 5))))
        outer = cylinder(w)
        inner = cylinder(w.extended(rng.randint(1, 6)))
        assert outer.left <= inner.left and inner.right <= outer.right
    cyls = [cylinder(w) for w in enumerate_words(3, 3)]
    for i, a in enumerate(cyls):
        for b in cyls[i + 1:]:
            assert a.right <= b.left or b.right <= a.left


def test_backward_ratio_reversal():
    assert backward_ratio(word(1, 2, 3)) == Fraction(3, 10) == evaluate(word(3, 2, 1))
    assert backward_ratio(word(7)) == Fraction(1, 7)
    assert backward_ratio(word(2, 1)) == Fraction(2, 3) == evaluate(word(1, 2))
    for w in enumerate_words(5, 3):
        assert backward_ratio(w) == evaluate(w.reversed())


def test_q_growth_lower_bound():
    for w in enumerate_words(8, 2):
        t = convergents(w)
        for k in range(1, t.n + 1):
            assert t.qk(k) ** 2 >= 2 ** (k - 1)


def test_canonical_word_round_trip():
    rng = random.Random(9)
    for _ in range(400):
        q = rng.randint(2, 10 ** 6)
        p = rng.randint(1, q - 1)
        x = Fraction(p, q)
        w = canonical_word(x)
        assert evaluate(w) == x
        assert w.is_canonical()
    assert canonical_word(Fraction(0)).digits == ()
    assert canonical_word(Fraction(2, 3)).digits == (1, 2)
    assert canonical_word(Fraction(83, 200)).digits == (2, 2, 2, 3, 1, 3)


def test_twin_word_values():
    for digits in [(2,), (1, 2), (2, 2, 2, 3, 1, 3), (5,), (3, 1, 2)]:
        w = Word(digits)
        tw = twin_word(w)
        assert tw is not None
        assert evaluate(tw) == evaluate(w)
        assert abs(len(tw) - len(w)) == 1
    assert twin_word(word(1)) is None
