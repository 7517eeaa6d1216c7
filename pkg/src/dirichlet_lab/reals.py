"""Exactly representable points of [0,1) and the Gauss-map machinery.

Three input kinds are supported: exact rationals, eventually periodic
words (quadratic irrationals, with exact tail arithmetic in their own
quadratic field), and validated intervals (which never guess a digit at
a reciprocal-integer breakpoint).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact import ExactReal, Quad, cmp_exact, exact_abs, make_quad
from .words import ConvergentTable, Word, canonical_word, convergents, evaluate


class TerminatedError(ValueError):
    """A digit or tail beyond the end of a terminating expansion was requested."""


class PrecisionExhaustedError(ValueError):
    """An interval input straddles a decision boundary."""

    def __init__(self, certified: int, message: str = ""):
        self.certified = certified
        super().__init__(message or f"precision exhausted after {certified} certified digits")


STATUS_EXACT = "exact"
STATUS_PERIODIC = "periodic"
STATUS_TRUNCATED = "truncated"
STATUS_PRECISION = "precision-exhausted"
STATUS_ZERO = "zero"


@dataclass(frozen=True)
class ExactRational:
    value: Fraction

    def __post_init__(self):
        if not 0 <= self.value < 1:
            raise ValueError("rational inputs must lie in [0, 1)")


@dataclass(frozen=True)
class PeriodicWord:
    """Eventually periodic expansion [pre; per per per ...] — a quadratic surd."""

    preperiod: Word
    period: Word

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("period must be nonempty")


@dataclass(frozen=True)
class ValidatedInterval:
    """An enclosure [lo, hi] of an unknown point of [0, 1)."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not (0 <= self.lo <= self.hi < 1):
            raise ValueError("interval must satisfy 0 <= lo <= hi < 1")


RealInput = Union[ExactRational, PeriodicWord, ValidatedInterval]


@dataclass(frozen=True)
class ExpansionStatus:
    kind: str
    certified: int


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction


def rational(p: int, q: int) -> ExactRational:
    return ExactRational(Fraction(p, q))


def surd(preperiod: tuple[int, ...], period: tuple[int, ...]) -> PeriodicWord:
    return PeriodicWord(Word(tuple(preperiod)), Word(tuple(period)))


GOLDEN = surd((), (1,))


# ---------------------------------------------------------------------------
# surd values and exact tails

def _purely_periodic_value(per: Word) -> Quad:
    # z = [per...] solves q_{k-1} z^2 + (q_k - p_{k-1}) z - p_k = 0
    t = convergents(per)
    k = t.n
    aa = t.qk(k - 1)
    bb = t.qk(k) - t.pk(k - 1)
    cc = -t.pk(k)
    disc = bb * bb - 4 * aa * cc
    z = make_quad(-bb, 1, 2 * aa, disc)
    if not isinstance(z, Quad):
        raise ValueError(f"period {per.digits} does not define an irrational")
    return z


def surd_value(x: PeriodicWord) -> Quad:
    z = _purely_periodic_value(x.period)
    m = len(x.preperiod)
    if m == 0:
        return z
    t = convergents(x.preperiod)
    num = t.pk(m) + t.pk(m - 1) * z
    den = t.qk(m) + t.qk(m - 1) * z
    v = num / den
    assert isinstance(v, Quad)
    return v


_TAIL_CACHE: dict[tuple[tuple[int, ...], tuple[int, ...]], list[Quad]] = {}
_TAIL_LOCK = threading.Lock()


def _surd_tails(x: PeriodicWord, n: int) -> Quad:
    """T^n(x), computed by exact Gauss steps so all tails share one field."""
    key = (x.preperiod.digits, x.period.digits)
    with _TAIL_LOCK:
        tails = _TAIL_CACHE.setdefault(key, [surd_value(x)])
        while len(tails) <= n:
            i = len(tails)  # next tail index; digit a_i strips to T^i
            a = digit_at(x, i)
            prev = tails[-1]
            nxt = prev.reciprocal() - a
            assert isinstance(nxt, Quad)
            tails.append(nxt)
        return tails[n]


def digit_at(x: PeriodicWord, i: int) -> int:
    """Partial quotient a_i (1-based) read straight off the word."""
    m = len(x.preperiod)
    if i <= m:
        return x.preperiod[i - 1]
    return x.period[(i - 1 - m) % len(x.period)]


# ---------------------------------------------------------------------------
# digit extraction

def _rational_digits(x: Fraction, depth: int) -> tuple[tuple[int, ...], str]:
    w = canonical_word(x)
    if len(w) <= depth:
        return w.digits, STATUS_EXACT
    return w.digits[:depth], STATUS_TRUNCATED


def _interval_digit(lo: Fraction, hi: Fraction) -> tuple[int, Fraction, Fraction] | None:
    """One certified Gauss digit of every x in [lo, hi], or None if straddling."""
    if lo <= 0 or hi >= 1:
        return None
    if lo == hi:
        q, p = lo.denominator, lo.numerator
        a, r = divmod(q, p)
        return a, Fraction(r, p), Fraction(r, p)
    k = int(1 / hi)  # floor, exact on Fractions
    if lo > Fraction(1, k + 1):  # [lo,hi] inside (1/(k+1), 1/k]
        return k, 1 / hi - k, 1 / lo - k
    return None


def digits_up_to(x: RealInput, count: int) -> tuple[tuple[int, ...], str]:
    """First `count` partial quotients and how the extraction ended.

    The second element is one of the STATUS_* strings; fewer than `count`
    digits come back only for terminating rationals and exhausted intervals.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if isinstance(x, ExactRational):
        if x.value == 0:
            return (), STATUS_ZERO
        return _rational_digits(x.value, count)
    if isinstance(x, PeriodicWord):
        return tuple(digit_at(x, i) for i in range(1, count + 1)), STATUS_PERIODIC
    lo, hi = x.lo, x.hi
    out: list[int] = []
    for _ in range(count):
        step = _interval_digit(lo, hi)
        if step is None:
            return tuple(out), STATUS_PRECISION
        a, lo, hi = step
        out.append(a)
    return tuple(out), STATUS_TRUNCATED


def continued_fraction(x: RealInput, depth: int) -> tuple[Word, ExpansionStatus]:
    """Expansion up to `depth` digits with an exactness status."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    digits, status = digits_up_to(x, depth)
    return Word(digits), ExpansionStatus(kind=status, certified=len(digits))


def gauss_step(x: RealInput) -> tuple[int, RealInput]:
    """First digit a_1(x) and an exact/validated representation of T(x)."""
    if isinstance(x, ExactRational):
        if x.value == 0:
            raise TerminatedError("T(0) = 0 has no digit")
        q, p = x.value.denominator, x.value.numerator
        a, r = divmod(q, p)
        return a, ExactRational(Fraction(r, p))
    if isinstance(x, PeriodicWord):
        a = digit_at(x, 1)
        if len(x.preperiod) == 0:
            per = x.period.digits
            return a, PeriodicWord(Word(()), Word(per[1:] + per[:1]))
        return a, PeriodicWord(Word(x.preperiod.digits[1:]), x.period)
    step = _interval_digit(x.lo, x.hi)
    if step is None:
        raise PrecisionExhaustedError(0, "interval straddles a digit breakpoint")
    a, lo, hi = step
    if hi >= 1:
        hi = Fraction(1) - Fraction(1, 10 ** 50)  # cannot occur: T image is < 1
    return a, ValidatedInterval(lo, hi)


def tail_value(x: RealInput, n: int) -> ExactReal:
    """T^n(x) exactly; rationals may terminate to 0, surds stay in their field."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(x, ExactRational):
        w = canonical_word(x.value)
        if n > len(w):
            raise TerminatedError(f"expansion has only {len(w)} digits")
        if n == len(w):
            return Fraction(0)
        return evaluate(Word(w.digits[n:]))
    if isinstance(x, PeriodicWord):
        return _surd_tails(x, n)
    raise TypeError("tail_value needs an exact input; use tail_enclosure for intervals")


def tail_enclosure(x: ValidatedInterval, n: int) -> Enclosure:
    lo, hi = x.lo, x.hi
    for _ in range(n):
        step = _interval_digit(lo, hi)
        if step is None:
            raise PrecisionExhaustedError(0, "tail not certified at this precision")
        _, lo, hi = step
    return Enclosure(lo, hi)


def convergents_of(x: RealInput, n: int) -> ConvergentTable:
    """Table over the first n certified digits; raises if fewer exist."""
    digits, status = digits_up_to(x, n)
    if len(digits) < n:
        if status == STATUS_PRECISION:
            raise PrecisionExhaustedError(len(digits))
        raise TerminatedError(f"only {len(digits)} digits available")
    return convergents(Word(digits))


# ---------------------------------------------------------------------------
# classical approximation identities

def dirichlet_form(x: RealInput, n: int) -> ExactReal | Enclosure:
    """|q_{n-1} x - p_{n-1}| via the tail identity 1/(q_n + T^n(x) q_{n-1})."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = convergents_of(x, n)
    qn, qn1 = t.qk(n), t.qk(n - 1)
    if isinstance(x, ValidatedInterval):
        enc = tail_enclosure(x, n)
        return Enclosure(1 / (qn + enc.hi * qn1), 1 / (qn + enc.lo * qn1))
    tail = tail_value(x, n)
    den = qn + tail * qn1
    if isinstance(den, Quad):
        v = den.reciprocal()
        return v
    return 1 / den


def exact_value(x: RealInput) -> ExactReal:
    if isinstance(x, ExactRational):
        return x.value
    if isinstance(x, PeriodicWord):
        return surd_value(x)
    raise TypeError("intervals have no exact value")


def legendre_locate(p: int, q: int, x: RealInput) -> int | None:
    """Index n with p/q = p_n/q_n whenever |x - p/q| < 1/(2 q^2).

    Outside the Legendre regime the index is still returned if p/q happens
    to be a convergent; otherwise None.
    """
    import math

    if q < 1 or math.gcd(p, q) != 1:
        raise ValueError("p/q must be in lowest terms with q >= 1")
    target = Fraction(p, q)
    if isinstance(x, ValidatedInterval):
        # decide the inequality by enclosure; undecidable straddles raise
        bound = Fraction(1, 2 * q * q)
        gap_lo = max(x.lo - target, target - x.hi, Fraction(0))
        gap_hi = max(x.hi - target, target - x.lo)
        if gap_hi < bound:
            within = True
        elif gap_lo >= bound:
            within = False
        else:
            raise PrecisionExhaustedError(0, "Legendre inequality undecided")
    else:
        diff = exact_abs(exact_value(x) - target)
        within = cmp_exact(diff, Fraction(1, 2 * q * q)) < 0

    index = _locate_convergent(p, q, x)
    if within and index is None:
        raise RuntimeError("optimal-approximation location failed on a certified input")
    return index


def _locate_convergent(p: int, q: int, x: RealInput) -> int | None:
    digits: list[int] = []
    k = 0
    pprev, pcur = 1, 0
    qprev, qcur = 0, 1
    while qcur <= q:
        if (pcur, qcur) == (p, q):
            return k
        got, _ = digits_up_to(x, k + 1)
        if len(got) < k + 1:
            return None
        a = got[k]
        digits.append(a)
        pprev, pcur = pcur, a * pcur + pprev
        qprev, qcur = qcur, a * qcur + qprev
        k += 1
    if (pcur, qcur) == (p, q):
        return k
    return None


def p5_bounds_check(x: RealInput, n: int) -> tuple[Fraction, ExactReal, Fraction]:
    """(1/(3 a_{n+1} q_n^2), |x - p_n/q_n|, 1/(a_{n+1} q_n^2)), asserting strictness."""
    if n < 1:
        raise ValueError("n must be >= 1")
    digits, status = digits_up_to(x, n + 1)
    if len(digits) < n + 1:
        if status == STATUS_PRECISION:
            raise PrecisionExhaustedError(len(digits))
        raise TerminatedError("a_{n+1} does not exist for this input")
    t = convergents(Word(digits))
    qn = t.qk(n)
    an1 = digits[n]
    lower = Fraction(1, 3 * an1 * qn * qn)
    upper = Fraction(1, an1 * qn * qn)
    if isinstance(x, ValidatedInterval):
        conv = Fraction(t.pk(n), qn)
        gap_lo = max(x.lo - conv, conv - x.hi, Fraction(0))
        gap_hi = max(x.hi - conv, conv - x.lo)
        if not (lower < gap_lo and gap_hi < upper):
            raise PrecisionExhaustedError(n, "two-sided bound undecided at this precision")
        return lower, Enclosure(gap_lo, gap_hi), upper  # type: ignore[return-value]
    value = exact_abs(exact_value(x) - Fraction(t.pk(n), qn))
    if not (cmp_exact(value, lower) > 0 and cmp_exact(value, upper) < 0):
        raise AssertionError(f"two-sided convergent bound violated at n={n}")
    return lower, value, upper
