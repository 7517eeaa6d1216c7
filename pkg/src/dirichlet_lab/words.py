"""Finite continued-fraction words, convergent tables, and cylinder intervals.

All integer work uses Python's arbitrary-precision ints: denominators grow
at least like 2^(n/2), so fixed-width arithmetic is never acceptable here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class EmptyWordError(ValueError):
    pass


@dataclass(frozen=True)
class Word:
    """A finite sequence of partial quotients, each >= 1 (may be empty)."""

    digits: tuple[int, ...]

    def __post_init__(self):
        for a in self.digits:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"partial quotients must be integers >= 1, got {a!r}")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def is_canonical(self) -> bool:
        """Whether this word is the canonical full expansion of a rational:
        last digit >= 2 unless the word has length 1."""
        if len(self.digits) <= 1:
            return True
        return self.digits[-1] >= 2

    def reversed(self) -> "Word":
        return Word(tuple(reversed(self.digits)))

    def extended(self, digit: int) -> "Word":
        return Word(self.digits + (digit,))

    def to_json(self) -> list[str]:
        return [str(a) for a in self.digits]


def word(*digits: int) -> Word:
    return Word(tuple(digits))


@dataclass(frozen=True)
class ConvergentTable:
    """Numerators and denominators p_k, q_k for k = -1..n.

    Row conventions p_{-1}=1, q_{-1}=0, p_0=0, q_0=1; thereafter the
    two-term recurrence p_{k+1} = a_{k+1} p_k + p_{k-1} (same for q).
    """

    word: Word
    p: tuple[int, ...]  # p[k+1] is p_k
    q: tuple[int, ...]

    def pk(self, k: int) -> int:
        return self.p[k + 1]

    def qk(self, k: int) -> int:
        return self.q[k + 1]

    @property
    def n(self) -> int:
        return len(self.word)

    def value(self) -> Fraction:
        if self.n == 0:
            raise EmptyWordError("empty word has no value")
        return Fraction(self.pk(self.n), self.qk(self.n))

    def rows(self) -> Iterable[tuple[int, int, int]]:
        for k in range(-1, self.n + 1):
            yield k, self.pk(k), self.qk(k)

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "p": [str(v) for v in self.p],
            "q": [str(v) for v in self.q],
        }


def convergents(w: Word | Sequence[int]) -> ConvergentTable:
    """Run the two-term recurrence over the word's digits."""
    if not isinstance(w, Word):
        w = Word(tuple(w))
    p = [1, 0]
    q = [0, 1]
    for a in w.digits:
        p.append(a * p[-1] + p[-2])
        q.append(a * q[-1] + q[-2])
    return ConvergentTable(word=w, p=tuple(p), q=tuple(q))


def evaluate(w: Word | Sequence[int]) -> Fraction:
    """Value of [a1,...,an] by bottom-up nested-fraction evaluation.

    Deliberately avoids the convergent recurrence so it can serve as an
    independent cross-check of `convergents`.
    """
    digits = w.digits if isinstance(w, Word) else tuple(w)
    if not digits:
        raise EmptyWordError("cannot evaluate the empty word")
    acc = Fraction(0)
    for a in reversed(digits):
        acc = 1 / (a + acc)
    return acc


def backward_ratio(w: Word) -> Fraction:
    """q_{n-1}/q_n; equals the value of the reversed word."""
    if len(w) == 0:
        raise EmptyWordError("backward ratio needs a nonempty word")
    t = convergents(w)
    return Fraction(t.qk(t.n - 1), t.qk(t.n))


@dataclass(frozen=True)
class Cylinder:
    """The interval of reals whose expansion starts with a given word.

    Endpoint openness alternates with the parity of the word length:
    even n gives [p_n/q_n, (p_n+p_{n-1})/(q_n+q_{n-1})), odd n the mirror.
    """

    word: Word
    left: Fraction
    right: Fraction
    left_closed: bool
    right_closed: bool

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def contains(self, x: Fraction) -> bool:
        if self.left < x < self.right:
            return True
        if x == self.left:
            return self.left_closed
        if x == self.right:
            return self.right_closed
        return False

    def to_json(self) -> dict:
        return {
            "word": self.word.to_json(),
            "left": str(self.left),
            "right": str(self.right),
            "left_closed": self.left_closed,
            "right_closed": self.right_closed,
            "length": str(self.length),
        }


def cylinder(w: Word) -> Cylinder:
    """Exact cylinder interval; its length is 1/(q_n (q_n + q_{n-1}))."""
    if len(w) == 0:
        raise EmptyWordError("cylinder needs a nonempty word")
    t = convergents(w)
    n = t.n
    v = Fraction(t.pk(n), t.qk(n))
    v_mediant = Fraction(t.pk(n) + t.pk(n - 1), t.qk(n) + t.qk(n - 1))
    if n % 2 == 0:
        return Cylinder(word=w, left=v, right=v_mediant,
                        left_closed=True, right_closed=False)
    return Cylinder(word=w, left=v_mediant, right=v,
                    left_closed=False, right_closed=True)


def canonical_word(x: Fraction) -> Word:
    """Canonical expansion of a rational in (0, 1]: Euclid's algorithm.

    The last digit is automatically >= 2 except for x = 1 -> (1).
    Returns the empty word for x = 0.
    """
    if not 0 <= x <= 1:
        raise ValueError("canonical_word expects x in [0, 1]")
    p, q = x.numerator, x.denominator
    digits = []
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        q, p = p, r
    return Word(tuple(digits))


def twin_word(w: Word) -> Word | None:
    """The non-canonical twin expansion: [b1..bk] -> [b1..bk-1, 1].

    Returns None when no valid twin exists (single digit 1).
    """
    if len(w) == 0:
        raise EmptyWordError("twin of the empty word is undefined")
    last = w.digits[-1]
    if last >= 2:
        return Word(w.digits[:-1] + (last - 1, 1))
    if len(w) >= 2:
        # last digit 1: fold it back, [.., b, 1] -> [.., b+1]
        return Word(w.digits[:-2] + (w.digits[-2] + 1,))
    return None


def enumerate_words(length: int, digit_cap: int) -> Iterable[Word]:
    """All words of exactly `length` digits drawn from 1..digit_cap."""
    if length == 0:
        yield Word(())
        return
    stack = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == length - 1:
            for a in range(1, digit_cap + 1):
                yield Word(prefix + (a,))
        else:
            for a in range(digit_cap, 0, -1):
                stack.append(prefix + (a,))
