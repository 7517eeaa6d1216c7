"""Seeded random corpora and deterministic parallel evaluation.

Trial i draws from its own spawned child of the seed, so the corpus is a
pure function of (seed, i) and survives any execution order.  Digit
distributions: geometric with success probability 1/2, capped at 10^6.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

import numpy as np

from .functions import (AuxFunction, ConstAux, PowerAux, ScaledDirichlet,
                        PowerDirichlet, ApproxFunction)
from .reals import PeriodicWord
from .words import Word

ENV_THREADS = "DIRICHLET_LAB_THREADS"
DIGIT_CAP = 10 ** 6

T = TypeVar("T")
U = TypeVar("U")


def thread_count() -> int:
    env = os.environ.get(ENV_THREADS, "").strip()
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def parallel_map(fn: Callable[[T], U], items: Sequence[T]) -> list[U]:
    """Order-preserving map; thread count never changes the result."""
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    child = np.random.SeedSequence(entropy=(seed, index))
    return np.random.Generator(np.random.Philox(child))


def random_digits(rng: np.random.Generator, length: int) -> tuple[int, ...]:
    draw = rng.geometric(0.5, size=length)
    return tuple(int(min(d, DIGIT_CAP)) for d in draw)


def random_word(rng: np.random.Generator, min_len: int = 4, max_len: int = 10) -> Word:
    length = int(rng.integers(min_len, max_len + 1))
    return Word(random_digits(rng, length))


def random_surd(rng: np.random.Generator, min_len: int = 4, max_len: int = 10) -> PeriodicWord:
    """Purely periodic point whose period is a random word."""
    return PeriodicWord(Word(()), random_word(rng, min_len, max_len))


def random_aux(rng: np.random.Generator) -> AuxFunction:
    """Threshold family for audit sweeps: rational constants and integer powers."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        num = int(rng.integers(1, 80))
        den = int(rng.integers(1, 8))
        return ConstAux(Fraction(num, den))
    if kind == 1:
        tau = int(rng.integers(1, 4))
        scale_num = int(rng.integers(1, 6))
        return PowerAux(Fraction(tau), Fraction(scale_num))
    num = int(rng.integers(1, 100))
    return ConstAux(Fraction(num, 10))


def random_psi(rng: np.random.Generator) -> ApproxFunction:
    """Approximation family with exactly decidable thresholds."""
    if int(rng.integers(0, 2)) == 0:
        c = Fraction(int(rng.integers(1, 100)), 100)
        if c == 1:
            c = Fraction(99, 100)
        return ScaledDirichlet(c)
    a = Fraction(int(rng.integers(1, 5)))
    tau = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
    t0 = 2
    u, v = tau.numerator, tau.denominator
    while t0 ** u <= a ** v:
        t0 += 1
    return PowerDirichlet(a, tau, t0=t0)
