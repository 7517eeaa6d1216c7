"""Executable cover constructions: tail-digit J sets, the two-to-one word
fiber over denominator pairs, coprime pair enumeration, pair sums, and the
dyadic-block bound with its measured constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .functions import (AuxFunction, DimensionFunction, PowerLaw,
                        UndecidedComparisonError)
from .sublinear import SublinearityCertificate
from .words import Word, canonical_word, convergents, twin_word

_EPS = 2.0 ** -52


class InvalidPairError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    pass


class NotApplicableError(RuntimeError):
    """Operation needs a sub-linearity certificate that does not exist."""


# ---------------------------------------------------------------------------
# J sets

@dataclass(frozen=True)
class JSet:
    """Union of the (n+1)-cylinders whose next digit clears the threshold.

    The union over all digits above the cutoff is a single interval pressed
    against p_n/q_n; its exact diameter is 1/(q_n (m q_n + q_{n-1})) where m
    is the smallest admissible digit.
    """

    word: Word
    threshold_num: Fraction          # Psi(q_n)/a_n when rational
    min_digit: int
    left: Fraction
    right: Fraction
    diameter: Fraction
    bound: Fraction                  # 1/(Psi(q_n) q_{n-1} q_n)

    def to_json(self) -> dict:
        from .report import frac_str

        return {
            "word": self.word.to_json(),
            "threshold": frac_str(self.threshold_num),
            "min_digit": self.min_digit,
            "left": frac_str(self.left),
            "right": frac_str(self.right),
            "diameter": frac_str(self.diameter),
            "diameter_bound": frac_str(self.bound),
        }


def j_set(w: Word, aux: AuxFunction) -> JSet:
    """Exact hull of the cylinders with a_{n+1} > Psi(q_n)/a_n."""
    if len(w) == 0:
        raise ValueError("J set needs a nonempty word")
    t = convergents(w)
    n = t.n
    pn, qn = t.pk(n), t.qk(n)
    pn1, qn1 = t.pk(n - 1), t.qk(n - 1)
    an = w.digits[-1]
    psi_qn = aux.value_fraction(qn)
    if psi_qn is None:
        raise UndecidedComparisonError(
            "J-set cutoffs need a rational-valued threshold family")
    theta = psi_qn / an
    m = theta.numerator // theta.denominator + 1  # smallest integer > theta
    far = Fraction(m * pn + pn1, m * qn + qn1)
    near = Fraction(pn, qn)
    left, right = (near, far) if near < far else (far, near)
    diameter = right - left
    assert diameter == Fraction(1, qn * (m * qn + qn1))
    bound = Fraction(1, 1) / (psi_qn * qn1 * qn)
    assert diameter <= bound, "J-set diameter bound violated"
    return JSet(w, theta, m, left, right, diameter, bound)


# ---------------------------------------------------------------------------
# fibers of the denominator-pair map

@dataclass(frozen=True)
class Fiber:
    p: int
    q: int
    words: tuple[Word, ...]

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q,
                "words": [w.to_json() for w in self.words]}


def fiber(p: int, q: int) -> Fiber:
    """All words whose last two denominators are (p, q).

    A reduced p/q with canonical expansion [b_1..b_k] yields the reversed
    word and the reversal of its one-longer twin; the pair (1,1) is the
    single degenerate case with a one-word fiber.
    """
    if q < 1 or not 1 <= p <= q or math.gcd(p, q) != 1:
        raise InvalidPairError(f"need coprime 1 <= p <= q, got ({p}, {q})")
    base = canonical_word(Fraction(p, q))
    words = [base.reversed()]
    twin = twin_word(base)
    if twin is not None and len(twin) > len(base):
        words.append(twin.reversed())
    for w in words:
        t = convergents(w)
        if (t.qk(t.n - 1), t.qk(t.n)) != (p, q):
            raise AssertionError(f"fiber reconstruction failed for ({p}, {q})")
    return Fiber(p, q, tuple(words))


def enumerate_pairs(N: int, q_max: int) -> Iterator[tuple[int, int]]:
    """Coprime pairs 1 <= p <= q <= q_max with q >= 2^((N-1)/2), ordered by
    q then p (deterministic for reproducible output)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    two_pow = 2 ** (N - 1)
    r = math.isqrt(two_pow)
    q_min = r if r * r == two_pow else r + 1
    for q in range(max(q_min, 1), q_max + 1):
        if q == 1:
            yield (1, 1)
            continue
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield (p, q)


# ---------------------------------------------------------------------------
# pair sums

@dataclass(frozen=True)
class PairSumResult:
    q_max: int
    value: float
    lower: float
    upper: float
    comparison: float               # sum over q of q f(1/(q^2 Psi(q)))
    per_q: tuple[tuple[int, float, float, float], ...]  # (q, inner, comp, kappa)

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "q_max": self.q_max,
            "value": decimal(self.value),
            "lower": decimal(self.lower),
            "upper": decimal(self.upper),
            "comparison": decimal(self.comparison),
            "per_q": [[q, decimal(i), decimal(c), decimal(k)]
                      for q, i, c, k in self.per_q],
        }


GENERIC_PAIR_BUDGET = 20_000  # largest q_max for the quadratic generic path


def pair_sum(f: DimensionFunction, aux: AuxFunction, q_max: int,
             backend: Optional[str] = None,
             per_q_cap: int = 4096) -> PairSumResult:
    """Double sum of f(1/(p q Psi(q))) over 1 <= p <= q <= q_max.

    Power-law f factorizes as (q Psi(q))^-s * sum p^-s, which turns the
    double sum into one prefix-sum sweep; other f fall back to the literal
    double loop under a budget cap.
    """
    if q_max < 0:
        raise ValueError("q_max must be >= 0")
    q_start = max(aux.t0, 1)
    rows = []
    total = 0.0
    comparison = 0.0
    n_terms = 0
    if isinstance(f, PowerLaw):
        s = float(f.s)
        ps = kernels.prefix_power_sums(s, q_max, backend=backend) if q_max else None
        for q in range(q_start, q_max + 1):
            psi = aux.float_at(float(q))
            inner = (q * psi) ** (-s) * float(ps[q])
            comp = q * (q * q * psi) ** (-s)
            total += inner
            comparison += comp
            n_terms += q
            if len(rows) < per_q_cap:
                rows.append((q, inner, comp, inner / comp))
    else:
        if q_max > GENERIC_PAIR_BUDGET:
            raise BudgetExceededError(
                f"generic pair sum capped at q_max={GENERIC_PAIR_BUDGET}")
        for q in range(q_start, q_max + 1):
            psi = aux.float_at(float(q))
            inner = 0.0
            for p in range(1, q + 1):
                inner += f.eval_float(1.0 / (p * q * psi))
            comp = q * f.eval_float(1.0 / (q * q * psi))
            total += inner
            comparison += comp
            n_terms += q
            if len(rows) < per_q_cap:
                rows.append((q, inner, comp, inner / comp))
    budget = abs(total) * (n_terms * 8 + 64) * _EPS
    return PairSumResult(q_max, total, total - budget, total + budget,
                         comparison, tuple(rows))


# ---------------------------------------------------------------------------
# dyadic blocks

@dataclass(frozen=True)
class BlockCheck:
    q: int
    B: int
    b: float
    blocks: tuple[float, ...]
    ratios: tuple[float, ...]
    decay_ok: bool
    kappa: float
    kappa_bound: float            # b/(1 - b/B)
    kappa_ok: bool

    @property
    def ok(self) -> bool:
        return self.decay_ok and self.kappa_ok

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "q": self.q,
            "B": self.B,
            "b": decimal(self.b),
            "blocks": [decimal(v) for v in self.blocks],
            "ratios": [decimal(r) for r in self.ratios],
            "decay_ok": self.decay_ok,
            "kappa": decimal(self.kappa),
            "kappa_bound": decimal(self.kappa_bound),
            "kappa_ok": self.kappa_ok,
        }


_REL_TOL = 1e-9  # slack for float comparisons of analytically tight bounds


def block_bound_check(f: DimensionFunction, cert: SublinearityCertificate,
                      aux: AuxFunction, q: int,
                      inner_sum: Optional[float] = None,
                      backend: Optional[str] = None) -> BlockCheck:
    """Dyadic decomposition of the inner sum at one q: blocks
    C_k = B^-k q f(B^k/(q^2 Psi(q))) must decay geometrically with ratio
    at most b/B, and the measured constant kappa(q) = inner/(q f(1/(q^2 Psi)))
    must stay below b/(1 - b/B)."""
    if not cert.essentially_sublinear:
        raise NotApplicableError("no sub-linearity certificate")
    B, b = cert.B, cert.b
    if q < cert.q0():
        raise ValueError(f"q must be >= q0 = {cert.q0()}")
    psi = aux.float_at(float(q))
    t = 1
    while B ** t <= q:
        t += 1
    blocks = []
    for k in range(1, t + 1):
        x = float(B) ** k / (q * q * psi)
        if x >= cert.x0 * (1.0 + _REL_TOL):
            raise AssertionError("block argument escaped the certificate range")
        blocks.append(float(B) ** (-k) * q * f.eval_float(x))
    ratios = tuple(blocks[k + 1] / blocks[k] for k in range(len(blocks) - 1))
    decay_ok = all(r <= (b / B) * (1.0 + _REL_TOL) for r in ratios)
    if inner_sum is None:
        if isinstance(f, PowerLaw):
            s = float(f.s)
            ps = kernels.prefix_power_sums(s, q, backend=backend)
            inner_sum = (q * psi) ** (-s) * float(ps[q])
        else:
            inner_sum = sum(f.eval_float(1.0 / (p * q * psi)) for p in range(1, q + 1))
    kappa = inner_sum / (q * f.eval_float(1.0 / (q * q * psi)))
    kappa_bound = b / (1.0 - b / B)
    kappa_ok = kappa <= kappa_bound * (1.0 + _REL_TOL)
    return BlockCheck(q, B, b, tuple(blocks), ratios, decay_ok,
                      kappa, kappa_bound, kappa_ok)


@dataclass(frozen=True)
class BlockSweep:
    q_lo: int
    q_hi: int
    worst_ratio_excess: float     # max over q,k of ratio - b/B
    worst_kappa_excess: float     # max over q of kappa - bound
    decay_ok: bool
    kappa_ok: bool

    @property
    def ok(self) -> bool:
        return self.decay_ok and self.kappa_ok

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "q_lo": self.q_lo, "q_hi": self.q_hi,
            "worst_ratio_excess": decimal(self.worst_ratio_excess),
            "worst_kappa_excess": decimal(self.worst_kappa_excess),
            "decay_ok": self.decay_ok, "kappa_ok": self.kappa_ok,
        }


def block_bound_sweep(f: PowerLaw, cert: SublinearityCertificate,
                      aux: AuxFunction, q_hi: int,
                      backend: Optional[str] = None) -> BlockSweep:
    """Vectorized block/kappa check over every q in [q0, q_hi] for power-law f."""
    if not isinstance(f, PowerLaw):
        raise NotApplicableError("sweep is implemented for power-law f")
    if not cert.essentially_sublinear:
        raise NotApplicableError("no sub-linearity certificate")
    B, b, s = cert.B, cert.b, float(f.s)
    q_lo = max(cert.q0(), aux.t0)
    q = np.arange(q_lo, q_hi + 1, dtype=np.float64)
    psi = _psi_array(aux, q)
    ps = kernels.prefix_power_sums(s, q_hi, backend=backend)
    inner = (q * psi) ** (-s) * ps[q_lo:q_hi + 1]
    comp = q * (q * q * psi) ** (-s)
    kappa = inner / comp
    kappa_bound = b / (1.0 - b / B)
    worst_kappa = float(np.max(kappa - kappa_bound))
    # block ratios C_{k+1}/C_k = f(Bx)/(B f(x)) at x = B^k/(q^2 Psi(q)),
    # checked for every k with block k+1 present (B^k <= q)
    worst_ratio = -math.inf
    target = b / B
    k = 1
    while float(B) ** k <= q_hi:
        mask = q >= float(B) ** k
        x = float(B) ** k / (q[mask] * q[mask] * psi[mask])
        if float(np.max(x)) >= cert.x0 * (1.0 + _REL_TOL):
            raise AssertionError("block argument escaped the certificate range")
        ratio = (float(B) * x) ** s / (B * x ** s)
        worst_ratio = max(worst_ratio, float(np.max(ratio - target)))
        k += 1
    decay_ok = worst_ratio <= target * _REL_TOL
    kappa_ok = worst_kappa <= kappa_bound * _REL_TOL
    return BlockSweep(q_lo, q_hi, worst_ratio, worst_kappa, decay_ok, kappa_ok)


def _psi_array(aux: AuxFunction, q: np.ndarray) -> np.ndarray:
    spec = aux.kernel_spec()
    if spec is None:
        return np.array([aux.float_at(float(v)) for v in q])
    fam, p0, p1, _p2, mult = spec
    if fam == "const":
        return np.full_like(q, p0 * mult)
    if fam == "power":
        return p0 * q ** p1 * mult
    if fam == "log":
        lq = np.log(q)
        return p0 * lq * np.log(lq) ** p1 * mult
    if fam == "derived-log":
        lq = np.log(q)
        return (lq * np.log(lq) ** p0 - 1.0) * mult
    return (q ** p1 / p0 - 1.0) * mult


# ---------------------------------------------------------------------------
# direct cover sums

@dataclass(frozen=True)
class CoverSumResult:
    n: int
    digit_cap: int
    total: float                     # sum over words of f(diameter bound)
    level_sums: tuple[float, ...]    # per word-length contributions
    restricted_pair_sum: float       # over distinct reachable (q_{n-1}, q_n)
    max_multiplicity: int
    word_count: int
    two_to_one_ok: bool

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "n": self.n,
            "digit_cap": self.digit_cap,
            "total": decimal(self.total),
            "level_sums": [decimal(v) for v in self.level_sums],
            "restricted_pair_sum": decimal(self.restricted_pair_sum),
            "max_multiplicity": self.max_multiplicity,
            "word_count": self.word_count,
            "two_to_one_ok": self.two_to_one_ok,
        }


COVER_BUDGET = 400_000  # total enumerated words across levels


def cover_sum_direct(f: DimensionFunction, aux: AuxFunction, n: int,
                     digit_cap: int) -> CoverSumResult:
    """Exact enumeration of all words of length 1..n with digits <= digit_cap,
    summing f at the J-set diameter bound 1/(Psi(q_m) q_{m-1} q_m).

    Also verifies the two-to-one collapse: no denominator pair is hit by
    more than two words, and the word sum is at most twice the sum over
    distinct pairs.
    """
    if n < 1 or digit_cap < 1:
        raise ValueError("need n >= 1 and digit_cap >= 1")
    total_words = sum(digit_cap ** m for m in range(1, n + 1))
    if total_words > COVER_BUDGET:
        raise BudgetExceededError(
            f"{total_words} words exceed the enumeration budget {COVER_BUDGET}")
    multiplicity: dict[tuple[int, int], int] = {}
    pair_term: dict[tuple[int, int], float] = {}
    level_sums = []
    total = 0.0
    word_count = 0
    # level-order enumeration carrying (q_{m-1}, q_m); seeded with the
    # conventions q_{-1} = 0, q_0 = 1
    frontier = [(0, 1)]
    for m in range(1, n + 1):
        new_frontier = []
        level_total = 0.0
        for (q_prev, q_cur) in frontier:
            for a in range(1, digit_cap + 1):
                q_next = a * q_cur + q_prev
                psi = aux.float_at(float(q_next))
                term = f.eval_float(1.0 / (psi * q_cur * q_next))
                level_total += term
                word_count += 1
                key = (q_cur, q_next)
                multiplicity[key] = multiplicity.get(key, 0) + 1
                pair_term[key] = term
                new_frontier.append((q_cur, q_next))
        level_sums.append(level_total)
        total += level_total
        frontier = new_frontier
    restricted = sum(pair_term.values())
    max_mult = max(multiplicity.values())
    ok = max_mult <= 2 and total <= 2.0 * restricted * (1.0 + _REL_TOL)
    return CoverSumResult(n, digit_cap, total, tuple(level_sums), restricted,
                          max_mult, word_count, ok)
