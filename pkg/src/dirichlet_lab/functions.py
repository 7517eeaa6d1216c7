"""Bit-exact families for approximation functions, auxiliary growth functions,
dimension functions, and index-rate functions.

Membership tests need exact sign decisions of expressions like
``value - c * t**(u/v)``; these are resolved algebraically for the power-type
families and by escalating-precision interval arithmetic for the log-type
families (boundary cases surface as UndecidedComparisonError, never guesses).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

import mpmath

from .exact import ExactReal, cmp_exact, cmp_scaled_power, exact_sign

DEFAULT_PREC_CAP = 300  # decimal digits before a comparison is declared undecided


class DomainViolationError(ValueError):
    """The standing assumption t*psi(t) < 1 (or positivity) is broken."""


class UndecidedComparisonError(Exception):
    """Interval arithmetic hit its precision cap without separating the sides."""


_IV_LOCK = threading.Lock()


def _iv_enclosure(value: ExactReal):
    from .exact import Quad

    iv = mpmath.iv
    if isinstance(value, Quad):
        return (value.a + value.b * iv.sqrt(value.d)) / value.c
    return iv.mpf(value.numerator) / iv.mpf(value.denominator)


def iv_compare(value: ExactReal, threshold_fn: Callable[[], object],
               prec_cap: int = DEFAULT_PREC_CAP) -> int:
    """Sign of value - threshold, deciding via interval enclosures.

    threshold_fn evaluates the threshold under the current mpmath.iv precision.
    """
    iv = mpmath.iv
    with _IV_LOCK:
        saved = iv.dps
        try:
            dps = 40
            while dps <= prec_cap:
                iv.dps = dps
                thr = threshold_fn()
                val = _iv_enclosure(value)
                if val.b < thr.a:
                    return -1
                if val.a > thr.b:
                    return 1
                dps *= 2
        finally:
            iv.dps = saved
    raise UndecidedComparisonError(
        f"comparison not separated at {prec_cap} digits")


def _iv_pow(base, e: Fraction):
    iv = mpmath.iv
    if e == 0:
        return iv.mpf(1)
    if e.denominator == 1:
        return base ** e.numerator
    return iv.exp(iv.log(base) * (iv.mpf(e.numerator) / iv.mpf(e.denominator)))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("pass exact parameters (str/Fraction/int), not float")
    raise TypeError(f"cannot make an exact parameter from {type(x).__name__}")


# ---------------------------------------------------------------------------
# approximation functions psi (non-increasing, t*psi(t) < 1)

@dataclass(frozen=True)
class ScaledDirichlet:
    """psi(t) = c/t with 0 < c < 1."""

    c: Fraction
    t0: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", _as_fraction(self.c))
        if not 0 < self.c < 1:
            raise DomainViolationError("scaled family needs c in (0,1)")

    def tpsi_fraction(self, t: int) -> Fraction:
        return self.c

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, self.c / t)

    def float_at(self, t: float) -> float:
        return float(self.c) / t

    def label(self) -> str:
        return f"scaled c={self.c}"


@dataclass(frozen=True)
class PowerDirichlet:
    """psi(t) = (1 - a t**-tau)/t with a, tau > 0."""

    a: Fraction
    tau: Fraction
    t0: int = 2

    def __post_init__(self):
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "tau", _as_fraction(self.tau))
        if self.a <= 0 or self.tau <= 0:
            raise DomainViolationError("power family needs a > 0 and tau > 0")
        # positivity of psi on [t0, inf): t0**tau > a
        u, v = self.tau.numerator, self.tau.denominator
        if not self.t0 ** u > self.a ** v:
            raise DomainViolationError(
                f"t0={self.t0} too small for positivity (need t0^tau > a)")

    def tpsi_fraction(self, t: int) -> Optional[Fraction]:
        if self.tau.denominator == 1:
            return 1 - self.a / Fraction(t) ** self.tau.numerator
        return None  # irrational

    def cmp_value(self, v: ExactReal, t: int) -> int:
        # sign(v - 1/t + (a/t) t^-tau); threshold is positive on the domain
        w = Fraction(1, t) - v
        if exact_sign(w) <= 0:
            return 1
        return -cmp_scaled_power(w, self.a / t, t, -self.tau)

    def float_at(self, t: float) -> float:
        return (1.0 - float(self.a) * t ** (-float(self.tau))) / t

    def label(self) -> str:
        return f"power a={self.a} tau={self.tau}"


@dataclass(frozen=True)
class LogDirichlet:
    """psi(t) = (1/t)(1 - 1/(log t (log log t)**beta)); domain starts at 16."""

    beta: Fraction
    t0: int = 16
    prec_cap: int = DEFAULT_PREC_CAP

    def __post_init__(self):
        object.__setattr__(self, "beta", _as_fraction(self.beta))
        if self.t0 < 16:
            raise DomainViolationError("log family needs t0 >= 16 (log log positivity)")

    def tpsi_fraction(self, t: int) -> Optional[Fraction]:
        return None

    def _psi_iv(self, t: int):
        iv = mpmath.iv
        lt = iv.log(t)
        llt = iv.log(lt)
        return (1 - 1 / (lt * _iv_pow(llt, self.beta))) / t

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return iv_compare(v, lambda: self._psi_iv(t), self.prec_cap)

    def float_at(self, t: float) -> float:
        lt = math.log(t)
        return (1.0 - 1.0 / (lt * math.log(lt) ** float(self.beta))) / t

    def label(self) -> str:
        return f"log beta={self.beta}"


@dataclass(frozen=True)
class TablePsi:
    """User table (t_i, psi(t_i)) with previous-point step interpolation."""

    points: tuple[tuple[int, Fraction], ...]
    t0: int = 1

    def __post_init__(self):
        pts = tuple(sorted((int(t), _as_fraction(v)) for t, v in self.points))
        if not pts:
            raise ValueError("empty table")
        for (t1, v1), (t2, v2) in zip(pts, pts[1:]):
            if v2 > v1:
                raise DomainViolationError("table psi must be non-increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "t0", pts[0][0])

    def _value(self, t: int) -> Fraction:
        if t < self.points[0][0]:
            raise DomainViolationError(f"t={t} below table start")
        val = self.points[0][1]
        for tt, vv in self.points:
            if tt <= t:
                val = vv
            else:
                break
        return val

    def tpsi_fraction(self, t: int) -> Fraction:
        return t * self._value(t)

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, self._value(t))

    def float_at(self, t: float) -> float:
        return float(self._value(int(t)))

    def label(self) -> str:
        return f"table[{len(self.points)}]"


ApproxFunction = Union[ScaledDirichlet, PowerDirichlet, LogDirichlet, TablePsi]


def check_tpsi(psi: ApproxFunction, t: int) -> None:
    """Hard error when the standing assumption t*psi(t) < 1 fails."""
    tp = psi.tpsi_fraction(t)
    if tp is not None and tp >= 1:
        raise DomainViolationError(f"t*psi(t) >= 1 at t={t}")


# ---------------------------------------------------------------------------
# auxiliary growth functions Psi

@dataclass(frozen=True)
class AuxAsym:
    """Psi(t) ~ scale * t^tau * (log t)^alpha * (log log t)^beta, with
    two-sided scale bounds valid from any T >= valid_from."""

    tau: Fraction
    alpha: Fraction
    beta: Fraction
    scale: Fraction
    valid_from: int
    scale_lo: Callable[[int], float]
    scale_hi: Callable[[int], float]


@dataclass(frozen=True)
class ConstAux:
    c: Fraction
    t0: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", _as_fraction(self.c))
        if self.c <= 0:
            raise DomainViolationError("aux function must be positive")

    def value_fraction(self, t: int) -> Fraction:
        return self.c

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, self.c)

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, 1 / self.c)

    def float_at(self, t: float) -> float:
        return float(self.c)

    def kernel_spec(self):
        return ("const", float(self.c), 0.0, 0.0, 1.0)

    def asym(self) -> AuxAsym:
        c = float(self.c)
        return AuxAsym(Fraction(0), Fraction(0), Fraction(0), self.c,
                       max(self.t0, 2), lambda T: c, lambda T: c)

    def monotone_nondecreasing(self) -> bool:
        return True

    def label(self) -> str:
        return f"const c={self.c}"


@dataclass(frozen=True)
class PowerAux:
    """Psi(t) = scale * t**tau."""

    tau: Fraction
    scale: Fraction = Fraction(1)
    t0: int = 1

    def __post_init__(self):
        object.__setattr__(self, "tau", _as_fraction(self.tau))
        object.__setattr__(self, "scale", _as_fraction(self.scale))
        if self.scale <= 0 or self.tau < 0:
            raise DomainViolationError("power aux needs scale > 0, tau >= 0")

    def value_fraction(self, t: int) -> Optional[Fraction]:
        if self.tau.denominator == 1:
            return self.scale * Fraction(t) ** self.tau.numerator
        return None

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return cmp_scaled_power(v, self.scale, t, self.tau)

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        return cmp_scaled_power(v, 1 / self.scale, t, -self.tau)

    def float_at(self, t: float) -> float:
        return float(self.scale) * t ** float(self.tau)

    def kernel_spec(self):
        return ("power", float(self.scale), float(self.tau), 0.0, 1.0)

    def asym(self) -> AuxAsym:
        s = float(self.scale)
        return AuxAsym(self.tau, Fraction(0), Fraction(0), self.scale,
                       max(self.t0, 2), lambda T: s, lambda T: s)

    def monotone_nondecreasing(self) -> bool:
        return True

    def label(self) -> str:
        return f"power tau={self.tau} scale={self.scale}"


@dataclass(frozen=True)
class LogAux:
    """Psi(t) = scale * log(t) * (log log t)**beta; domain starts at 16."""

    beta: Fraction
    scale: Fraction = Fraction(1)
    t0: int = 16
    prec_cap: int = DEFAULT_PREC_CAP

    def __post_init__(self):
        object.__setattr__(self, "beta", _as_fraction(self.beta))
        object.__setattr__(self, "scale", _as_fraction(self.scale))
        if self.t0 < 16:
            raise DomainViolationError("log aux needs t0 >= 16")

    def value_fraction(self, t: int) -> None:
        return None

    def _iv_value(self, t: int):
        iv = mpmath.iv
        lt = iv.log(t)
        llt = iv.log(lt)
        return iv.mpf(self.scale.numerator) / self.scale.denominator * lt * _iv_pow(llt, self.beta)

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return iv_compare(v, lambda: self._iv_value(t), self.prec_cap)

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        return iv_compare(v, lambda: 1 / self._iv_value(t), self.prec_cap)

    def float_at(self, t: float) -> float:
        lt = math.log(t)
        return float(self.scale) * lt * math.log(lt) ** float(self.beta)

    def kernel_spec(self):
        return ("log", float(self.scale), float(self.beta), 0.0, 1.0)

    def asym(self) -> AuxAsym:
        s = float(self.scale)
        return AuxAsym(Fraction(0), Fraction(1), self.beta, self.scale,
                       max(self.t0, 16), lambda T: s, lambda T: s)

    def monotone_nondecreasing(self) -> bool:
        return self.beta >= 0

    def label(self) -> str:
        return f"log beta={self.beta} scale={self.scale}"


@dataclass(frozen=True)
class TableAux:
    points: tuple[tuple[int, Fraction], ...]
    t0: int = 1

    def __post_init__(self):
        pts = tuple(sorted((int(t), _as_fraction(v)) for t, v in self.points))
        if not pts:
            raise ValueError("empty table")
        for _, v in pts:
            if v <= 0:
                raise DomainViolationError("aux table values must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "t0", pts[0][0])

    def value_fraction(self, t: int) -> Fraction:
        if t < self.points[0][0]:
            raise DomainViolationError(f"t={t} below table start")
        val = self.points[0][1]
        for tt, vv in self.points:
            if tt <= t:
                val = vv
            else:
                break
        return val

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, self.value_fraction(t))

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        return cmp_exact(v, 1 / self.value_fraction(t))

    def float_at(self, t: float) -> float:
        return float(self.value_fraction(int(t)))

    def kernel_spec(self):
        return None

    def asym(self) -> None:
        return None

    def monotone_nondecreasing(self) -> bool:
        vals = [v for _, v in self.points]
        return all(a <= b for a, b in zip(vals, vals[1:]))

    def label(self) -> str:
        return f"table[{len(self.points)}]"


@dataclass(frozen=True)
class DerivedAux:
    """Psi(t) = t psi(t) / (1 - t psi(t)) for a declared psi family."""

    psi: ApproxFunction

    @property
    def t0(self) -> int:
        return self.psi.t0

    def value_fraction(self, t: int) -> Optional[Fraction]:
        tp = self.psi.tpsi_fraction(t)
        if tp is None:
            return None
        if tp >= 1:
            raise DomainViolationError(f"t*psi(t) >= 1 at t={t}")
        if tp <= 0:
            raise DomainViolationError(f"t*psi(t) <= 0 at t={t}")
        return tp / (1 - tp)

    def cmp_value(self, v: ExactReal, t: int) -> int:
        exact = self.value_fraction(t)
        if exact is not None:
            return cmp_exact(v, exact)
        p = self.psi
        if isinstance(p, PowerDirichlet):
            # Psi = t^tau/a - 1: compare v + 1 against (1/a) t^tau
            return cmp_scaled_power(v + 1, 1 / p.a, t, p.tau)
        if isinstance(p, LogDirichlet):
            def thr():
                iv = mpmath.iv
                lt = iv.log(t)
                llt = iv.log(lt)
                return lt * _iv_pow(llt, p.beta) - 1
            return iv_compare(v, thr, p.prec_cap)
        raise NotImplementedError(type(p).__name__)

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        exact = self.value_fraction(t)
        if exact is not None:
            return cmp_exact(v, 1 / exact)
        p = self.psi
        if isinstance(p, PowerDirichlet):
            # 1/Psi = a/(t^tau - a) with t^tau > a on the domain
            if exact_sign(v) <= 0:
                return -1
            w = (v + 1) / v * p.a
            return -cmp_scaled_power(w, Fraction(1), t, p.tau)
        if isinstance(p, LogDirichlet):
            def thr():
                iv = mpmath.iv
                lt = iv.log(t)
                llt = iv.log(lt)
                return 1 / (lt * _iv_pow(llt, p.beta) - 1)
            return iv_compare(v, thr, p.prec_cap)
        raise NotImplementedError(type(p).__name__)

    def float_at(self, t: float) -> float:
        tp = t * self.psi.float_at(t)
        if tp >= 1:
            raise DomainViolationError(f"t*psi(t) >= 1 at t={t}")
        return tp / (1.0 - tp)

    def kernel_spec(self):
        p = self.psi
        if isinstance(p, ScaledDirichlet):
            c = p.c / (1 - p.c)
            return ("const", float(c), 0.0, 0.0, 1.0)
        if isinstance(p, PowerDirichlet):
            return ("derived-power", float(p.a), float(p.tau), 0.0, 1.0)
        if isinstance(p, LogDirichlet):
            return ("derived-log", float(p.beta), 0.0, 0.0, 1.0)
        return None

    def asym(self) -> Optional[AuxAsym]:
        p = self.psi
        if isinstance(p, ScaledDirichlet):
            c = p.c / (1 - p.c)
            cf = float(c)
            return AuxAsym(Fraction(0), Fraction(0), Fraction(0), c,
                           max(p.t0, 2), lambda T: cf, lambda T: cf)
        if isinstance(p, PowerDirichlet):
            # Psi = t^tau/a - 1 in [ (1 - a/T^tau)/a * t^tau, t^tau/a ]
            a, tau = float(p.a), float(p.tau)

            def lo(T: int) -> float:
                return (1.0 - a * T ** (-tau)) / a

            return AuxAsym(p.tau, Fraction(0), Fraction(0), 1 / p.a,
                           max(p.t0, 2), lo, lambda T: 1.0 / a)
        if isinstance(p, LogDirichlet):
            beta = float(p.beta)

            def lo(T: int) -> float:
                lt = math.log(T)
                return 1.0 - 1.0 / (lt * math.log(lt) ** beta)

            return AuxAsym(Fraction(0), Fraction(1), p.beta, Fraction(1),
                           max(p.t0, 16), lo, lambda T: 1.0)
        return None

    def monotone_nondecreasing(self) -> bool:
        return True  # t*psi(t) non-decreasing for every built-in psi family

    def label(self) -> str:
        return f"derived({self.psi.label()})"


@dataclass(frozen=True)
class ScaledAux:
    """mult * Psi(t) — used for the Psi/4 and 3*Psi variants of thresholds."""

    base: "AuxFunction"
    mult: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mult", _as_fraction(self.mult))
        if self.mult <= 0:
            raise DomainViolationError("scaling factor must be positive")

    @property
    def t0(self) -> int:
        return self.base.t0

    def value_fraction(self, t: int) -> Optional[Fraction]:
        v = self.base.value_fraction(t)
        return None if v is None else self.mult * v

    def cmp_value(self, v: ExactReal, t: int) -> int:
        return self.base.cmp_value(v / self.mult, t)

    def cmp_inverse(self, v: ExactReal, t: int) -> int:
        return self.base.cmp_inverse(v * self.mult, t)

    def float_at(self, t: float) -> float:
        return float(self.mult) * self.base.float_at(t)

    def kernel_spec(self):
        spec = self.base.kernel_spec()
        if spec is None:
            return None
        fam, p0, p1, p2, mult = spec
        return (fam, p0, p1, p2, mult * float(self.mult))

    def asym(self) -> Optional[AuxAsym]:
        base = self.base.asym()
        if base is None:
            return None
        m = float(self.mult)
        return AuxAsym(base.tau, base.alpha, base.beta, self.mult * base.scale,
                       base.valid_from,
                       lambda T: m * base.scale_lo(T),
                       lambda T: m * base.scale_hi(T))

    def monotone_nondecreasing(self) -> bool:
        return self.base.monotone_nondecreasing()

    def label(self) -> str:
        return f"{self.mult}*({self.base.label()})"


AuxFunction = Union[ConstAux, PowerAux, LogAux, TableAux, DerivedAux, ScaledAux]


def scaled_aux(base: AuxFunction, mult) -> AuxFunction:
    return ScaledAux(base, _as_fraction(mult))


def cmp_q2_inverse(aux: AuxFunction, v: ExactReal, t: int) -> int:
    """Sign of v - 1/(t^2 Psi(t)); reduces to the plain inverse comparison."""
    return aux.cmp_inverse(v * (t * t), t)


def aux_transform(psi: ApproxFunction, t: int):
    """Psi(t) = t psi(t)/(1 - t psi(t)); exact Fraction when psi(t) is rational,
    otherwise a (lo, hi) Fraction enclosure."""
    tp = psi.tpsi_fraction(t)
    if tp is not None:
        if tp >= 1:
            raise DomainViolationError(f"t*psi(t) >= 1 at t={t}")
        if tp <= 0:
            raise DomainViolationError(f"t*psi(t) <= 0 at t={t}")
        return tp / (1 - tp)
    iv = mpmath.iv
    with _IV_LOCK:
        saved = iv.dps
        try:
            iv.dps = 50
            if isinstance(psi, LogDirichlet):
                lt = iv.log(t)
                llt = iv.log(lt)
                val = lt * _iv_pow(llt, psi.beta) - 1
            elif isinstance(psi, PowerDirichlet):
                a_iv = iv.mpf(psi.a.numerator) / psi.a.denominator
                val = _iv_pow(iv.mpf(t), psi.tau) / a_iv - 1
            else:
                raise NotImplementedError(type(psi).__name__)
            lo = Fraction(str(mpmath.mpf(val.a)))
            hi = Fraction(str(mpmath.mpf(val.b)))
        finally:
            iv.dps = saved
    return (lo, hi)


def derived(psi: ApproxFunction) -> DerivedAux:
    return DerivedAux(psi)


# ---------------------------------------------------------------------------
# dimension functions f

@dataclass(frozen=True)
class PowerLaw:
    """f(x) = x**s for 0 <= s <= 1."""

    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", _as_fraction(self.s))
        if not 0 <= self.s <= 1:
            raise ValueError("power-law exponent must lie in [0, 1]")

    def eval_float(self, x: float) -> float:
        return x ** float(self.s)

    def ratio_limsup(self, B: int) -> float:
        """Exact limsup of f(Bx)/f(x) as x -> 0."""
        return B ** float(self.s)

    def label(self) -> str:
        return f"power s={self.s}"


@dataclass(frozen=True)
class XLogX:
    """f(x) = x * log(1/x), increasing on (0, 1/e)."""

    def eval_float(self, x: float) -> float:
        return x * math.log(1.0 / x)

    def ratio_limsup(self, B: int) -> float:
        return float(B)  # ratios increase to B, so no sub-linear certificate

    def label(self) -> str:
        return "xlogx"


@dataclass(frozen=True)
class CustomDim:
    """User-supplied evaluator; certification falls back to pure sampling."""

    fn: Callable[[float], float]
    name: str = "custom"

    def eval_float(self, x: float) -> float:
        return self.fn(x)

    def ratio_limsup(self, B: int) -> None:
        return None

    def label(self) -> str:
        return self.name


DimensionFunction = Union[PowerLaw, XLogX, CustomDim]


# ---------------------------------------------------------------------------
# index-rate functions phi (thresholds as a function of the index n)

@dataclass(frozen=True)
class ConstRate:
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", _as_fraction(self.c))

    def cmp_value(self, v: ExactReal, n: int) -> int:
        return cmp_exact(v, self.c)

    def float_at(self, n: int) -> float:
        return float(self.c)

    def label(self) -> str:
        return f"const c={self.c}"


@dataclass(frozen=True)
class PowerRate:
    """phi(n) = scale * n**s."""

    s: Fraction
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "s", _as_fraction(self.s))
        object.__setattr__(self, "scale", _as_fraction(self.scale))

    def cmp_value(self, v: ExactReal, n: int) -> int:
        return cmp_scaled_power(v, self.scale, n, self.s)

    def float_at(self, n: int) -> float:
        return float(self.scale) * n ** float(self.s)

    def label(self) -> str:
        return f"power s={self.s} scale={self.scale}"


RateFunction = Union[ConstRate, PowerRate]
