"""Series classifiers with three-valued verdicts and analytic tail envelopes.

Every supported summand is bracketed, for t beyond an explicit threshold,
between constant multiples of t^-a (log t)^-b (loglog t)^-c with exact
rational exponents.  Convergence is decided by exponent comparison alone
(partial sums never decide a verdict); upper envelopes come from an
integral test on the bracketing term, with sub-leading log factors absorbed
into the polynomial exponent where needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import kernels
from .functions import (AuxFunction, DimensionFunction, PowerLaw, XLogX,
                        DomainViolationError)

_EPS_PER_TERM = 2.0 ** -52  # double-precision ulp scale for the rounding budget


@dataclass(frozen=True)
class SeriesVerdict:
    series: str
    verdict: str  # "Converges" | "Diverges" | "Undecided"
    t_start: int
    t_end: int
    partial_sum: float
    lower_envelope: Optional[float]
    upper_envelope: Optional[float]
    justification: str
    atom: Optional[tuple[str, str, str]]
    divergence_rate: Optional[str]
    checkpoints: tuple[tuple[int, float], ...]
    flags: tuple[str, ...] = ()

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "series": self.series,
            "verdict": self.verdict,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "partial_sum": decimal(self.partial_sum),
            "lower_envelope": None if self.lower_envelope is None else decimal(self.lower_envelope),
            "upper_envelope": None if self.upper_envelope is None else decimal(self.upper_envelope),
            "justification": self.justification,
            "atom": list(self.atom) if self.atom else None,
            "divergence_rate": self.divergence_rate,
            "checkpoints": [[t, decimal(v)] for t, v in self.checkpoints],
            "flags": list(self.flags),
        }


def atom_converges(a: Fraction, b: Fraction, c: Fraction) -> bool:
    """Exact convergence test for sum t^-a (log t)^-b (loglog t)^-c."""
    if a > 1:
        return True
    if a < 1:
        return False
    if b > 1:
        return True
    if b < 1:
        return False
    return c > 1


def divergence_rate(a: Fraction, b: Fraction, c: Fraction) -> str:
    if a < 1:
        e = 1 - a
        return f"partial sums grow like T^{e}" if e != 1 else "partial sums grow like T"
    if b < 1:
        e = 1 - b
        return "partial sums grow like log T" if e == 1 else f"partial sums grow like (log T)^{e}"
    if c < 1:
        e = 1 - c
        return "partial sums grow like loglog T" if e == 1 else f"partial sums grow like (loglog T)^{e}"
    return "partial sums grow like logloglog T"


def _log_pow_abs_const(m: float, eta: float, T: float) -> float:
    """C with (log t)^m <= C * t^eta for all t >= T (m, eta > 0)."""
    if m <= 0:
        return 1.0
    at_T = math.log(T) ** m / T ** eta
    peak = (m / (math.e * eta)) ** m
    return max(at_T, peak)


def integral_tail_upper(a: Fraction, b: Fraction, c: Fraction, T: float) -> float:
    """Upper bound for the integral of t^-a (log t)^-b (loglog t)^-c over [T, inf).

    Requires a convergent exponent triple.  Sub-leading factors with negative
    exponents are absorbed as (log t)^m (loglog t)^m' <= C t^eta; positive
    exponents are frozen at their value at T (both factors decrease there).
    """
    af, bf, cf = float(a), float(b), float(c)
    if a > 1:
        m = max(0.0, -bf) + max(0.0, -cf)  # loglog t <= log t folds both in
        eta = (af - 1.0) / 2.0 if m > 0 else 0.0
        const = _log_pow_abs_const(m, eta, T) if m > 0 else 1.0
        frozen = 1.0
        if bf > 0:
            frozen *= math.log(T) ** (-bf)
        if cf > 0:
            if T <= 15.16:
                raise ValueError("loglog envelope needs T >= 16")
            frozen *= math.log(math.log(T)) ** (-cf)
        remaining = af - eta
        return const * frozen * T ** (1.0 - remaining) / (remaining - 1.0)
    if a == 1 and b > 1:
        # substitute u = log t
        return integral_tail_upper(b, c, Fraction(0), math.log(T))
    if a == 1 and b == 1 and c > 1:
        llT = math.log(math.log(T))
        if llT <= 0:
            raise ValueError("loglog envelope needs T >= 16")
        return llT ** (1.0 - cf) / (cf - 1.0)
    raise ValueError("tail bound requested for a divergent exponent triple")


def _monotone_from(a: Fraction, b: Fraction, c: Fraction, T: float) -> bool:
    """The bracketing term is nonincreasing for t >= T."""
    lt = math.log(T)
    llt = math.log(lt) if lt > 1 else 0.1
    return float(a) + min(0.0, float(b)) / lt + min(0.0, float(c)) / (lt * max(llt, 0.05)) > 0


@dataclass(frozen=True)
class _Bundle:
    """Bracketing data for one summand family."""

    a: Fraction
    b: Fraction
    c: Fraction
    khi: Callable[[float], float]   # term <= khi(T) * atom(t) for t >= T
    klo: Optional[Callable[[float], float]]
    zero: bool = False
    negative: bool = False
    flags: tuple[str, ...] = ()


def _lll(T: float) -> float:
    return math.log(math.log(math.log(T)))


def _log_psi_coeffs(asym, T: float) -> tuple[float, float]:
    """(lead_lo, lead_hi) with log Psi(t) between lead * (leading log term)
    for t >= T; the leading term is tau*log t when tau>0, else alpha*loglog t."""
    tau, alpha, beta = float(asym.tau), float(asym.alpha), float(asym.beta)
    hi_scale, lo_scale = asym.scale_hi(int(T)), asym.scale_lo(int(T))
    lt, llt = math.log(T), math.log(math.log(T))
    lllt = _lll(T) if llt > 1e-9 and math.log(math.log(T)) > 0 and T > 16 else 0.0
    if tau > 0:
        lead = tau * lt
        pos = max(alpha, 0.0) * llt + max(beta, 0.0) * max(lllt, 0.0) + max(math.log(hi_scale), 0.0)
        neg = max(-alpha, 0.0) * llt + max(-beta, 0.0) * max(lllt, 0.0) + max(-math.log(lo_scale), 0.0)
        return (tau * max(0.0, 1.0 - neg / lead), tau * (1.0 + pos / lead))
    # tau == 0, alpha > 0 expected
    lead = alpha * llt
    pos = max(beta, 0.0) * max(lllt, 0.0) + max(math.log(hi_scale), 0.0)
    neg = max(-beta, 0.0) * max(lllt, 0.0) + max(-math.log(lo_scale), 0.0)
    return (alpha * max(0.0, 1.0 - neg / lead), alpha * (1.0 + pos / lead))


def _bundle_for(kind: str, f: Optional[DimensionFunction], aux: AuxFunction) -> Optional[_Bundle]:
    asym = aux.asym()
    if asym is None:
        return None
    tau, alpha, beta = asym.tau, asym.alpha, asym.beta

    def lo_inv(T: float) -> float:
        v = asym.scale_lo(int(T))
        return math.inf if v <= 0 else 1.0 / v

    def hi_inv(T: float) -> float:
        return 1.0 / asym.scale_hi(int(T))

    if kind == "hausdorff-pow":
        s = f.s  # type: ignore[union-attr]
        sf = float(s)
        return _Bundle((2 + tau) * s - 1, alpha * s, beta * s,
                       lambda T: lo_inv(T) ** sf, lambda T: hi_inv(T) ** sf)
    if kind == "hausdorff-xlogx":
        # log(1/x) = (2+tau) log t + alpha loglog t + ... bracketed by its lead
        two_tau = 2 + tau

        def hi(T: float) -> float:
            lt, llt = math.log(T), math.log(math.log(T))
            lllt = max(_lll(T), 0.0) if T > 16 else 0.0
            lead = float(two_tau) * lt
            pos = (max(float(alpha), 0.0) * llt + max(float(beta), 0.0) * lllt
                   + max(-math.log(asym.scale_lo(int(T))), 0.0))
            return lo_inv(T) * float(two_tau) * (1.0 + pos / lead)

        def lo(T: float) -> float:
            lt, llt = math.log(T), math.log(math.log(T))
            lllt = max(_lll(T), 0.0) if T > 16 else 0.0
            lead = float(two_tau) * lt
            neg = (max(-float(alpha), 0.0) * llt + max(-float(beta), 0.0) * lllt
                   + max(math.log(asym.scale_hi(int(T))), 0.0))
            return hi_inv(T) * float(two_tau) * max(0.0, 1.0 - neg / lead)

        return _Bundle(1 + tau, alpha - 1, beta, hi, lo)
    if kind in ("weak", "xlogx-lower"):
        return _Bundle(1 + tau, alpha - 1, beta, lo_inv, hi_inv)
    if kind == "xlogx-upper":
        return _Bundle(1 + tau, alpha - 2, beta, lo_inv, hi_inv)
    if kind in ("lebesgue", "simmons"):
        extra = 1 if kind == "simmons" else 0  # extra log t factor
        if tau == 0 and alpha == 0:
            # constant threshold: log Psi is a constant
            cval = asym.scale
            if asym.scale_lo(64) != asym.scale_hi(64):
                return None
            if cval == 1:
                return _Bundle(Fraction(1), Fraction(-extra), Fraction(0),
                               lambda T: 0.0, lambda T: 0.0, zero=True)
            k = abs(math.log(float(cval))) / float(cval)
            return _Bundle(Fraction(1), Fraction(-extra), Fraction(0),
                           lambda T: k, lambda T: k,
                           negative=cval < 1,
                           flags=("terms negative (threshold below 1)",) if cval < 1 else ())
        if tau > 0:
            return _Bundle(1 + tau, alpha - 1 - extra, beta,
                           lambda T: lo_inv(T) * _log_psi_coeffs(asym, T)[1],
                           lambda T: hi_inv(T) * _log_psi_coeffs(asym, T)[0])
        # tau == 0, alpha > 0: log Psi ~ alpha loglog t
        return _Bundle(Fraction(1), alpha - extra, beta - 1,
                       lambda T: lo_inv(T) * _log_psi_coeffs(asym, T)[1],
                       lambda T: hi_inv(T) * _log_psi_coeffs(asym, T)[0])
    raise ValueError(f"unknown series kind {kind!r}")


_KERNEL_KINDS = {
    "hausdorff-pow": "hausdorff-pow",
    "hausdorff-xlogx": "hausdorff-xlogx",
    "lebesgue": "lebesgue",
    "weak": "weak",
    "xlogx-lower": "weak",
    "xlogx-upper": "xlogx-upper",
    "simmons": "simmons",
}


def _run_series(label: str, kind: str, f: Optional[DimensionFunction],
                aux: AuxFunction, T: int, backend: Optional[str],
                extra_flags: tuple[str, ...] = ()) -> SeriesVerdict:
    if T < 1:
        raise ValueError("summation bound must be >= 1")
    spec = aux.kernel_spec()
    bundle = _bundle_for(kind, f, aux) if spec is not None or aux.asym() else None
    asym = aux.asym()
    t_start = max(aux.t0, 1)
    if asym is not None:
        t_start = max(t_start, asym.valid_from)
    s_param = float(f.s) if isinstance(f, PowerLaw) else 0.0

    # partial sums with geometric checkpoints, fixed block order
    checkpoints: list[tuple[int, float]] = []
    total = 0.0
    if spec is not None and T >= t_start:
        edges = []
        edge = t_start
        while edge <= T:
            edges.append(edge)
            edge *= 2
        edges.append(T + 1)
        kname = _KERNEL_KINDS[kind]
        for lo, hi in zip(edges, edges[1:]):
            total += kernels.partial_sum(kname, spec, s_param, lo, min(hi, T + 1),
                                         backend=backend)
            checkpoints.append((min(hi - 1, T), total))
    n_terms = max(T - t_start + 1, 1)
    budget = abs(total) * (n_terms * 8 + 64) * _EPS_PER_TERM

    if bundle is None:
        return SeriesVerdict(label, "Undecided", t_start, T, total, None, None,
                             "no analytic envelope declared for this family",
                             None, None, tuple(checkpoints),
                             ("partial sums only",) + extra_flags)

    atom = (str(bundle.a), str(bundle.b), str(bundle.c))
    if bundle.zero:
        return SeriesVerdict(label, "Converges", t_start, T, total, 0.0, 0.0,
                             "all terms vanish (log of unit threshold)",
                             atom, None, tuple(checkpoints), bundle.flags + extra_flags)

    if atom_converges(bundle.a, bundle.b, bundle.c):
        T_env = max(float(T), 16.0)
        if not _monotone_from(bundle.a, bundle.b, bundle.c, T_env):
            return SeriesVerdict(label, "Undecided", t_start, T, total, None, None,
                                 "envelope start beyond summation budget",
                                 atom, None, tuple(checkpoints), bundle.flags + extra_flags)
        k_hi = bundle.khi(T_env)
        tail = k_hi * integral_tail_upper(bundle.a, bundle.b, bundle.c, T_env)
        upper = total + budget + tail
        lower = max(total - budget, 0.0)
        just = (f"integral-test envelope: term <= {k_hi:.6g} "
                f"* t^-{bundle.a} (log t)^-{bundle.b} (loglog t)^-{bundle.c} beyond T")
        return SeriesVerdict(label, "Converges", t_start, T, total, lower, upper,
                             just, atom, None, tuple(checkpoints),
                             bundle.flags + extra_flags)

    rate = divergence_rate(bundle.a, bundle.b, bundle.c)
    lower = total - budget if not bundle.negative else None
    just = ("exponent comparison: term >= const * "
            f"t^-{bundle.a} (log t)^-{bundle.b} (loglog t)^-{bundle.c}, "
            "a divergent scale")
    return SeriesVerdict(label, "Diverges", t_start, T, total, lower, None,
                         just, atom, rate, tuple(checkpoints),
                         bundle.flags + extra_flags)


# ---------------------------------------------------------------------------
# public series operations

def hausdorff_series(f: DimensionFunction, aux: AuxFunction, T: int,
                     backend: Optional[str] = None) -> SeriesVerdict:
    """Classify sum over t of t * f(1/(t^2 Psi(t)))."""
    if isinstance(f, PowerLaw):
        return _run_series("hausdorff", "hausdorff-pow", f, aux, T, backend)
    if isinstance(f, XLogX):
        return _run_series("hausdorff", "hausdorff-xlogx", f, aux, T, backend)
    total = 0.0
    t_start = max(aux.t0, 1)
    for t in range(t_start, min(T, 10 ** 5) + 1):
        x = 1.0 / (t * t * aux.float_at(t))
        total += t * f.eval_float(x)
    return SeriesVerdict("hausdorff", "Undecided", t_start, min(T, 10 ** 5), total,
                         None, None, "custom dimension function without envelope",
                         None, None, (), ("partial sums only",))


def lebesgue_series(aux: AuxFunction, T: int, backend: Optional[str] = None) -> SeriesVerdict:
    """Classify sum over t of log(Psi(t)) / (t Psi(t)) (the Lebesgue dichotomy)."""
    return _run_series("lebesgue", "lebesgue", None, aux, T, backend)


EXAMPLE_KINDS = ("weak", "lebesgue", "xlogx-upper", "xlogx-lower", "simmons")


def example_series(kind: str, aux: AuxFunction, T: int,
                   backend: Optional[str] = None) -> SeriesVerdict:
    """Named comparison series: 'weak' is log t/(t Psi), 'lebesgue' the
    dichotomy series, 'xlogx-upper'/'xlogx-lower' the two-sided pair for
    f(x) = x log(1/x), and 'simmons' the sharpened upper sum (flagged: the
    sharpening is a communicated result, not proved here)."""
    if kind not in EXAMPLE_KINDS:
        raise ValueError(f"kind must be one of {EXAMPLE_KINDS}")
    flags = ("sharpened upper sum: communicated refinement, unproven here",) \
        if kind == "simmons" else ()
    return _run_series(kind, kind, None, aux, T, backend, extra_flags=flags)


# ---------------------------------------------------------------------------
# the dichotomy classifier

CLASSIFY_OUTCOMES = ("H^f_zero", "H^f_infinity", "Lebesgue_zero", "Lebesgue_full",
                     "OutOfTheorem")


@dataclass(frozen=True)
class Classification:
    outcome: str
    series: Optional[SeriesVerdict]
    certificate: Optional[object]
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "series": self.series.to_json() if self.series else None,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "notes": list(self.notes),
        }


def classify(aux: AuxFunction, f: DimensionFunction, T: int = 10 ** 6,
             backend: Optional[str] = None) -> Classification:
    """Route a (threshold family, dimension function) pair through the
    matching measure dichotomy, or report OutOfTheorem."""
    from .sublinear import certify_sublinear

    notes: list[str] = []
    if not aux.monotone_nondecreasing():
        notes.append("threshold family is not non-decreasing; dichotomy "
                     "hypotheses are not met (audits still run pointwise)")
    if isinstance(f, PowerLaw) and f.s == 1:
        verdict = lebesgue_series(aux, T, backend=backend)
        if verdict.verdict == "Converges":
            return Classification("Lebesgue_zero", verdict, None, tuple(notes))
        if verdict.verdict == "Diverges":
            return Classification("Lebesgue_full", verdict, None, tuple(notes))
        return Classification("OutOfTheorem", verdict, None,
                              tuple(notes + ["series undecided"]))
    cert = certify_sublinear(f)
    if not cert.essentially_sublinear:
        notes.append("dimension function not essentially sub-linear; see the "
                     "two-sided x*log(1/x) comparison sums for partial information")
        return Classification("OutOfTheorem", None, cert, tuple(notes))
    verdict = hausdorff_series(f, aux, T, backend=backend)
    if verdict.verdict == "Converges":
        return Classification("H^f_zero", verdict, cert, tuple(notes))
    if verdict.verdict == "Diverges":
        return Classification("H^f_infinity", verdict, cert, tuple(notes))
    return Classification("OutOfTheorem", verdict, cert,
                          tuple(notes + ["series undecided"]))
