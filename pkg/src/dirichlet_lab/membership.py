"""Finite-horizon membership tests with per-index event logs and witnesses.

Every "for all large n" / "infinitely many n" statement is truncated to a
declared index window; verdicts never claim asymptotic membership, they
summarize exactly what was decided on the window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact import ExactReal, cmp_exact, exact_abs
from .functions import (ApproxFunction, AuxFunction, DomainViolationError,
                        RateFunction, UndecidedComparisonError, derived,
                        scaled_aux)
from .reals import (Enclosure, ExactRational, PeriodicWord, RealInput,
                    ValidatedInterval, _interval_digit, digits_up_to,
                    exact_value, tail_value)

EVENT_HOLD = "hold"
EVENT_FAIL = "fail"
EVENT_UNDECIDED = "undecided"
EVENT_TERMINATED = "terminated"

VERDICT_ALL_HOLD = "AllEventsHold"
VERDICT_FAILS_AT = "EventFailsAt"
VERDICT_WITNESSES = "WitnessesFound"
VERDICT_NO_WITNESS = "NoWitnessUpToHorizon"
VERDICT_UNDECIDED = "UndecidedAtPrecision"


@dataclass(frozen=True)
class Horizon:
    start: int = 1
    end: int = 50
    precision: int = 300  # decimal-digit cap for transcendental comparisons

    def __post_init__(self):
        if not 1 <= self.start <= self.end:
            raise ValueError("horizon needs 1 <= start <= end")

    def indices(self):
        return range(self.start, self.end + 1)


@dataclass(frozen=True)
class MembershipReport:
    set_tag: str
    start: int
    end: int
    events: tuple[str, ...]
    witnesses: tuple[int, ...]
    verdict: str
    detail: Optional[int]
    notes: tuple[str, ...] = ()

    def event_at(self, n: int) -> str:
        return self.events[n - self.start]

    def to_json(self) -> dict:
        return {
            "set": self.set_tag,
            "horizon": {"start": self.start, "end": self.end},
            "events": list(self.events),
            "witnesses": list(self.witnesses),
            "verdict": self.verdict,
            "detail": self.detail,
            "notes": list(self.notes),
        }


def _forall_verdict(events, start):
    for i, e in enumerate(events):
        if e == EVENT_FAIL:
            return VERDICT_FAILS_AT, start + i
    for i, e in enumerate(events):
        if e in (EVENT_UNDECIDED, EVENT_TERMINATED):
            return VERDICT_UNDECIDED, start + i
    return VERDICT_ALL_HOLD, None


def _im_verdict(events, start):
    count = sum(1 for e in events if e == EVENT_HOLD)
    if count:
        return VERDICT_WITNESSES, count
    for i, e in enumerate(events):
        if e in (EVENT_UNDECIDED, EVENT_TERMINATED):
            return VERDICT_UNDECIDED, start + i
    return VERDICT_NO_WITNESS, None


def _witnesses(events, start):
    return tuple(start + i for i, e in enumerate(events) if e == EVENT_HOLD)


class _Scaffold:
    """Digits, convergent denominators, and tails shared by the event tests."""

    def __init__(self, x: RealInput, n_max: int):
        self.x = x
        self.digits, self.status = digits_up_to(x, n_max)
        p = [1, 0]
        q = [0, 1]
        for a in self.digits:
            p.append(a * p[-1] + p[-2])
            q.append(a * q[-1] + q[-2])
        self._p = p
        self._q = q
        self._tail_enclosures: list[tuple[Fraction, Fraction]] | None = None
        if isinstance(x, ValidatedInterval):
            encs = [(x.lo, x.hi)]
            lo, hi = x.lo, x.hi
            for _ in range(len(self.digits)):
                step = _interval_digit(lo, hi)
                if step is None:
                    break
                _, lo, hi = step
                encs.append((lo, hi))
            self._tail_enclosures = encs

    def available(self, n: int) -> bool:
        return n <= len(self.digits)

    def digit(self, i: int) -> int:
        return self.digits[i - 1]

    def pk(self, k: int) -> int:
        return self._p[k + 1]

    def qk(self, k: int) -> int:
        return self._q[k + 1]

    def tail(self, n: int):
        if self._tail_enclosures is not None:
            lo, hi = self._tail_enclosures[n]
            return Enclosure(lo, hi)
        return tail_value(self.x, n)

    def approx_error(self, n: int):
        """|x - p_n/q_n| as an exact value or an enclosure."""
        conv = Fraction(self.pk(n), self.qk(n))
        if isinstance(self.x, ValidatedInterval):
            lo = max(self.x.lo - conv, conv - self.x.hi, Fraction(0))
            hi = max(self.x.hi - conv, conv - self.x.lo)
            return Enclosure(lo, hi)
        return exact_abs(exact_value(self.x) - conv)


def _event_from_cmp(cmp_fn, value, hold_when) -> str:
    """hold_when: 'lt' means the event is cmp < 0, 'gt' means cmp > 0,
    'ge' means cmp >= 0."""
    try:
        if isinstance(value, Enclosure):
            c_lo = cmp_fn(value.lo)
            c_hi = cmp_fn(value.hi)
            if hold_when == "lt":
                if c_hi < 0:
                    return EVENT_HOLD
                if c_lo >= 0:
                    return EVENT_FAIL
                return EVENT_UNDECIDED
            if hold_when == "gt":
                if c_lo > 0:
                    return EVENT_HOLD
                if c_hi <= 0:
                    return EVENT_FAIL
                return EVENT_UNDECIDED
            if c_lo >= 0:
                return EVENT_HOLD
            if c_hi < 0:
                return EVENT_FAIL
            return EVENT_UNDECIDED
        c = cmp_fn(value)
    except UndecidedComparisonError:
        return EVENT_UNDECIDED
    if hold_when == "lt":
        return EVENT_HOLD if c < 0 else EVENT_FAIL
    if hold_when == "gt":
        return EVENT_HOLD if c > 0 else EVENT_FAIL
    return EVENT_HOLD if c >= 0 else EVENT_FAIL


def dirichlet_events(x: RealInput, psi: ApproxFunction, h: Horizon) -> MembershipReport:
    """Improvability events |q_{n-1} x - p_{n-1}| < psi(q_n) over the horizon."""
    sc = _Scaffold(x, h.end)
    events = []
    for n in h.indices():
        if not sc.available(n):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        qn, qn1 = sc.qk(n), sc.qk(n - 1)
        if qn < psi.t0:
            events.append(EVENT_UNDECIDED)
            continue
        tail = sc.tail(n)
        if isinstance(tail, Enclosure):
            value = Enclosure(1 / (qn + tail.hi * qn1), 1 / (qn + tail.lo * qn1))
        else:
            den = qn + tail * qn1
            value = 1 / den if isinstance(den, Fraction) else den.reciprocal()
        events.append(_event_from_cmp(lambda v, t=qn: psi.cmp_value(v, t), value, "lt"))
    verdict, detail = _forall_verdict(events, h.start)
    return MembershipReport("dirichlet", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail)


def product_events(x: RealInput, aux: AuxFunction, h: Horizon) -> MembershipReport:
    """The reciprocal form of the same test: T^n(x) * q_{n-1}/q_n > 1/Psi(q_n).

    Decided indices must agree with dirichlet_events exactly (the two
    inequalities are algebraically equivalent under t*psi(t) < 1).
    """
    sc = _Scaffold(x, h.end)
    events = []
    for n in h.indices():
        if not sc.available(n):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        qn = sc.qk(n)
        if qn < aux.t0:
            events.append(EVENT_UNDECIDED)
            continue
        ratio = Fraction(sc.qk(n - 1), qn)
        tail = sc.tail(n)
        if isinstance(tail, Enclosure):
            value = Enclosure(tail.lo * ratio, tail.hi * ratio)
        else:
            value = tail * ratio
        events.append(_event_from_cmp(lambda v, t=qn: aux.cmp_inverse(v, t), value, "gt"))
    verdict, detail = _forall_verdict(events, h.start)
    return MembershipReport("product", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail)


def quotient_pair_membership(x: RealInput, aux: AuxFunction, h: Horizon) -> MembershipReport:
    """Witnesses of a_n a_{n+1} > Psi(q_n) (infinitely-many quantifier)."""
    sc = _Scaffold(x, h.end + 1)
    events = []
    for n in h.indices():
        if not sc.available(n + 1):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        if sc.qk(n) < aux.t0:
            events.append(EVENT_UNDECIDED)
            continue
        prod = Fraction(sc.digit(n) * sc.digit(n + 1))
        events.append(_event_from_cmp(
            lambda v, t=sc.qk(n): aux.cmp_value(v, t), prod, "gt"))
    verdict, detail = _im_verdict(events, h.start)
    return MembershipReport("quotient-pair", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail)


def single_quotient_membership(x: RealInput, aux: AuxFunction, h: Horizon) -> MembershipReport:
    """Witnesses of a_{n+1} > Psi(q_n)."""
    sc = _Scaffold(x, h.end + 1)
    events = []
    for n in h.indices():
        if not sc.available(n + 1):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        if sc.qk(n) < aux.t0:
            events.append(EVENT_UNDECIDED)
            continue
        events.append(_event_from_cmp(
            lambda v, t=sc.qk(n): aux.cmp_value(v, t), Fraction(sc.digit(n + 1)), "gt"))
    verdict, detail = _im_verdict(events, h.start)
    return MembershipReport("single-quotient", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail)


def well_approximable_membership(x: RealInput, aux: AuxFunction, h: Horizon) -> MembershipReport:
    """Witnesses of |x - p_n/q_n| < 1/(q_n^2 Psi(q_n)), tested along convergents.

    For thresholds with Psi >= 2 the convergent restriction loses nothing
    (any good approximation is a convergent); otherwise witness counts are
    a lower bound.
    """
    sc = _Scaffold(x, h.end)
    events = []
    lossless = True
    for n in h.indices():
        if not sc.available(n):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        qn = sc.qk(n)
        if qn < aux.t0:
            events.append(EVENT_UNDECIDED)
            continue
        try:
            if aux.cmp_value(Fraction(2), qn) > 0:
                lossless = False
        except UndecidedComparisonError:
            lossless = False
        err = sc.approx_error(n)
        if isinstance(err, Enclosure):
            value = Enclosure(err.lo * qn * qn, err.hi * qn * qn)
        else:
            value = err * (qn * qn)
        events.append(_event_from_cmp(
            lambda v, t=qn: aux.cmp_inverse(v, t), value, "lt"))
    verdict, detail = _im_verdict(events, h.start)
    note = ("convergent restriction lossless (threshold >= 2 on horizon)"
            if lossless else
            "threshold < 2 somewhere: witness count is a lower bound")
    return MembershipReport("well-approximable", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail, (note,))


def index_rate_membership(x: RealInput, phi: RateFunction, h: Horizon) -> MembershipReport:
    """Witnesses of a_n a_{n+1} >= phi(n) (threshold depends on the index)."""
    sc = _Scaffold(x, h.end + 1)
    events = []
    for n in h.indices():
        if not sc.available(n + 1):
            events.append(EVENT_TERMINATED if sc.status != "precision-exhausted"
                          else EVENT_UNDECIDED)
            continue
        prod = Fraction(sc.digit(n) * sc.digit(n + 1))
        events.append(_event_from_cmp(
            lambda v, m=n: phi.cmp_value(v, m), prod, "ge"))
    verdict, detail = _im_verdict(events, h.start)
    return MembershipReport("index-rate", h.start, h.end, tuple(events),
                            _witnesses(events, h.start), verdict, detail)


# ---------------------------------------------------------------------------
# pointwise theorem audits

@dataclass(frozen=True)
class AuditRow:
    n: int
    branch: Optional[str]  # "small-product" / "large-product" / None
    product_event: str
    violation: bool


@dataclass(frozen=True)
class AuditReport:
    kind: str
    rows: tuple[AuditRow, ...]
    violations: tuple[int, ...]
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rows": [
                {"n": r.n, "branch": r.branch, "product_event": r.product_event,
                 "violation": r.violation}
                for r in self.rows
            ],
            "violations": list(self.violations),
            "ok": self.ok,
            "notes": list(self.notes),
        }


def audit_product_criterion(x: RealInput, aux: AuxFunction, h: Horizon) -> AuditReport:
    """Checks the two pointwise implications linking digit products to the
    improvability event at the same index:

      a_n a_{n+1} <= Psi(q_n)/4  =>  product event holds at n,
      a_n a_{n+1}  > Psi(q_n)    =>  product event fails at n.
    """
    prod_report = product_events(x, aux, h)
    sc = _Scaffold(x, h.end + 1)
    rows = []
    violations = []
    for n in h.indices():
        ev = prod_report.event_at(n)
        if not sc.available(n + 1) or ev in (EVENT_TERMINATED, EVENT_UNDECIDED):
            rows.append(AuditRow(n, None, ev, False))
            continue
        prod = sc.digit(n) * sc.digit(n + 1)
        qn = sc.qk(n)
        if qn < aux.t0:
            rows.append(AuditRow(n, None, ev, False))
            continue
        try:
            small = aux.cmp_value(Fraction(4 * prod), qn) <= 0
            large = aux.cmp_value(Fraction(prod), qn) > 0
        except UndecidedComparisonError:
            rows.append(AuditRow(n, None, ev, False))
            continue
        branch = "small-product" if small else ("large-product" if large else None)
        violation = (small and ev != EVENT_HOLD) or (large and ev != EVENT_FAIL)
        rows.append(AuditRow(n, branch, ev, violation))
        if violation:
            violations.append(n)
    return AuditReport("product-criterion", tuple(rows), tuple(violations))


@dataclass(frozen=True)
class ChainRow:
    n: int
    k3: str
    g1: str
    g: str
    d: str
    g_quarter: str
    violation: Optional[str]


@dataclass(frozen=True)
class ChainReport:
    rows: tuple[ChainRow, ...]
    violations: tuple[tuple[int, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "kind": "inclusion-chain",
            "rows": [
                {"n": r.n, "well_approx_3x": r.k3, "single_quotient": r.g1,
                 "quotient_pair": r.g, "improvable": r.d,
                 "quotient_pair_quarter": r.g_quarter, "violation": r.violation}
                for r in self.rows
            ],
            "violations": [{"n": n, "link": link} for n, link in self.violations],
            "ok": self.ok,
        }


def inclusion_audit(x: RealInput, psi: ApproxFunction, h: Horizon) -> ChainReport:
    """Event-level implication chain at every index:

    well-approx(3*Psi) => single-quotient => quotient-pair => improvable fails,
    and improvable fails => quotient-pair for Psi/4.
    """
    aux = derived(psi)
    k3 = well_approximable_membership(x, scaled_aux(aux, 3), h)
    g1 = single_quotient_membership(x, aux, h)
    g = quotient_pair_membership(x, aux, h)
    d = product_events(x, aux, h)
    g4 = quotient_pair_membership(x, scaled_aux(aux, Fraction(1, 4)), h)

    rows = []
    violations = []
    for n in h.indices():
        e_k3, e_g1, e_g = k3.event_at(n), g1.event_at(n), g.event_at(n)
        e_d, e_g4 = d.event_at(n), g4.event_at(n)
        bad = None
        decided = {EVENT_HOLD, EVENT_FAIL}
        if e_k3 == EVENT_HOLD and e_g1 in decided and e_g1 != EVENT_HOLD:
            bad = "well-approx(3x) => single-quotient"
        elif e_g1 == EVENT_HOLD and e_g in decided and e_g != EVENT_HOLD:
            bad = "single-quotient => quotient-pair"
        elif e_g == EVENT_HOLD and e_d in decided and e_d != EVENT_FAIL:
            bad = "quotient-pair => improvable fails"
        elif e_d == EVENT_FAIL and e_g4 in decided and e_g4 != EVENT_HOLD:
            bad = "improvable fails => quotient-pair(1/4)"
        rows.append(ChainRow(n, e_k3, e_g1, e_g, e_d, e_g4, bad))
        if bad:
            violations.append((n, bad))
    return ChainReport(tuple(rows), tuple(violations))
