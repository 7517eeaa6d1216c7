"""Certification of essentially sub-linear dimension functions.

A dimension function qualifies when the small-x ratios f(Bx)/f(x) stay
bounded by some b < B.  For the closed-form families the limsup is known
exactly; user-supplied evaluators fall back to sampled ratios with a trend
test, and the certificate records which route produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .functions import CustomDim, DimensionFunction, PowerLaw, XLogX

DEFAULT_B_GRID = (2, 4)
SAMPLED_MARGIN = 0.02  # reject when sampled ratios come this close to B


def _default_x_grid() -> tuple[float, ...]:
    return tuple(10.0 ** (-k) for k in range(2, 13))


@dataclass(frozen=True)
class SublinearityCertificate:
    essentially_sublinear: bool
    B: Optional[int]
    b: Optional[float]
    x0: Optional[float]
    method: str  # "analytic" | "sampled"
    ratio_samples: tuple[tuple[float, float], ...]
    notes: tuple[str, ...] = ()

    def geometric_constant(self) -> float:
        """c = 1/(1 - b/B), the geometric-series constant for the block bound."""
        if not self.essentially_sublinear:
            raise ValueError("no certificate")
        return 1.0 / (1.0 - self.b / self.B)

    def q0(self) -> int:
        """Smallest denominator the dyadic block argument applies to."""
        if not self.essentially_sublinear:
            raise ValueError("no certificate")
        return max(math.ceil(1.0 / self.x0), math.ceil(self.B)) + 1

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "essentially_sublinear": self.essentially_sublinear,
            "B": self.B,
            "b": None if self.b is None else decimal(self.b),
            "x0": None if self.x0 is None else decimal(self.x0),
            "method": self.method,
            "ratio_samples": [[decimal(x), decimal(r)] for x, r in self.ratio_samples],
            "notes": list(self.notes),
        }


def _sample_ratios(f: DimensionFunction, B: int, x_grid) -> tuple[tuple[float, float], ...]:
    out = []
    for x in x_grid:
        fx = f.eval_float(x)
        fBx = f.eval_float(B * x)
        if fx <= 0 or not math.isfinite(fBx):
            continue
        out.append((x, fBx / fx))
    return tuple(out)


def certify_sublinear(f: DimensionFunction, B_grid=DEFAULT_B_GRID,
                      x_grid=None) -> SublinearityCertificate:
    """Search the B grid for a sub-linear witness b < B.

    Closed-form families are decided analytically (power law s: ratio is
    identically B^s, so certified iff s < 1; x log(1/x): ratios increase to
    B, never certified).  B prefers the largest grid entry with b <= B/2,
    falling back to the smallest entry that works at all.
    """
    x_grid = tuple(x_grid) if x_grid is not None else _default_x_grid()
    limsups = {B: f.ratio_limsup(B) for B in B_grid}
    if all(v is not None for v in limsups.values()):
        viable = [B for B in B_grid if limsups[B] < B]
        if not viable:
            return SublinearityCertificate(
                False, None, None, None, "analytic", (),
                ("ratio limsup equals B for every B: not essentially sub-linear",))
        comfortable = [B for B in viable if limsups[B] <= B / 2]
        B = max(comfortable) if comfortable else min(viable)
        samples = _sample_ratios(f, B, x_grid)
        return SublinearityCertificate(True, B, limsups[B], max(x_grid),
                                       "analytic", samples)
    # sampled route for custom evaluators
    for B in B_grid:
        samples = _sample_ratios(f, B, x_grid)
        if len(samples) < 4:
            continue
        tail = samples[len(samples) // 2:]
        b_hat = max(r for _, r in tail)
        head_max = max(r for _, r in samples[: len(samples) // 2])
        drifting = b_hat > head_max + SAMPLED_MARGIN / 2
        if b_hat <= B * (1.0 - SAMPLED_MARGIN) and not drifting:
            return SublinearityCertificate(
                True, B, b_hat * (1.0 + SAMPLED_MARGIN / 4), max(x_grid),
                "sampled", samples,
                ("sampled certificate: limsup not verified analytically",))
    return SublinearityCertificate(False, None, None, None, "sampled", (),
                                   ("sampled ratios approach B on every grid entry",))


@dataclass(frozen=True)
class ConsequenceReport:
    growth_unbounded: bool
    growth_span: float            # (f/x at smallest x) / (f/x at x0)
    measured_C: float             # quasi-monotonicity constant on the grid
    bound_B2: float
    ok: bool

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "growth_unbounded": self.growth_unbounded,
            "growth_span": decimal(self.growth_span),
            "measured_C": decimal(self.measured_C),
            "bound_B2": decimal(self.bound_B2),
            "ok": self.ok,
        }


def sublinear_consequences(cert: SublinearityCertificate, f: DimensionFunction,
                           x_grid=None) -> ConsequenceReport:
    """Verify the two consequences a certificate is supposed to buy:
    f(x)/x blows up toward 0, and f(x)/x is quasi-monotone with constant
    at most B^2."""
    if not cert.essentially_sublinear:
        raise ValueError("consequence check needs a valid certificate")
    xs = tuple(x_grid) if x_grid is not None else tuple(
        cert.x0 * 2.0 ** (-k) for k in range(0, 40))
    slopes = [(x, f.eval_float(x) / x) for x in xs if f.eval_float(x) > 0]
    span = slopes[-1][1] / slopes[0][1]
    increasing = all(b[1] >= a[1] * 0.999 for a, b in zip(slopes, slopes[1:]))
    growth_unbounded = increasing and span > 100.0
    measured = 1.0
    for i in range(len(slopes)):
        for j in range(i + 1, len(slopes)):
            # slopes is ordered by decreasing x: x_j < x_i, compare f/x at the
            # larger x against the smaller
            measured = max(measured, slopes[i][1] / slopes[j][1])
    bound = float(cert.B) ** 2
    ok = growth_unbounded and measured <= bound * (1.0 + 1e-9)
    return ConsequenceReport(growth_unbounded, span, measured, bound, ok)
