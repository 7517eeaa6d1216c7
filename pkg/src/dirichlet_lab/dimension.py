"""Growth-order estimation and the critical-exponent dimension estimator.

The lower order tau of a threshold family is estimated as a running minimum
of log Psi(t)/log t over a geometric grid (a finite grid cannot certify a
liminf, so the whole tail-minimum sequence ships with the point estimate).
The Hausdorff dimension of the non-improvable set is then 2/(2+tau), and an
independent numerical route locates the same value as the exponent where the
partial sums of sum_t t (1/(t^2 Psi(t)))^s cross the harmonic benchmark.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .functions import AuxFunction, DomainViolationError


@dataclass(frozen=True)
class TauEstimate:
    grid: tuple[int, ...]
    ratios: tuple[float, ...]
    tail_minima: tuple[float, ...]
    tau_hat: float
    tail_window_start: int
    family_tau: Optional[Fraction]

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "grid": list(self.grid),
            "ratios": [decimal(r) for r in self.ratios],
            "tail_minima": [decimal(r) for r in self.tail_minima],
            "tau_hat": decimal(self.tau_hat),
            "tail_window_start": self.tail_window_start,
            "family_tau": None if self.family_tau is None else str(self.family_tau),
        }


def tau_liminf(aux: AuxFunction, j0: int = 4, j_max: int = 40) -> TauEstimate:
    """Estimate liminf log Psi(t)/log t on the grid t_j = 2^j.

    tau_hat is the minimum over the tail half of the grid; the full
    right-to-left running-minimum sequence is kept for diagnostics.
    """
    if not 1 <= j0 <= j_max:
        raise ValueError("need 1 <= j0 <= j_max")
    grid = tuple(2 ** j for j in range(j0, j_max + 1))
    ratios = []
    for t in grid:
        psi = aux.float_at(float(t))
        if psi <= 0:
            raise DomainViolationError(f"threshold non-positive at t={t}")
        ratios.append(math.log(psi) / math.log(t))
    tail_minima = list(ratios)
    for i in range(len(tail_minima) - 2, -1, -1):
        tail_minima[i] = min(tail_minima[i], tail_minima[i + 1])
    window = len(grid) // 2
    tau_hat = tail_minima[window]
    asym = aux.asym()
    family_tau = asym.tau if asym is not None else None
    return TauEstimate(grid, tuple(ratios), tuple(tail_minima), tau_hat,
                       window, family_tau)


def dimension_of_complement(tau) -> float:
    """2/(2+tau), the dimension of the non-improvable set for lower order tau."""
    if isinstance(tau, Fraction):
        return float(Fraction(2) / (2 + tau))
    t = float(tau)
    if t < 0:
        raise ValueError("tau must be >= 0")
    return 2.0 / (2.0 + t)


@dataclass(frozen=True)
class CriticalExponent:
    s_star: Optional[float]
    Q: int
    theta: float
    threshold: float            # theta * log Q, the harmonic benchmark
    iterations: int
    trace: tuple[tuple[int, float], ...]  # (Q_j, s_star(Q_j))
    status: str                 # "ok" | "no-bracket"

    def to_json(self) -> dict:
        from .report import decimal

        return {
            "s_star": None if self.s_star is None else decimal(self.s_star),
            "Q": self.Q,
            "theta": decimal(self.theta),
            "threshold": decimal(self.threshold),
            "iterations": self.iterations,
            "trace": [[q, decimal(s)] for q, s in self.trace],
            "status": self.status,
        }


def _exponent_sum(spec, s: float, t0: int, Q: int, backend) -> float:
    return kernels.partial_sum("hausdorff-pow", spec, s, t0, Q + 1, backend=backend)


def _solve_crossing(spec, t0: int, Q: int, theta: float, backend,
                    iterations: int = 48) -> Optional[float]:
    target = theta * math.log(Q)
    lo, hi = 1e-9, 1.0 - 1e-9
    g_lo = _exponent_sum(spec, lo, t0, Q, backend) - target
    g_hi = _exponent_sum(spec, hi, t0, Q, backend) - target
    if not (g_lo > 0.0 > g_hi):
        return None
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _exponent_sum(spec, mid, t0, Q, backend) - target > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_exponent(aux: AuxFunction, Q: int, theta: float = 1.0,
                      backend: Optional[str] = None,
                      iterations: int = 48) -> CriticalExponent:
    """Locate the exponent where the partial sum crosses theta * log Q.

    At the true critical exponent the sum grows like the harmonic series,
    so calibrating the crossing level against log Q pins the estimate to
    the dimension with an O(1/log^2 Q) bias; the trace over increasing Q
    supports extrapolation.
    """
    if Q < 10 ** 3:
        raise ValueError("Q must be at least 10^3")
    spec = aux.kernel_spec()
    if spec is None:
        raise ValueError("critical exponent needs a closed-form family")
    t0 = max(aux.t0, 1)
    asym = aux.asym()
    if asym is not None:
        t0 = max(t0, asym.valid_from)
    trace = []
    qj = 10 ** 3
    while qj < Q:
        s = _solve_crossing(spec, t0, qj, theta, backend, iterations)
        if s is not None:
            trace.append((qj, s))
        qj *= 10
    s_star = _solve_crossing(spec, t0, Q, theta, backend, iterations)
    if s_star is not None:
        trace.append((Q, s_star))
        status = "ok"
    else:
        status = "no-bracket"
    return CriticalExponent(s_star, Q, theta, theta * math.log(Q),
                            iterations, tuple(trace), status)
