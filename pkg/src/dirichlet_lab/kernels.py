"""Hot summation kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen by the DIRICHLET_LAB_KERNELS environment variable
("numba" or "numpy"); numba is the default when importable.  Sums are
accumulated in a fixed serial block order, so results are deterministic
per backend regardless of any caller-level threading.
"""

from __future__ import annotations

import math
import os

import numpy as np

ENV_BACKEND = "DIRICHLET_LAB_KERNELS"

KIND_HAUSDORFF_POW = 0
KIND_HAUSDORFF_XLOGX = 1
KIND_LEBESGUE = 2
KIND_WEAK = 3
KIND_XLOGX_UPPER = 4
KIND_SIMMONS = 5

FAM_CONST = 0
FAM_POWER = 1
FAM_LOG = 2
FAM_DERIVED_LOG = 3
FAM_DERIVED_POWER = 4

_FAM_CODES = {
    "const": FAM_CONST,
    "power": FAM_POWER,
    "log": FAM_LOG,
    "derived-log": FAM_DERIVED_LOG,
    "derived-power": FAM_DERIVED_POWER,
}

_KIND_CODES = {
    "hausdorff-pow": KIND_HAUSDORFF_POW,
    "hausdorff-xlogx": KIND_HAUSDORFF_XLOGX,
    "lebesgue": KIND_LEBESGUE,
    "weak": KIND_WEAK,
    "xlogx-upper": KIND_XLOGX_UPPER,
    "simmons": KIND_SIMMONS,
}

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


def backend_name() -> str:
    env = os.environ.get(ENV_BACKEND, "").strip().lower()
    if env == "numpy":
        return "numpy"
    if env == "numba":
        if not _HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is not importable")
        return "numba"
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# numba path: one scalar loop, fixed accumulation order

@njit(cache=True, fastmath=True)
def _series_loop(kind: int, fam: int, p0: float, p1: float, mult: float,
                 s: float, lo: int, hi: int) -> float:
    total = 0.0
    lmult = math.log(mult)
    for t in range(lo, hi):
        tf = float(t)
        lt = math.log(tf)
        if fam == 0:
            psi = p0 * mult
            lpsi = math.log(p0) + lmult
        elif fam == 1:
            lpsi = math.log(p0) + p1 * lt + lmult
            psi = math.exp(lpsi)
        elif fam == 2:
            psi = p0 * lt * math.log(lt) ** p1 * mult
            lpsi = math.log(psi)
        elif fam == 3:
            psi = (lt * math.log(lt) ** p0 - 1.0) * mult
            lpsi = math.log(psi) if psi > 0.0 else 0.0
        else:
            psi = (math.exp(p1 * lt) / p0 - 1.0) * mult
            lpsi = math.log(psi) if psi > 0.0 else 0.0
        if psi <= 0.0:
            continue
        if kind == 0:
            term = math.exp((1.0 - 2.0 * s) * lt - s * lpsi)
        elif kind == 1:
            x = 1.0 / (tf * tf * psi)
            term = tf * x * (2.0 * lt + lpsi)
        elif kind == 2:
            term = lpsi / (tf * psi)
        elif kind == 3:
            term = lt / (tf * psi)
        elif kind == 4:
            term = lt * lt / (tf * psi)
        else:
            term = lt * lpsi / (tf * psi)
        total += term
    return total


@njit(cache=True)
def _prefix_power_loop(s: float, q_max: int) -> np.ndarray:
    out = np.empty(q_max + 1, dtype=np.float64)
    out[0] = 0.0
    acc = 0.0
    for p in range(1, q_max + 1):
        acc += float(p) ** (-s)
        out[p] = acc
    return out


# ---------------------------------------------------------------------------
# numpy fallback: identical math, fixed block order

_BLOCK = 1 << 16


def _psi_block(fam: int, p0: float, p1: float, mult: float, t: np.ndarray) -> np.ndarray:
    if fam == FAM_CONST:
        psi = np.full_like(t, p0)
    elif fam == FAM_POWER:
        psi = p0 * t ** p1
    elif fam == FAM_LOG:
        lt = np.log(t)
        psi = p0 * lt * np.log(lt) ** p1
    elif fam == FAM_DERIVED_LOG:
        lt = np.log(t)
        psi = lt * np.log(lt) ** p0 - 1.0
    else:
        psi = t ** p1 / p0 - 1.0
    return psi * mult


def _series_numpy(kind: int, fam: int, p0: float, p1: float, mult: float,
                  s: float, lo: int, hi: int) -> float:
    total = 0.0
    for start in range(lo, hi, _BLOCK):
        t = np.arange(start, min(start + _BLOCK, hi), dtype=np.float64)
        psi = _psi_block(fam, p0, p1, mult, t)
        good = psi > 0.0
        if not good.all():
            t = t[good]
            psi = psi[good]
            if t.size == 0:
                continue
        if kind == KIND_HAUSDORFF_POW:
            term = t ** (1.0 - 2.0 * s) * psi ** (-s)
        elif kind == KIND_HAUSDORFF_XLOGX:
            x = 1.0 / (t * t * psi)
            term = t * x * np.log(1.0 / x)
        elif kind == KIND_LEBESGUE:
            term = np.log(psi) / (t * psi)
        elif kind == KIND_WEAK:
            term = np.log(t) / (t * psi)
        elif kind == KIND_XLOGX_UPPER:
            term = np.log(t) ** 2 / (t * psi)
        else:
            term = np.log(t) * np.log(psi) / (t * psi)
        total += float(np.sum(term))
    return total


def _prefix_power_numpy(s: float, q_max: int) -> np.ndarray:
    out = np.empty(q_max + 1, dtype=np.float64)
    out[0] = 0.0
    p = np.arange(1, q_max + 1, dtype=np.float64)
    np.cumsum(p ** (-s), out=out[1:])
    return out


# ---------------------------------------------------------------------------
# public surface

def partial_sum(kind: str, spec: tuple, s: float, lo: int, hi: int,
                backend: str | None = None) -> float:
    """Sum of the series terms for integer t in [lo, hi).

    spec is (family, p0, p1, p2, mult) as produced by AuxFunction.kernel_spec().
    """
    fam_name, p0, p1, _p2, mult = spec
    kind_code = _KIND_CODES[kind]
    fam_code = _FAM_CODES[fam_name]
    if hi <= lo:
        return 0.0
    use = backend or backend_name()
    if use == "numba":
        return float(_series_loop(kind_code, fam_code, float(p0), float(p1),
                                  float(mult), float(s), int(lo), int(hi)))
    return _series_numpy(kind_code, fam_code, float(p0), float(p1),
                         float(mult), float(s), int(lo), int(hi))


def prefix_power_sums(s: float, q_max: int, backend: str | None = None) -> np.ndarray:
    """Array PS with PS[q] = sum_{p=1..q} p**(-s) for q = 0..q_max."""
    use = backend or backend_name()
    if use == "numba":
        return _prefix_power_loop(float(s), int(q_max))
    return _prefix_power_numpy(float(s), int(q_max))


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if _HAVE_NUMBA else ("numpy",)
