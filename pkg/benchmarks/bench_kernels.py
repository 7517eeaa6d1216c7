#!/usr/bin/env python3
"""Benchmark the summation kernels on both backends.

Runs each kernel case under the numba JIT path and the pure-numpy fallback,
checks they agree to 1e-9 relative, and prints a timing table.  The numba
column excludes JIT compilation (one warmup call per case).

Usage:
    python3 benchmarks/bench_kernels.py [--T 10000000] [--repeat 3]
"""

import argparse
import time

from dirichlet_lab import kernels

CASES = [
    ("hausdorff-pow s=0.7, Psi=t", "hausdorff-pow", ("power", 1.0, 1.0, 0.0, 1.0), 0.7, 1),
    ("hausdorff-pow s=0.5, Psi=t^2", "hausdorff-pow", ("power", 1.0, 2.0, 0.0, 1.0), 0.5, 1),
    ("lebesgue,  Psi=log.(loglog)^2.5-1", "lebesgue", ("derived-log", 2.5, 0.0, 0.0, 1.0), 0.0, 16),
    ("weak,      Psi=log.(loglog)^2.5", "weak", ("log", 1.0, 2.5, 0.0, 1.0), 0.0, 16),
    ("simmons,   Psi=t", "simmons", ("power", 1.0, 1.0, 0.0, 1.0), 0.0, 2),
    ("xlogx-upper, Psi=const 9", "xlogx-upper", ("const", 9.0, 0.0, 0.0, 1.0), 0.0, 2),
]


def time_case(kind, spec, s, lo, hi, backend, repeat):
    best = float("inf")
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = kernels.partial_sum(kind, spec, s, lo, hi, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--T", type=int, default=10 ** 7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}   T = {args.T:.0e}   "
          f"(default backend: {kernels.backend_name()})")
    header = f"{'case':<38}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    worst_rel = 0.0
    for label, kind, spec, s, lo in CASES:
        times = {}
        values = {}
        for b in backends:
            if b == "numba":
                kernels.partial_sum(kind, spec, s, lo, lo + 16, backend=b)  # JIT warmup
            values[b], times[b] = time_case(kind, spec, s, lo, args.T, b, args.repeat)
        row = f"{label:<38}"
        for b in backends:
            row += f"{times[b] * 1e3:>10.1f}ms"
        if len(backends) == 2:
            rel = abs(values["numba"] - values["numpy"]) / max(abs(values["numpy"]), 1e-300)
            worst_rel = max(worst_rel, rel)
            row += f"{times['numpy'] / times['numba']:>9.2f}x"
        print(row)
    if len(backends) == 2:
        print(f"\nmax relative disagreement: {worst_rel:.3e}")
        assert worst_rel < 1e-9, "backends disagree beyond tolerance"
        print("backend agreement OK (< 1e-9 relative)")

    # prefix power sums
    for b in backends:
        kernels.prefix_power_sums(0.8, 64, backend=b)  # JIT warmup
        t0 = time.perf_counter()
        kernels.prefix_power_sums(0.8, 10 ** 5, backend=b)
        print(f"prefix_power_sums q_max=1e5 [{b}]: "
              f"{(time.perf_counter() - t0) * 1e3:.1f}ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
