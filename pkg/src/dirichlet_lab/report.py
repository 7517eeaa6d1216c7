"""Deterministic report assembly: canonical JSON, decimal-string numerics,
and CSV emitters.

Reports never contain binary floats or timestamps; identical configurations
must produce byte-identical files regardless of thread count.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

SCHEMA_VERSION = 1
TOOL_NAME = "dirichlet-lab"


def tool_version() -> str:
    try:
        from importlib.metadata import version

        return version("dirichlet-lab")
    except Exception:
        return "0.1.0"


def decimal(x: float) -> str:
    """Decimal string that round-trips the double exactly."""
    return format(float(x), ".17e")


def frac_str(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def canonical_json_bytes(obj) -> bytes:
    s = json.dumps(obj, sort_keys=True, ensure_ascii=True, indent=2,
                   separators=(",", ": "))
    return (s + "\n").encode("utf-8")


def build_report(command: str, config: dict, payload: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL_NAME,
        "version": tool_version(),
        "command": command,
        "config": config,
        "payload": payload,
    }


def load_schema() -> dict:
    text = resources.files("dirichlet_lab").joinpath("schema/report.schema.json").read_text()
    return json.loads(text)


def series_csv(verdict) -> str:
    """CSV with per-block cumulative sums and the final envelopes."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t_block", "partial_sum", "lower_envelope", "upper_envelope"])
    for t, value in verdict.checkpoints:
        w.writerow([t, decimal(value), "", ""])
    w.writerow([verdict.t_end, decimal(verdict.partial_sum),
                "" if verdict.lower_envelope is None else decimal(verdict.lower_envelope),
                "" if verdict.upper_envelope is None else decimal(verdict.upper_envelope)])
    return buf.getvalue()


def pair_ratio_csv(rows) -> str:
    """Rows: (q, inner_sum, comparison_term, kappa)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "inner_sum", "comparison_term", "kappa"])
    for q, inner, comp, kappa in rows:
        w.writerow([q, decimal(inner), decimal(comp), decimal(kappa)])
    return buf.getvalue()


def block_table_csv(rows) -> str:
    """Rows: (q, k, block_value, ratio_to_previous)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "k", "block", "ratio"])
    for q, k, val, ratio in rows:
        w.writerow([q, k, decimal(val), "" if ratio is None else decimal(ratio)])
    return buf.getvalue()


def membership_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "event"])
    for i, e in enumerate(report.events):
        w.writerow([report.start + i, e])
    return buf.getvalue()
