"""Parsers for the shared function-family grammar and point inputs.

Family strings look like ``psi: power a=1 tau=0.5 t0=2`` (the label prefix
is optional — the CLI flag already says which slot is being filled).
Decimal parameters are parsed exactly into rationals; nothing round-trips
through binary floats.
"""

from __future__ import annotations

from fractions import Fraction

from .functions import (ApproxFunction, AuxFunction, ConstAux, ConstRate,
                        DimensionFunction, LogAux, LogDirichlet, PowerAux,
                        PowerDirichlet, PowerLaw, PowerRate, RateFunction,
                        ScaledDirichlet, TableAux, TablePsi, XLogX)
from .reals import ExactRational, PeriodicWord, RealInput, ValidatedInterval
from .words import Word


class ParseError(ValueError):
    pass


_LABELS = ("psi:", "Psi:", "f:", "phi:")


def _tokenize(text: str) -> tuple[str, dict[str, str]]:
    s = text.strip()
    for label in _LABELS:
        if s.startswith(label):
            s = s[len(label):].strip()
            break
    parts = s.split()
    if not parts:
        raise ParseError("empty family specification")
    family = parts[0].lower()
    kwargs: dict[str, str] = {}
    for tok in parts[1:]:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        kwargs[k] = v
    return family, kwargs


def _frac(kwargs: dict[str, str], key: str, default=None) -> Fraction:
    if key not in kwargs:
        if default is None:
            raise ParseError(f"missing parameter {key!r}")
        return Fraction(default)
    try:
        return Fraction(kwargs[key])
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad value for {key!r}: {kwargs[key]!r}") from e


def _int(kwargs: dict[str, str], key: str, default: int) -> int:
    if key not in kwargs:
        return default
    try:
        return int(kwargs[key])
    except ValueError as e:
        raise ParseError(f"bad value for {key!r}: {kwargs[key]!r}") from e


def _table_points(kwargs: dict[str, str]) -> tuple[tuple[int, Fraction], ...]:
    spec = kwargs.get("points")
    if not spec:
        raise ParseError("table family needs points=t1:v1,t2:v2,...")
    pts = []
    for item in spec.split(","):
        if ":" not in item:
            raise ParseError(f"bad table point {item!r}")
        t, v = item.split(":", 1)
        pts.append((int(t), Fraction(v)))
    return tuple(pts)


def parse_psi(text: str) -> ApproxFunction:
    family, kw = _tokenize(text)
    if family == "scaled":
        return ScaledDirichlet(_frac(kw, "c"), t0=_int(kw, "t0", 1))
    if family == "power":
        return PowerDirichlet(_frac(kw, "a", "1"), _frac(kw, "tau"),
                              t0=_int(kw, "t0", 2))
    if family == "log":
        return LogDirichlet(_frac(kw, "beta"), t0=_int(kw, "t0", 16))
    if family == "table":
        return TablePsi(_table_points(kw))
    raise ParseError(f"unknown psi family {family!r}")


def parse_aux(text: str) -> AuxFunction:
    family, kw = _tokenize(text)
    if family == "const":
        return ConstAux(_frac(kw, "c"), t0=_int(kw, "t0", 1))
    if family == "power":
        return PowerAux(_frac(kw, "tau"), _frac(kw, "scale", "1"),
                        t0=_int(kw, "t0", 1))
    if family == "log":
        return LogAux(_frac(kw, "beta"), _frac(kw, "scale", "1"),
                      t0=_int(kw, "t0", 16))
    if family == "table":
        return TableAux(_table_points(kw))
    raise ParseError(f"unknown aux family {family!r}")


def parse_dimension(text: str) -> DimensionFunction:
    family, kw = _tokenize(text)
    if family == "power":
        return PowerLaw(_frac(kw, "s"))
    if family == "xlogx":
        return XLogX()
    raise ParseError(f"unknown dimension family {family!r}")


def parse_rate(text: str) -> RateFunction:
    family, kw = _tokenize(text)
    if family == "const":
        return ConstRate(_frac(kw, "c"))
    if family == "power":
        return PowerRate(_frac(kw, "s"), _frac(kw, "scale", "1"))
    raise ParseError(f"unknown rate family {family!r}")


def _parse_digit_list(text: str) -> tuple[int, ...]:
    inner = text.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ParseError(f"expected [..] digit list, got {text!r}")
    body = inner[1:-1].strip()
    if not body:
        return ()
    try:
        return tuple(int(d) for d in body.split(","))
    except ValueError as e:
        raise ParseError(f"bad digit list {text!r}") from e


def parse_real(text: str) -> RealInput:
    """Accepts 'p/q', 'periodic:[pre];[per]', or a decimal literal.

    A decimal becomes a validated interval of one half ulp of the last
    printed digit around the literal value.
    """
    s = text.strip()
    if s.startswith("periodic:"):
        body = s[len("periodic:"):]
        if ";" not in body:
            raise ParseError("surd spec must look like periodic:[pre];[per]")
        pre_s, per_s = body.split(";", 1)
        pre = _parse_digit_list(pre_s)
        per = _parse_digit_list(per_s)
        if not per:
            raise ParseError("period must be nonempty")
        return PeriodicWord(Word(pre), Word(per))
    if "/" in s:
        try:
            p_s, q_s = s.split("/", 1)
            value = Fraction(int(p_s), int(q_s))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational {s!r}") from e
        return ExactRational(value)
    if "." in s:
        try:
            value = Fraction(s)
        except ValueError as e:
            raise ParseError(f"bad decimal {s!r}") from e
        places = len(s.split(".", 1)[1])
        h = Fraction(1, 2 * 10 ** places)
        lo = max(Fraction(0), value - h)
        hi = value + h
        if hi >= 1:
            raise ParseError("decimal interval escapes [0, 1)")
        return ValidatedInterval(lo, hi)
    raise ParseError(f"cannot parse point {s!r}")


def parse_word(text: str) -> Word:
    """Comma-separated digits, e.g. '2,1'."""
    try:
        return Word(tuple(int(d) for d in text.strip().split(",")))
    except ValueError as e:
        raise ParseError(f"bad word {text!r}") from e
