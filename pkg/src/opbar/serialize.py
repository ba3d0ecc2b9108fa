"""Stable JSON/CSV/text rendering of results.

Integers that can exceed 64 bits are written as decimal strings, and an
enclosure becomes ``{"lo": ..., "hi": ..., "bits": ...}`` with endpoints
rounded outward to 40 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .certified_real import CertifiedReal

SIGNIFICANT_DIGITS = 40


def _floor_log10(a: Fraction) -> int:
    # exact floor(log10(a)) for a > 0
    k = len(str(a.numerator)) - len(str(a.denominator))
    while Fraction(10) ** k > a:
        k -= 1
    while Fraction(10) ** (k + 1) <= a:
        k += 1
    return k


def decimal_outward(value: Fraction, round_up: bool, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Round ``value`` to ``digits`` significant digits toward +inf or -inf.

    >>> decimal_outward(Fraction(1, 3), True, 5)
    '3.3334e-1'
    """
    if value == 0:
        return "0"
    negative = value < 0
    a = -value if negative else value
    k = _floor_log10(a)
    scaled = a * Fraction(10) ** (digits - 1 - k)
    # magnitude rounds away from zero exactly when the signed value rounds outward that way
    away = round_up != negative
    m = -((-scaled.numerator) // scaled.denominator) if away else scaled.numerator // scaled.denominator
    if m >= 10**digits:
        m //= 10
        k += 1
    text = str(m).rstrip("0") or "0"
    mantissa = text[0] + ("." + text[1:] if len(text) > 1 else "")
    return f"{'-' if negative else ''}{mantissa}e{k}"


def enclosure(x: CertifiedReal | None) -> dict[str, Any] | None:
    if x is None:
        return None
    return {
        "lo": decimal_outward(x.lo_fraction(), False),
        "hi": decimal_outward(x.hi_fraction(), True),
        "bits": x.precision_bits,
    }


def fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=True)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict) and set(value) == {"lo", "hi", "bits"}:
        return f"{value['lo']};{value['hi']};{value['bits']}"
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    return str(value)


def csv_rows(rows: Iterable[Mapping[str, Any]]) -> str:
    """Headerless CSV; enclosures become ``lo;hi;bits`` and lists join with ``;``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow([_cell(v) for v in row.values()])
    return buf.getvalue()


def text_rows(rows: Sequence[Mapping[str, Any]]) -> str:
    lines = []
    for row in rows:
        lines.append("  ".join(f"{k}={_cell(v)}" for k, v in row.items()))
    return "\n".join(lines) + ("\n" if lines else "")
