"""CSV and JSON output with a fixed number of significant digits."""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

DEFAULT_SIGNIFICANT_DIGITS = 12


def format_value(value: Any, digits: int = DEFAULT_SIGNIFICANT_DIGITS) -> str:
    """Floats to ``digits`` significant digits; other values via str()."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        text = f"{value:.{digits}g}"
        return "0" if text == "-0" else text
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value  # Enum members
    return str(value)


def render_csv(
    header: Sequence[str], rows: Iterable[Sequence[Any]], digits: int = DEFAULT_SIGNIFICANT_DIGITS
) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(item, digits) for item in row])
    return buffer.getvalue()


def _rounded(payload: Any, digits: int) -> Any:
    if isinstance(payload, bool) or payload is None:
        return payload
    if isinstance(payload, float):
        if not math.isfinite(payload):
            return format_value(payload)
        return float(f"{payload:.{digits}g}")
    if isinstance(payload, dict):
        return {str(key): _rounded(value, digits) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_rounded(value, digits) for value in payload]
    if hasattr(payload, "value") and isinstance(getattr(payload, "value"), str):
        return payload.value
    return payload


def render_json(payload: Any, digits: int = DEFAULT_SIGNIFICANT_DIGITS) -> str:
    return json.dumps(_rounded(payload, digits), indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: Optional[Path] = None) -> None:
    """Write to ``out`` when given, else to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    out.write_text(text, encoding="utf-8")


def write_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    out: Optional[Path] = None,
    digits: int = DEFAULT_SIGNIFICANT_DIGITS,
) -> None:
    emit(render_csv(header, rows, digits), out)


def write_json(payload: Any, out: Optional[Path] = None, digits: int = DEFAULT_SIGNIFICANT_DIGITS) -> None:
    emit(render_json(payload, digits), out)
