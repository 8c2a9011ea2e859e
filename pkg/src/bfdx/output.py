"""Rendering of result records as human text, JSON or CSV.

Numbers are written in plain positional decimal with 10 significant digits,
independent of locale. Non-finite floats become the strings ``inf``, ``-inf``
and ``nan`` (JSON has no literal for them).
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Mapping

import numpy as np

SIG_DIGITS = 10


def format_number(x: float | int) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if x == 0:
        return "0"
    return np.format_float_positional(
        x, precision=SIG_DIGITS, unique=False, fractional=False, trim="-"
    )


def to_json(value: Any) -> str:
    """Serialize nested dicts, lists and scalars with :func:`format_number`."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not math.isfinite(value):
            return json.dumps(format_number(value))
        return format_number(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, Mapping):
        items = (f"{json.dumps(str(k))}: {to_json(v)}" for k, v in value.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def flatten(record: Mapping[str, Any], prefix: str = "") -> dict[str, Any]:
    """Flatten nesting into ``outer_inner`` keys; list items get their index."""
    flat: dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(flatten(value, name + "_"))
        elif isinstance(value, (list, tuple)):
            if not value:
                flat[name] = None
            for i, item in enumerate(value):
                if isinstance(item, Mapping):
                    flat.update(flatten(item, f"{name}_{i}_"))
                else:
                    flat[f"{name}_{i}"] = item
        else:
            flat[name] = value
    return flat


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, float)):
        return format_number(value)
    return str(value)


def to_csv(record: Mapping[str, Any]) -> str:
    flat = flatten(record)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(flat.keys())
    writer.writerow(_cell(v) for v in flat.values())
    return buf.getvalue()


def to_human(record: Mapping[str, Any]) -> str:
    flat = flatten(record)
    if len(flat) == 1:
        return (_cell(next(iter(flat.values()))) or "-") + "\n"
    width = max(len(k) for k in flat)
    return "".join(f"{k:<{width}}  {_cell(v) or '-'}\n" for k, v in flat.items())


def render(record: Mapping[str, Any], fmt: str) -> str:
    if fmt == "json":
        return to_json(record) + "\n"
    if fmt == "csv":
        return to_csv(record)
    return to_human(record)
