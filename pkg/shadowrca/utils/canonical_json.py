"""
Canonical JSON serialization.

Sorted keys, floats rounded to a fixed number of significant digits and a
trailing newline, so identical inputs always produce identical bytes.
"""
import json
import math
from typing import Any, Iterable

DEFAULT_DIGITS = 9


def round_floats(value: Any, digits: int = DEFAULT_DIGITS) -> Any:
    """Recursively round floats to `digits` significant digits"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Non-finite float {value!r} cannot be serialized")
        rounded = float(f"{value:.{digits}g}")
        # Normalise -0.0 so that sign noise never changes the bytes
        return 0.0 if rounded == 0 else rounded
    if isinstance(value, dict):
        return {str(k): round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    return value


def dumps(value: Any, digits: int = DEFAULT_DIGITS, indent: int | None = 2) -> str:
    """Serialize a document canonically"""
    text = json.dumps(
        round_floats(value, digits),
        sort_keys=True,
        indent=indent,
        ensure_ascii=False,
        allow_nan=False,
    )
    return text + "\n"


def dumps_line(value: Any, digits: int = DEFAULT_DIGITS) -> str:
    """Serialize one JSON Lines record canonically"""
    return json.dumps(
        round_floats(value, digits),
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def dumps_lines(values: Iterable[Any], digits: int = DEFAULT_DIGITS) -> str:
    """Serialize many records as JSON Lines"""
    return "".join(dumps_line(v, digits) + "\n" for v in values)
