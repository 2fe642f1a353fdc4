"""
Input validation utilities
"""
import math
from typing import Mapping, Sequence

from shadowrca.core.error_handling.errors import SchemaMismatchError, ValidationError


def validate_member_id(member_id: str) -> str:
    """Validate a member id"""
    if not isinstance(member_id, str) or not member_id.strip():
        raise ValidationError("Member id cannot be empty")
    return member_id


def validate_attributes(
    attrs: Mapping[str, float],
    fields: Sequence[str],
    member_id: str | None = None,
) -> dict[str, float]:
    """Validate an attribute vector against a schema.

    Returns:
        A new dict ordered like the schema with float values
    """
    if set(attrs) != set(fields):
        missing = sorted(set(fields) - set(attrs))
        extra = sorted(set(attrs) - set(fields))
        raise SchemaMismatchError(
            f"Attribute fields do not match schema (missing={missing}, extra={extra})",
            member_id,
        )

    result: dict[str, float] = {}
    for name in fields:
        value = attrs[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaMismatchError(f"Attribute '{name}' is not a number", member_id)
        value = float(value)
        if not math.isfinite(value):
            raise SchemaMismatchError(f"Attribute '{name}' is not finite", member_id)
        result[name] = value
    return result


def validate_unit_interval(value: float, name: str) -> float:
    """Validate a value in [0, 1]"""
    if not (0.0 <= value <= 1.0):
        raise ValidationError(f"{name} must be within [0, 1], got {value}")
    return value
