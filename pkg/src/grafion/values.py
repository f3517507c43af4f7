"""Property value semantics.

Values stored on nodes, edges, and result rows are plain Python scalars
drawn from five tags: text (str), integer (int), float, boolean (bool),
and null (None).  Storage identity is tag-then-payload, so integer 3 and
float 3.0 are distinct keys in an index, while comparison operators
coerce between the two numeric tags.  NaN floats are rejected at the
boundary so comparisons stay total.
"""

from __future__ import annotations

import math
from typing import Any

from .errors import BadValue

TAG_NULL = "null"
TAG_BOOLEAN = "boolean"
TAG_INTEGER = "integer"
TAG_FLOAT = "float"
TAG_TEXT = "text"

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def check_value(value: Any) -> Any:
    """Validate a scalar at the storage boundary and return it.

    Raises BadValue for unsupported types, NaN/infinite floats, and
    integers outside the signed 64-bit range.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        if not (_INT64_MIN <= value <= _INT64_MAX):
            raise BadValue(f"integer out of 64-bit range: {value}")
        return value
    if isinstance(value, float):
        if math.isnan(value):
            raise BadValue("NaN floats are rejected")
        if math.isinf(value):
            raise BadValue("infinite floats are rejected")
        return value
    raise BadValue(f"unsupported property value type: {type(value).__name__}")


def check_properties(properties: dict) -> dict:
    """Validate a whole property map (keys text, values scalar)."""
    out = {}
    for key, value in properties.items():
        if not isinstance(key, str) or not key:
            raise BadValue(f"property keys must be nonempty text, got {key!r}")
        out[key] = check_value(value)
    return out


def value_tag(value: Any) -> str:
    if value is None:
        return TAG_NULL
    if isinstance(value, bool):
        return TAG_BOOLEAN
    if isinstance(value, int):
        return TAG_INTEGER
    if isinstance(value, float):
        return TAG_FLOAT
    if isinstance(value, str):
        return TAG_TEXT
    raise BadValue(f"unsupported property value type: {type(value).__name__}")


def storage_key(value: Any) -> tuple:
    """Hashable identity key: distinguishes 3 from 3.0 and True from 1."""
    return (value_tag(value), value)


def values_equal(a: Any, b: Any) -> bool:
    """Storage identity: tag first, then payload."""
    return storage_key(a) == storage_key(b)


def properties_equal(a: dict, b: dict) -> bool:
    if a.keys() != b.keys():
        return False
    return all(values_equal(a[k], b[k]) for k in a)


def try_compare(a: Any, b: Any):
    """Three-way comparison for query operators.

    Returns -1/0/1, or None when the pair is incomparable (nulls, or
    mixed tags other than integer vs float).
    """
    if a is None or b is None:
        return None
    a_num = isinstance(a, (int, float)) and not isinstance(a, bool)
    b_num = isinstance(b, (int, float)) and not isinstance(b, bool)
    if a_num and b_num:
        return (a > b) - (a < b)
    if isinstance(a, bool) and isinstance(b, bool):
        return (a > b) - (a < b)
    if isinstance(a, str) and isinstance(b, str):
        return (a > b) - (a < b)
    return None
