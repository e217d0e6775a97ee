"""JSON-ready views of the report types."""

from __future__ import annotations

import dataclasses
import enum
import math

from .core import IntPoly
from .polytext import coeff_list

SCHEMA_VERSION = 1


def to_jsonable(obj):
    if isinstance(obj, IntPoly):
        return {"coeffs": list(obj.coeffs), "text": str(obj), "list": coeff_list(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        out["type"] = type(obj).__name__
        return out
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


def document(kind: str, payload) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, "result": to_jsonable(payload)}
