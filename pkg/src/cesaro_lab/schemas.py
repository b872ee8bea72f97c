"""JSON schemas for the workbench objects and deterministic rendering.

Wire formats
    TaggedVector   {"indices": [...], "coeffs": [...]}
    SpaceSpec      {"space": "lp", "p": 2} | {"space": "finite_l1", "n": 3}
                   | {"space": "c"} | {"space": "cesaro_sum", "p": 2,
                      "components": [...]}
    StepFunction   {"breakpoints": [0, ..., 1], "cells": [...]} where a
                   cell is a number (scalar mode) or a TaggedVector
                   object (vector mode; pair with a SpaceSpec)
    SumElement     {"p": 2, "components": [{"slot": 1, "vector": {...}},
                    ...], "stack": SpaceSpec | [SpaceSpec, ...]}
    family         {"profile": StepFunction, "space": SpaceSpec,
                    "block": TaggedVector, "offset": 1, "stride": 1}
    slot family    {"block": TaggedVector, "space": SpaceSpec, "p": 2,
                    "offset": 1, "stride": 1}

Rendering uses 17 significant decimal digits for every float, which
round-trips doubles losslessly, and fixed key order, so equal objects
always serialize to identical bytes.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .harness import FunctionShiftFamily
from .model import (
    Partition,
    SchemaError,
    SpaceSpec,
    StepFunction,
    TaggedVector,
)
from .vector import SlotShiftFamily, SumElement


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def format_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(float(x), ".17g")


def render_json(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON text with 17-significant-digit floats.

    Dict keys keep insertion order; callers build reports with a fixed
    key layout, so equal reports render to identical bytes.
    """
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return repr(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [render_json(v, indent + 2) for v in obj]
        return "[\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{json.dumps(str(k))}: {render_json(v, indent + 2)}" for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(inner + it for it in items) + "\n" + pad + "}"
    raise SchemaError(f"cannot serialize object of type {type(obj).__name__}")


def render_csv(rows: list[tuple]) -> str:
    """Comma-separated rows with the same float formatting as JSON."""
    out = []
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, float):
                cells.append(format(cell, ".17g"))
            else:
                cells.append(str(cell))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# parsing / emitting of the domain objects
# ---------------------------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def tagged_to_json(v: TaggedVector) -> dict:
    return {
        "indices": [i for i, _ in v.entries],
        "coeffs": [c for _, c in v.entries],
    }


def tagged_from_json(obj: Any) -> TaggedVector:
    _require(isinstance(obj, dict), "vector must be an object")
    _require("indices" in obj and "coeffs" in obj, "vector needs 'indices' and 'coeffs'")
    idx, coeffs = obj["indices"], obj["coeffs"]
    _require(isinstance(idx, list) and isinstance(coeffs, list), "vector fields must be arrays")
    _require(len(idx) == len(coeffs), "'indices' and 'coeffs' must have equal length")
    try:
        return TaggedVector.from_pairs(zip((int(i) for i in idx), (float(c) for c in coeffs)))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad vector: {exc}") from exc


def space_to_json(space: SpaceSpec) -> dict:
    if space.kind == "lp":
        return {"space": "lp", "p": space.p}
    if space.kind == "finite_l1":
        return {"space": "finite_l1", "n": space.n}
    if space.kind == "c":
        return {"space": "c"}
    return {
        "space": "cesaro_sum",
        "p": space.p,
        "components": [space_to_json(c) for c in (space.components or ())],
    }


def space_from_json(obj: Any) -> SpaceSpec:
    _require(isinstance(obj, dict) and "space" in obj, "space must be an object with a 'space' key")
    kind = obj["space"]
    try:
        if kind == "lp":
            return SpaceSpec.lp(float(obj["p"]))
        if kind == "finite_l1":
            return SpaceSpec.finite_l1(int(obj["n"]))
        if kind == "c":
            return SpaceSpec.c_space()
        if kind == "cesaro_sum":
            comps = [space_from_json(c) for c in obj.get("components", [])]
            return SpaceSpec.cesaro_sum(float(obj["p"]), comps)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad space: {exc}") from exc
    raise SchemaError(f"unknown space kind {kind!r}")


def step_to_json(f: StepFunction) -> dict:
    if f.is_scalar:
        cells: list = list(f.values)
    else:
        cells = [tagged_to_json(v) for v in f.values]
    return {"breakpoints": list(f.partition.breakpoints), "cells": cells}


def step_from_json(obj: Any, space: SpaceSpec | None = None) -> StepFunction:
    _require(isinstance(obj, dict), "step function must be an object")
    _require("breakpoints" in obj and "cells" in obj, "step function needs 'breakpoints' and 'cells'")
    bps, cells = obj["breakpoints"], obj["cells"]
    _require(isinstance(bps, list) and isinstance(cells, list), "step function fields must be arrays")
    try:
        part = Partition(tuple(float(t) for t in bps))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad breakpoints: {exc}") from exc
    _require(len(cells) == part.cell_count, "one cell value per partition cell required")
    scalar = all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in cells)
    try:
        if scalar:
            return StepFunction(part, tuple(float(c) for c in cells))
        vals = tuple(tagged_from_json(c) for c in cells)
        _require(space is not None, "vector-mode step function needs a space")
        return StepFunction(part, vals, space)
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"bad step function: {exc}") from exc


def sum_to_json(x: SumElement) -> dict:
    stack = x.stack
    return {
        "p": x.p.p,
        "components": [
            {"slot": slot, "vector": tagged_to_json(vec)} for slot, vec in x.components
        ],
        "stack": space_to_json(stack) if isinstance(stack, SpaceSpec)
        else [space_to_json(s) for s in stack],
    }


def sum_from_json(obj: Any) -> SumElement:
    _require(isinstance(obj, dict) and "p" in obj, "sum element must be an object with 'p'")
    comps = []
    for entry in obj.get("components", []):
        _require(isinstance(entry, dict) and "slot" in entry and "vector" in entry,
                 "component needs 'slot' and 'vector'")
        comps.append((int(entry["slot"]), tagged_from_json(entry["vector"])))
    stack_obj = obj.get("stack", {"space": "lp", "p": 2})
    if isinstance(stack_obj, list):
        stack: SpaceSpec | tuple[SpaceSpec, ...] = tuple(space_from_json(s) for s in stack_obj)
    else:
        stack = space_from_json(stack_obj)
    try:
        return SumElement(float(obj["p"]), tuple(comps), stack)
    except Exception as exc:
        raise SchemaError(f"bad sum element: {exc}") from exc


def family_to_json(fam: FunctionShiftFamily) -> dict:
    return {
        "profile": step_to_json(fam.profile),
        "space": space_to_json(fam.space),
        "block": tagged_to_json(fam.block),
        "offset": fam.offset,
        "stride": fam.stride,
    }


def family_from_json(obj: Any) -> FunctionShiftFamily:
    _require(isinstance(obj, dict), "family must be an object")
    for key in ("profile", "space", "block"):
        _require(key in obj, f"family needs '{key}'")
    try:
        return FunctionShiftFamily(
            profile=step_from_json(obj["profile"]),
            space=space_from_json(obj["space"]),
            block=tagged_from_json(obj["block"]),
            offset=int(obj.get("offset", 0)),
            stride=int(obj.get("stride", 1)),
        )
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"bad family: {exc}") from exc


def slot_family_to_json(fam: SlotShiftFamily) -> dict:
    return {
        "block": tagged_to_json(fam.block),
        "space": space_to_json(fam.space),
        "p": fam.p.p,
        "offset": fam.offset,
        "stride": fam.stride,
    }


def slot_family_from_json(obj: Any) -> SlotShiftFamily:
    _require(isinstance(obj, dict), "slot family must be an object")
    for key in ("block", "space", "p"):
        _require(key in obj, f"slot family needs '{key}'")
    try:
        return SlotShiftFamily(
            block=tagged_from_json(obj["block"]),
            space=space_from_json(obj["space"]),
            p=float(obj["p"]),
            offset=int(obj.get("offset", 0)),
            stride=int(obj.get("stride", 1)),
        )
    except SchemaError:
        raise
    except Exception as exc:
        raise SchemaError(f"bad slot family: {exc}") from exc


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
