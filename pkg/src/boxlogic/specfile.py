"""Box-world spec files and behavior files.

Spec files are JSON::

    {"left": {"inputs": [2, 2]}, "right": {"inputs": [2, 2]}}

or key-value text, one ``key = value`` per line with JSON values::

    left.inputs = [2, 2]
    right.inputs = [2, 2]
    right.labels = [["up", "down"], ["up", "down"]]

Behavior files map 1-based ``"a,b"`` context keys to ``[alpha][beta]`` arrays
(or flat row-major arrays) of rationals written as ``"1/2"``, integers or
``[p, q]`` pairs.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import NamedTuple

from .box_world import BoxSpec, BoxWorld
from .errors import InputError, SpecError
from .logic import DEFAULT_BUDGET
from .states import Behavior, behavior_from_table


class WorldSpec(NamedTuple):
    left: BoxSpec
    right: BoxSpec

    def world(self, budget: int = DEFAULT_BUDGET) -> BoxWorld:
        return BoxWorld(self.left, self.right, budget)


def _parse_kv(text: str) -> dict:
    data: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        parts = key.split(".")
        if len(parts) != 2 or not all(parts):
            raise SpecError(f"line {lineno}: key must look like 'left.inputs', got {key!r}")
        try:
            value = json.loads(val)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {lineno}: field {key}: {exc.msg}") from None
        data.setdefault(parts[0], {})[parts[1]] = value
    return data


def _box(data: dict, side: str) -> BoxSpec:
    if side not in data:
        raise SpecError(f"missing field {side!r}")
    box = data[side]
    if not isinstance(box, dict):
        raise SpecError(f"field {side!r} must be an object")
    unknown = set(box) - {"inputs", "labels"}
    if unknown:
        raise SpecError(f"unknown field {side}.{sorted(unknown)[0]}")
    if "inputs" not in box:
        raise SpecError(f"missing field '{side}.inputs'")
    inputs = box["inputs"]
    if not isinstance(inputs, list) or not inputs:
        raise SpecError(f"field {side}.inputs must be a non-empty list of outcome counts")
    for i, k in enumerate(inputs):
        if not isinstance(k, int) or isinstance(k, bool):
            raise SpecError(f"field {side}.inputs[{i}] must be an integer, got {k!r}")
        if k < 1:
            raise SpecError(f"field {side}.inputs[{i}]: outcome count must be >= 1, got {k}")
    try:
        return BoxSpec(tuple(inputs), box.get("labels"))
    except InputError as exc:
        raise SpecError(f"field {side}: {exc}") from None


def parse_spec_text(text: str) -> WorldSpec:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        data = _parse_kv(text)
    if not isinstance(data, dict):
        raise SpecError("spec must be an object with 'left' and 'right'")
    unknown = set(data) - {"left", "right"}
    if unknown:
        raise SpecError(f"unknown field {sorted(unknown)[0]!r}")
    return WorldSpec(_box(data, "left"), _box(data, "right"))


def parse_spec(path: str | Path) -> WorldSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc.strerror}") from None
    return parse_spec_text(text)


def behavior_from_json(data, left_sizes=None, right_sizes=None) -> Behavior:
    if not isinstance(data, dict):
        raise SpecError("behavior file must be an object mapping 'a,b' to tables")
    raw = {}
    for key, table in data.items():
        try:
            a, b = (int(s) for s in str(key).split(","))
        except ValueError:
            raise SpecError(f"bad context key {key!r}; expected 'a,b' with 1-based inputs") from None
        if a < 1 or b < 1:
            raise SpecError(f"context key {key!r}: inputs are 1-based")
        raw[(a - 1, b - 1)] = table
    return behavior_from_table(raw, left_sizes, right_sizes)


def load_behavior(path: str | Path, left_sizes=None, right_sizes=None) -> Behavior:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecError(f"cannot read behavior file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return behavior_from_json(data, left_sizes, right_sizes)
