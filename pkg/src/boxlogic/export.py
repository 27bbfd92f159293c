"""JSON and Graphviz DOT serialization of logics."""

from __future__ import annotations

import json
from typing import Any

from .logic import ConcreteLogic


def _factors(L: ConcreteLogic) -> Any:
    f = L.ground.factors
    if f is None:
        return None
    if L.ground.is_composite:
        return {"left": list(f[0]), "right": list(f[1])}
    return list(f)


def _label(label) -> Any:
    return list(label) if isinstance(label, tuple) else label


def logic_to_dict(L: ConcreteLogic) -> dict[str, Any]:
    return {
        "ground_size": len(L.ground),
        "factors": _factors(L),
        "size": len(L),
        "delta": [L.hex(b) for b in L.bits],
        "atoms": list(L.atom_index),
        "generators": sorted(
            ([_label(lab), L.hex(b)] for lab, b in L.generators.items()), key=repr
        ),
    }


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def logic_to_json(L: ConcreteLogic) -> str:
    return dumps(logic_to_dict(L))


def hasse_covers(L: ConcreteLogic) -> list[tuple[int, int]]:
    """Pairs (i, j) of member indices with j covering i."""
    bits = L.bits
    out = []
    for j, q in enumerate(bits):
        below = [i for i, p in enumerate(bits) if p != q and p & ~q == 0]
        for i in below:
            p = bits[i]
            if not any(
                k != i and p & ~bits[k] == 0 for k in below
            ):
                out.append((i, j))
    return sorted(out)


def hasse_dot(L: ConcreteLogic, name: str = "logic") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i, b in enumerate(L.bits):
        lines.append(f'  n{i} [label="{L.hex(b)}"];')
    for i, j in hasse_covers(L):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
