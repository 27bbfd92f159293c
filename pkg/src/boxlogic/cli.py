"""Command-line front end.

Usage::

    boxlogic build    --spec world.json [--out DIR] [--format json|dot]
    boxlogic axioms   --spec world.json [--out DIR]
    boxlogic states   --spec world.json [--out DIR]
    boxlogic verify   --spec world.json [--out DIR]
    boxlogic chsh     (--pr | --behavior FILE)
    boxlogic evaluate --spec world.json --behavior FILE "[1:0, 1:0] + [1:1, 1:1]"

Exit status is 0 iff every requested check passes, 1 if a check fails and 2
on input or resource errors (a JSON error document goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import export
from .box_world import BoxWorld, build_product_witness
from .errors import BoxLogicError
from .expr import parse_event
from .logic import DEFAULT_BUDGET, is_atomistic, is_boolean, is_lattice, is_regular, verify_logic_axioms
from .polytope import ns_polytope, polytope_vertices
from .products import (
    is_set_representable,
    verify_atoms_product,
    verify_free_orthodistributive,
    verify_strong_tensor_product,
    verify_weak_conditions,
)
from .report import Check, Report
from .specfile import load_behavior, parse_spec
from .states import chsh_value, enumerate_two_valued_states, evaluate, pr_box_state

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _world(args) -> BoxWorld:
    if not args.spec:
        raise BoxLogicError("--spec is required for this command")
    return parse_spec(args.spec).world(args.budget)


class _Output:
    """Collects artifacts; writes them under --out or prints the main one."""

    def __init__(self, out: str | None):
        self.dir = Path(out) if out else None
        self.files: dict[str, str] = {}

    def add(self, name: str, text: str) -> None:
        self.files[name] = text

    def flush(self, main: str, summary: list[str]) -> None:
        if self.dir is None:
            sys.stdout.write(self.files[main])
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        for name, text in sorted(self.files.items()):
            (self.dir / name).write_text(text, encoding="utf-8")
        for line in summary:
            print(line)


def cmd_build(args) -> int:
    w = _world(args)
    out = _Output(args.out)
    fmts = [args.format] if args.format else ["json", "dot"]
    for tag, L in (("left", w.left_logic), ("right", w.right_logic), ("composite", w.logic)):
        if "json" in fmts:
            out.add(f"logic_{tag}.json", export.logic_to_json(L))
        if "dot" in fmts:
            out.add(f"logic_{tag}.dot", export.hasse_dot(L, f"logic_{tag}"))
    main = "logic_composite." + fmts[0]
    out.flush(main, [
        f"left: {len(w.left_logic)} elements, {len(w.left_logic.atom_bits)} atoms",
        f"right: {len(w.right_logic)} elements, {len(w.right_logic.atom_bits)} atoms",
        f"composite: {len(w.logic)} elements, {len(w.logic.atom_bits)} atoms",
    ])
    return EXIT_OK


def _axiom_report(w: BoxWorld) -> Report:
    rep = Report("axioms")
    for tag, L in (("left", w.left_logic), ("right", w.right_logic), ("composite", w.logic)):
        rep.extend(verify_logic_axioms(L), prefix=f"{tag}.")
    return rep


def _properties(w: BoxWorld) -> dict:
    props = {}
    for tag, L in (("left", w.left_logic), ("right", w.right_logic), ("composite", w.logic)):
        props[tag] = {
            "size": len(L),
            "atoms": len(L.atom_bits),
            "atomistic": is_atomistic(L),
            "lattice": is_lattice(L),
            "boolean": is_boolean(L),
            "regular": is_regular(L),
        }
    return props


def cmd_axioms(args) -> int:
    w = _world(args)
    rep = _axiom_report(w)
    doc = rep.to_dict()
    doc["properties"] = _properties(w)
    out = _Output(args.out)
    out.add("axioms.json", export.dumps(doc))
    out.flush("axioms.json", rep.summary_lines())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_states(args) -> int:
    w = _world(args)
    L = w.logic
    tv = enumerate_two_valued_states(L)
    P = ns_polytope(w)
    verts = polytope_vertices(P)
    det = [v for v in verts if v.is_deterministic()]
    doc = {
        "two_valued_states": [
            {"atoms": sorted(L.hex(a) for a in t.atoms), "behavior": t.behavior.to_json_dict()}
            for t in tv
        ],
        "counts": {
            "two_valued_states": len(tv),
            "vertices": len(verts),
            "deterministic_vertices": len(det),
        },
    }
    out = _Output(args.out)
    out.add("states.json", export.dumps(doc))
    out.add("polytope.json", export.dumps(P.to_dict()))
    out.flush("states.json", [
        f"two-valued states: {len(tv)}",
        f"polytope vertices: {len(verts)} ({len(det)} deterministic)",
    ])
    return EXIT_OK


def verify_world(w: BoxWorld) -> tuple[Report, dict]:
    """The full verification pipeline behind ``boxlogic verify``."""
    L, L1, L2 = w.logic, w.left_logic, w.right_logic
    wit = build_product_witness(w)
    rep = Report("verify")
    rep.extend(verify_free_orthodistributive(L, L1, L2, wit), prefix="free_orthodistributive.")
    atoms_ok = verify_atoms_product(L, L1, L2, wit)
    rep.add(Check("atoms_product", "pass" if atoms_ok else "fail", {"atoms": len(L.atom_bits)}))
    rep.extend(verify_strong_tensor_product(L, L1, L2, wit), prefix="strong_tensor_product.")
    verts = polytope_vertices(ns_polytope(w))
    rep.extend(verify_weak_conditions(L, L1, L2, wit, verts), prefix="weak_tensor_product.")
    for tag, K in (("left", L1), ("right", L2), ("composite", L)):
        ok = is_set_representable(K)
        rep.add(Check(f"set_representable.{tag}", "pass" if ok else "fail", {"members": len(K)}))
    props = _properties(w)
    props["corollary"] = {
        "atoms_product": atoms_ok,
        "components_non_boolean": not props["left"]["boolean"] and not props["right"]["boolean"],
        "all_regular": all(props[t]["regular"] for t in ("left", "right", "composite")),
    }
    return rep, props


def cmd_verify(args) -> int:
    w = _world(args)
    rep, props = verify_world(w)
    doc = rep.to_dict()
    doc["world"] = {"left": list(w.left.outcome_sizes), "right": list(w.right.outcome_sizes)}
    doc["properties"] = props
    out = _Output(args.out)
    out.add("verify.json", export.dumps(doc))
    out.flush("verify.json", rep.summary_lines())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _behavior(args, w: BoxWorld | None = None):
    if args.pr:
        return pr_box_state()
    if not args.behavior:
        raise BoxLogicError("give --behavior FILE or --pr")
    if w is None:
        return load_behavior(args.behavior)
    return load_behavior(args.behavior, w.left.outcome_sizes, w.right.outcome_sizes)


def cmd_chsh(args) -> int:
    value = chsh_value(_behavior(args))
    if args.out:
        out = _Output(args.out)
        out.add("chsh.json", export.dumps({"chsh": str(value)}))
        out.flush("chsh.json", [])
    print(value)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    w = _world(args)
    beh = _behavior(args, w)
    ev = parse_event(w, args.expression)
    print(evaluate(beh, w.logic, ev))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxlogic", description="Quantum logics of no-signaling box worlds."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--spec", help="box-world spec file (JSON or key = value text)")
        p.add_argument("--out", help="directory for output artifacts")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on logic size")
        p.add_argument("--format", choices=["json", "dot"], help="restrict build output format")
        p.add_argument("--behavior", help="behavior JSON file")
        p.add_argument("--pr", action="store_true", help="use the built-in PR box")

    for name, fn, helptext in (
        ("build", cmd_build, "emit logic JSON and Hasse DOT"),
        ("axioms", cmd_axioms, "check L1-L5 and C1-C3"),
        ("states", cmd_states, "two-valued states and polytope vertices"),
        ("verify", cmd_verify, "product-structure verification suite"),
        ("chsh", cmd_chsh, "CHSH value of a behavior"),
        ("evaluate", cmd_evaluate, "value of a behavior on an event expression"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        if name == "evaluate":
            p.add_argument("expression", help='event expression, e.g. "[1:0, 1:0] + [1:1, 1:1]"')
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoxLogicError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
