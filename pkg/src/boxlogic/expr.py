"""Event expressions in box-world notation.

Grammar (inputs are 1-based, outcomes are 0-based integers or labels)::

    expr     := term ("+" term)*
    term     := "~" term | "(" expr ")" | question
    question := "[" side "," side "]"
    side     := "*" | INPUT ":" outcomes
    outcomes := OUTCOME | "{" [OUTCOME ("," OUTCOME)*] "}"

``[1:0, 2:{0,1}]`` is the question [a=1 in {0}, b=2 in {0,1}], ``*`` is the
whole phase space of that box, ``+`` is the union of disjoint events and
``~`` the complement.
"""

from __future__ import annotations

import re

from .box_world import BoxWorld
from .errors import InputError, PreconditionError
from .logic import Event

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][\w\-]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern matches any character
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "[]{},:+~()*":
                raise InputError(f"unexpected character {ch!r} at position {m.start(3)}")
            out.append((ch, ch, m.start(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, w: BoxWorld, text: str):
        self.w = w
        self.toks = _tokenize(text)
        self.i = 0
        self.full = w.gamma.full

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind: str | None = None) -> tuple[str, str, int]:
        if self.i >= len(self.toks):
            raise InputError(f"unexpected end of expression; expected {kind or 'a token'}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise InputError(f"expected {kind!r} at position {tok[2]}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self) -> int:
        acc = self.term()
        while self.peek() == "+":
            pos = self.take("+")[2]
            nxt = self.term()
            if acc & nxt:
                raise PreconditionError(f"'+' at position {pos} joins overlapping events")
            acc |= nxt
        return acc

    def term(self) -> int:
        k = self.peek()
        if k == "~":
            self.take("~")
            return self.full ^ self.term()
        if k == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        return self.question()

    def outcome(self, spec, a: int):
        kind, val, pos = self.take()
        if kind == "int":
            return spec.outcome_index(a, int(val))
        if kind == "name":
            return spec.outcome_index(a, val)
        raise InputError(f"expected an outcome at position {pos}, got {val!r}")

    def side(self, spec, name: str) -> tuple[int, list[int]] | None:
        if self.peek() == "*":
            self.take("*")
            return None
        kind, val, pos = self.take("int")
        a = int(val) - 1
        if not 0 <= a < spec.input_count:
            raise InputError(f"{name} input {val} out of range at position {pos}")
        self.take(":")
        if self.peek() == "{":
            self.take("{")
            outs = []
            if self.peek() != "}":
                outs.append(self.outcome(spec, a))
                while self.peek() == ",":
                    self.take(",")
                    outs.append(self.outcome(spec, a))
            self.take("}")
        else:
            outs = [self.outcome(spec, a)]
        return a, outs

    def question(self) -> int:
        self.take("[")
        left = self.side(self.w.left, "left")
        self.take(",")
        right = self.side(self.w.right, "right")
        self.take("]")
        lbits = self.w.gamma1.full if left is None else self.w.left_cylinder(*left)
        rbits = self.w.gamma2.full if right is None else self.w.right_cylinder(*right)
        return self.w.lift_left(lbits) & self.w.lift_right(rbits)


def parse_event(w: BoxWorld, text: str) -> Event:
    """Parse ``text`` into a member of the world's two-box logic."""
    p = _Parser(w, text)
    bits = p.expr()
    if p.i != len(p.toks):
        tok = p.toks[p.i]
        raise InputError(f"unexpected {tok[1]!r} at position {tok[2]}")
    ev = w.logic.get(bits)
    if ev is None:
        raise InputError(f"expression {text!r} does not denote a member of the logic")
    return ev
