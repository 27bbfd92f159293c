"""Phase spaces and logics of one and two black boxes.

A box with inputs ``a = 0..N-1`` and ``|U_a|`` outcomes per input has phase
space Gamma_1 = U_0 x ... x U_{N-1}.  Its logic is generated by the cylinders
[a alpha] = {x : x_a = alpha}.  The two-box logic lives on Gamma_1 x Gamma_2
and is generated by the joint questions [a alpha, b beta].

Inputs and outcomes are 0-based in the Python API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import InputError
from .logic import DEFAULT_BUDGET, ConcreteLogic, Event, EventLike, GroundSet, _bits, generate_logic


@dataclass(frozen=True)
class BoxSpec:
    outcome_sizes: tuple[int, ...]
    labels: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        sizes = tuple(self.outcome_sizes)
        object.__setattr__(self, "outcome_sizes", sizes)
        if not sizes:
            raise InputError("a box needs at least one input")
        for a, k in enumerate(sizes):
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise InputError(f"input {a + 1}: outcome count must be an integer >= 1, got {k!r}")
        if self.labels is not None:
            labels = tuple(tuple(str(s) for s in row) for row in self.labels)
            if len(labels) != len(sizes) or any(len(r) != k for r, k in zip(labels, sizes)):
                raise InputError("outcome labels must match the outcome counts")
            if any(len(set(r)) != len(r) for r in labels):
                raise InputError("outcome labels must be distinct per input")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def of(cls, spec) -> "BoxSpec":
        return spec if isinstance(spec, BoxSpec) else cls(tuple(spec))

    @property
    def input_count(self) -> int:
        return len(self.outcome_sizes)

    def outcome_index(self, a: int, outcome) -> int:
        """Map an outcome label (or integer) of input ``a`` to its index."""
        k = self.outcome_sizes[a]
        if isinstance(outcome, int) and not isinstance(outcome, bool):
            if 0 <= outcome < k:
                return outcome
            raise InputError(f"outcome {outcome} out of range for input {a + 1}")
        if self.labels is not None and outcome in self.labels[a]:
            return self.labels[a].index(outcome)
        raise InputError(f"unknown outcome {outcome!r} for input {a + 1}")


def _cylinder(ground: GroundSet, a: int, outs: Iterable[int]) -> int:
    outs = frozenset(outs)
    return ground.mask(lambda x: x[a] in outs)


def single_box_logic(spec, budget: int = DEFAULT_BUDGET) -> ConcreteLogic:
    """Logic on Gamma_1 generated by all cylinders [a alpha]."""
    spec = BoxSpec.of(spec)
    ground = GroundSet.product(spec.outcome_sizes)
    gens, labels = [], []
    for a, k in enumerate(spec.outcome_sizes):
        for alpha in range(k):
            gens.append(_cylinder(ground, a, [alpha]))
            labels.append((a, alpha))
    return generate_logic(ground, gens, budget=budget, labels=labels)


class BoxWorld:
    """The (U, V)-box world: two boxes, their phase spaces and logics.

    Logics are built lazily on first access and cached.
    """

    def __init__(self, left, right, budget: int = DEFAULT_BUDGET):
        self.left = BoxSpec.of(left)
        self.right = BoxSpec.of(right)
        self.budget = budget
        self.gamma1 = GroundSet.product(self.left.outcome_sizes)
        self.gamma2 = GroundSet.product(self.right.outcome_sizes)
        self.gamma = GroundSet.composite(self.gamma1, self.gamma2)

    def __repr__(self) -> str:
        return f"BoxWorld({list(self.left.outcome_sizes)}, {list(self.right.outcome_sizes)})"

    @property
    def contexts(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.left.input_count) for b in range(self.right.input_count)]

    @cached_property
    def left_logic(self) -> ConcreteLogic:
        return single_box_logic(self.left, self.budget)

    @cached_property
    def right_logic(self) -> ConcreteLogic:
        return single_box_logic(self.right, self.budget)

    @cached_property
    def logic(self) -> ConcreteLogic:
        gens, labels = [], []
        for a, b in self.contexts:
            for alpha in range(self.left.outcome_sizes[a]):
                for beta in range(self.right.outcome_sizes[b]):
                    gens.append(self.question_bits(a, [alpha], b, [beta]))
                    labels.append((a, b, alpha, beta))
        return generate_logic(self.gamma, gens, budget=self.budget, labels=labels)

    # bit-level embeddings; composite point index is i1 * |Gamma_2| + i2
    def lift_left(self, bits1: int) -> int:
        n2 = len(self.gamma2)
        row = (1 << n2) - 1
        out = 0
        i = 0
        while bits1:
            if bits1 & 1:
                out |= row << (i * n2)
            bits1 >>= 1
            i += 1
        return out

    def lift_right(self, bits2: int) -> int:
        n2 = len(self.gamma2)
        out = 0
        for i in range(len(self.gamma1)):
            out |= bits2 << (i * n2)
        return out

    def left_cylinder(self, a: int, outs: Iterable[int]) -> int:
        return _cylinder(self.gamma1, a, outs)

    def right_cylinder(self, b: int, outs: Iterable[int]) -> int:
        return _cylinder(self.gamma2, b, outs)

    def question_bits(self, a: int, A: Iterable[int] | None, b: int, B: Iterable[int] | None) -> int:
        if not 0 <= a < self.left.input_count:
            raise InputError(f"left input {a} out of range")
        if not 0 <= b < self.right.input_count:
            raise InputError(f"right input {b} out of range")
        A = range(self.left.outcome_sizes[a]) if A is None else list(A)
        B = range(self.right.outcome_sizes[b]) if B is None else list(B)
        for alpha in A:
            self.left.outcome_index(a, alpha)
        for beta in B:
            self.right.outcome_index(b, beta)
        return self.lift_left(self.left_cylinder(a, A)) & self.lift_right(self.right_cylinder(b, B))


def two_box_logic(left, right, budget: int = DEFAULT_BUDGET) -> ConcreteLogic:
    """Logic on Gamma_1 x Gamma_2 generated by all joint questions [a alpha, b beta]."""
    return BoxWorld(left, right, budget).logic


def question_event(w: BoxWorld, a: int, A, b: int, B) -> Event:
    """The event {(x, y) : x_a in A, y_b in B}; ``None`` stands for a full outcome set."""
    return w.logic.event(w.question_bits(a, A, b, B))


def embed_left(w: BoxWorld, p: EventLike) -> Event:
    """u: cylinder extension of a left-box event to Gamma."""
    return w.logic.event(w.lift_left(_bits(w.left_logic.event(p))))


def embed_right(w: BoxWorld, q: EventLike) -> Event:
    """v: cylinder extension of a right-box event to Gamma."""
    return w.logic.event(w.lift_right(_bits(w.right_logic.event(q))))


@dataclass
class ProductWitness:
    """Explicit tables for u, v and Phi, keyed and valued by event bit masks."""

    u: dict[int, int] = field(default_factory=dict)
    v: dict[int, int] = field(default_factory=dict)
    phi: dict[tuple[int, int], int] = field(default_factory=dict)

    def copy(self) -> "ProductWitness":
        return ProductWitness(dict(self.u), dict(self.v), dict(self.phi))


def build_product_witness(w: BoxWorld) -> ProductWitness:
    L = w.logic
    u = {p: embed_left(w, p).bits for p in w.left_logic.bits}
    v = {q: embed_right(w, q).bits for q in w.right_logic.bits}
    phi = {}
    for p, up in u.items():
        for q, vq in v.items():
            phi[(p, q)] = L.event(up & vq).bits
    return ProductWitness(u, v, phi)
