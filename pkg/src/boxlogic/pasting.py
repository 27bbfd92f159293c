"""0-1 pastings of Boolean blocks and isomorphism of finite orthoposets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InputError, ResourceError
from .logic import ConcreteLogic, Event, GroundSet

ISO_BUDGET = 20_000


@dataclass(frozen=True)
class OrthoPoset:
    """An abstract finite poset with an orthocomplementation.

    Elements are ``0 .. size-1``; ``up[i]`` is the bit mask of all ``j`` with
    ``i <= j`` and ``comp[i]`` is the index of the complement of ``i``.
    """

    up: tuple[int, ...]
    comp: tuple[int, ...]
    names: tuple = ()

    @property
    def size(self) -> int:
        return len(self.up)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    @classmethod
    def from_logic(cls, L: ConcreteLogic) -> "OrthoPoset":
        bits = L.bits
        up = []
        for p in bits:
            m = 0
            for j, q in enumerate(bits):
                if p & ~q == 0:
                    m |= 1 << j
            up.append(m)
        comp = []
        for p in bits:
            c = L.get(L.full ^ p)
            if c is None:
                raise InputError("logic is not closed under complement")
            comp.append(L.index(c))
        return cls(tuple(up), tuple(comp), tuple(L.hex(b) for b in bits))


def _check_boolean_block(block: ConcreteLogic) -> None:
    if len(block) != 1 << len(block.ground):
        raise InputError(
            f"pasting block over {len(block.ground)} points has {len(block)} elements; "
            "expected a full powerset"
        )


def zero_one_pasting(blocks: Sequence[ConcreteLogic]) -> ConcreteLogic:
    """Concrete realization of the 0-1 pasting of Boolean powersets.

    The ground set is the product of the block ground sets.  Members are the
    empty set, the whole space and every cylinder {x : x_a in A} for a proper
    nonempty member A of block a.  Built directly, without closure.
    """
    if not blocks:
        raise InputError("zero_one_pasting needs at least one block")
    for b in blocks:
        _check_boolean_block(b)
    ground = GroundSet.product([len(b.ground) for b in blocks])
    events = [Event(0, ("empty",)), Event(ground.full, ("complement", 0))]
    gens = {}
    for a, block in enumerate(blocks):
        k = len(block.ground)
        for A in block.bits:
            if A == 0 or A == block.full:
                continue
            outs = frozenset(i for i in range(k) if A >> i & 1)
            cyl = ground.mask(lambda x, a=a, outs=outs: x[a] in outs)
            events.append(Event(cyl, ("cylinder", a, tuple(sorted(outs)))))
            if len(outs) == 1:
                gens[(a, next(iter(outs)))] = cyl
    return ConcreteLogic(ground, events, gens)


def pasting_orthoposet(blocks: Sequence[ConcreteLogic]) -> OrthoPoset:
    """Abstract pasting: disjoint union of the blocks with all 0s and all 1s identified."""
    if not blocks:
        raise InputError("zero_one_pasting needs at least one block")
    for b in blocks:
        _check_boolean_block(b)
    names: list = ["0", "1"]
    elems: list[tuple[int, int]] = []
    for a, block in enumerate(blocks):
        for A in block.bits:
            if A != 0 and A != block.full:
                elems.append((a, A))
                names.append((a, A))
    pos = {e: i + 2 for i, e in enumerate(elems)}
    n = len(elems) + 2
    everything = (1 << n) - 1
    up = [everything, 1 << 1]
    comp = [1, 0]
    for a, A in elems:
        m = 1 << 1
        for (b, B), j in pos.items():
            if b == a and A & ~B == 0:
                m |= 1 << j
        up.append(m)
        comp.append(pos[(a, blocks[a].full ^ A)])
    return OrthoPoset(tuple(up), tuple(comp), tuple(names))


Orthoish = Union[ConcreteLogic, OrthoPoset]


def _as_poset(x: Orthoish) -> OrthoPoset:
    return x if isinstance(x, OrthoPoset) else OrthoPoset.from_logic(x)


def are_isomorphic(L: Orthoish, K: Orthoish, budget: int = ISO_BUDGET) -> bool:
    """True iff an order- and complement-preserving bijection exists.

    Backtracking search; elements are matched only to elements with the same
    (up-degree, down-degree) profile, atoms first.
    """
    if isinstance(L, ConcreteLogic) and isinstance(K, ConcreteLogic) and len(L) != len(K):
        return False
    P, Q = _as_poset(L), _as_poset(K)
    n = P.size
    if n != Q.size:
        return False
    if n > budget:
        raise ResourceError(f"isomorphism search over {n} elements exceeds budget {budget}")

    def profiles(X: OrthoPoset) -> list[tuple[int, int]]:
        down = [0] * X.size
        for i, m in enumerate(X.up):
            j = 0
            while m:
                if m & 1:
                    down[j] |= 1 << i
                m >>= 1
                j += 1
        return [(X.up[i].bit_count(), down[i].bit_count()) for i in range(X.size)]

    pp, qp = profiles(P), profiles(Q)
    if sorted(pp) != sorted(qp):
        return False

    by_profile: dict[tuple[int, int], list[int]] = {}
    for j, pr in enumerate(qp):
        by_profile.setdefault(pr, []).append(j)
    # atoms have down-degree 2 (themselves and 0)
    order = sorted(range(n), key=lambda i: (pp[i][1] != 2, pp[i][1], -pp[i][0], i))
    fwd = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        if pp[i] != qp[j]:
            return False
        for i2 in range(n):
            j2 = fwd[i2]
            if j2 < 0:
                continue
            if P.leq(i, i2) != Q.leq(j, j2) or P.leq(i2, i) != Q.leq(j2, j):
                return False
        return True

    def assign(i: int, j: int) -> list[int]:
        """Map i->j and comp(i)->comp(j); returns assigned indices or [] on conflict."""
        ci, cj = P.comp[i], Q.comp[j]
        if (ci == i) != (cj == j):
            return []
        if fwd[ci] >= 0 and fwd[ci] != cj:
            return []
        if not consistent(i, j):
            return []
        fwd[i], used[j] = j, True
        done = [i]
        if fwd[ci] < 0:
            if used[cj] or not consistent(ci, cj):
                fwd[i], used[j] = -1, False
                return []
            fwd[ci], used[cj] = cj, True
            done.append(ci)
        return done

    def rec(k: int) -> bool:
        while k < n and fwd[order[k]] >= 0:
            k += 1
        if k == n:
            return True
        i = order[k]
        for j in by_profile[pp[i]]:
            if used[j]:
                continue
            done = assign(i, j)
            if not done:
                continue
            if rec(k + 1):
                return True
            for d in done:
                used[fwd[d]] = False
                fwd[d] = -1
        return False

    return rec(0)
