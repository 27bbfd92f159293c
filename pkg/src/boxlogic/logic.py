"""Finite concrete quantum logics.

A concrete logic is a family of subsets of a finite ground set that contains
the empty set and is closed under set complement and unions of pairwise
disjoint members.  Subsets are stored as Python ints used as bit-vectors:
bit ``i`` is set iff point ``i`` of the ground set belongs to the event.

All query functions take the logic as first argument and accept members either
as :class:`Event` objects or as raw bit masks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence, Union

from .errors import InputError, InvariantError, PreconditionError, ResourceError
from .report import Report, check

DEFAULT_BUDGET = 1 << 20


class GroundSet:
    """An enumerated finite set of points.

    ``factors`` is ``None`` for a plain set, a tuple of outcome counts for a
    product space (points are tuples, first coordinate most significant), or a
    pair of such tuples for a composite space whose points are pairs.
    """

    def __init__(self, points: Sequence[Hashable], factors=None, left=None, right=None):
        self.points = tuple(points)
        self.factors = factors
        self.left = left
        self.right = right
        self._index = {pt: i for i, pt in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise InputError("ground set points must be distinct")

    @classmethod
    def plain(cls, n: int) -> "GroundSet":
        return cls(range(n))

    @classmethod
    def product(cls, sizes: Sequence[int]) -> "GroundSet":
        sizes = tuple(int(k) for k in sizes)
        if any(k < 1 for k in sizes):
            raise InputError(f"factor sizes must be positive, got {sizes}")
        return cls(itertools.product(*(range(k) for k in sizes)), factors=sizes)

    @classmethod
    def composite(cls, left: "GroundSet", right: "GroundSet") -> "GroundSet":
        pts = [(x, y) for x in left.points for y in right.points]
        return cls(pts, factors=(left.factors, right.factors), left=left, right=right)

    @property
    def is_composite(self) -> bool:
        return self.left is not None

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"GroundSet(size={len(self)}, factors={self.factors})"

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def encode(self, point) -> int:
        try:
            return self._index[point]
        except KeyError:
            raise InputError(f"{point!r} is not a point of this ground set") from None

    def decode(self, index: int):
        if not 0 <= index < len(self.points):
            raise InputError(f"point index {index} out of range")
        return self.points[index]

    def mask(self, predicate) -> int:
        """Bit mask of the points satisfying ``predicate``."""
        m = 0
        for i, pt in enumerate(self.points):
            if predicate(pt):
                m |= 1 << i
        return m


@dataclass(frozen=True, order=True)
class Event:
    """A subset of a ground set, with a record of how it was constructed.

    The certificate is one of ``("empty",)``, ``("generator", label)``,
    ``("complement", bits)``, ``("union", bits, bits)`` or ``("given",)`` and
    takes no part in equality.
    """

    bits: int
    cert: tuple = field(default=("given",), compare=False, repr=False)

    def members(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __len__(self) -> int:
        return self.bits.bit_count()


EventLike = Union[Event, int]


def _bits(p: EventLike) -> int:
    return p.bits if isinstance(p, Event) else int(p)


def hex_bits(bits: int, n: int) -> str:
    width = max(1, math.ceil(n / 4))
    return format(bits, f"0{width}x")


class ConcreteLogic:
    """A finite family of events over a ground set, ordered by inclusion.

    Instances are immutable once built.  ``generators`` maps generator labels
    (for box worlds ``(a, alpha)`` or ``(a, b, alpha, beta)``) to the event
    they name; ``labels`` is the inverse map restricted to the first label of
    each distinct event.
    """

    def __init__(self, ground: GroundSet, events: Iterable[Event], generators=None):
        self.ground = ground
        full = ground.full
        uniq: dict[int, Event] = {}
        for e in events:
            if not isinstance(e, Event):
                e = Event(int(e))
            if e.bits < 0 or e.bits & ~full:
                raise InputError(f"event {e.bits:#x} is not a subset of the ground set")
            uniq.setdefault(e.bits, e)
        self.events: tuple[Event, ...] = tuple(sorted(uniq.values()))
        self.bits: tuple[int, ...] = tuple(e.bits for e in self.events)
        self._index = {b: i for i, b in enumerate(self.bits)}
        self.generators: dict = dict(generators or {})
        self.labels: dict[int, Hashable] = {}
        for label, b in self.generators.items():
            self.labels.setdefault(b, label)
        self._covers: dict[int, tuple[int, ...]] = {}

    @classmethod
    def from_family(cls, ground: GroundSet, sets: Iterable[EventLike], generators=None):
        """Wrap an explicit family without closing it (used for hand-built examples)."""
        return cls(ground, (Event(_bits(s)) for s in sets), generators)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def __contains__(self, p) -> bool:
        return _bits(p) in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConcreteLogic)
            and self.ground == other.ground
            and self.bits == other.bits
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ConcreteLogic(|ground|={len(self.ground)}, |delta|={len(self)})"

    @property
    def full(self) -> int:
        return self.ground.full

    def index(self, p: EventLike) -> int:
        try:
            return self._index[_bits(p)]
        except KeyError:
            raise InputError(f"event {self.hex(_bits(p))} is not a member of the logic") from None

    def get(self, bits: int) -> Event | None:
        i = self._index.get(bits)
        return None if i is None else self.events[i]

    def event(self, p: EventLike) -> Event:
        return self.events[self.index(p)]

    def hex(self, bits: int) -> str:
        return hex_bits(bits, len(self.ground))

    @property
    def bottom(self) -> Event:
        return self.event(0)

    @property
    def top(self) -> Event:
        return self.event(self.full)

    @cached_property
    def atom_bits(self) -> tuple[int, ...]:
        found: list[int] = []
        for b in sorted((b for b in self.bits if b), key=lambda b: (b.bit_count(), b)):
            if not any(a & ~b == 0 for a in found):
                found.append(b)
        return tuple(sorted(found))

    @cached_property
    def atom_index(self) -> tuple[int, ...]:
        return tuple(self._index[a] for a in self.atom_bits)

    def atom_cover(self, p: EventLike) -> tuple[int, ...]:
        """A canonical decomposition of ``p`` into pairwise disjoint atoms."""
        b = _bits(p)
        self.index(b)
        if b not in self._covers:
            cover = next(exact_covers(self, b), None)
            if cover is None:
                raise InvariantError(
                    f"event {self.hex(b)} has no decomposition into disjoint atoms"
                )
            self._covers[b] = cover
        return self._covers[b]


def generate_logic(
    ground: GroundSet,
    generators: Sequence[EventLike],
    budget: int = DEFAULT_BUDGET,
    labels: Sequence[Hashable] | None = None,
) -> ConcreteLogic:
    """Smallest concrete logic over ``ground`` containing ``generators``.

    Runs a worklist until the family is closed under complement and binary
    unions of disjoint members; finite unions follow by induction.  Raises
    :class:`ResourceError` once more than ``budget`` members are produced.
    """
    full = ground.full
    if labels is not None and len(labels) != len(generators):
        raise InputError("labels must be parallel to generators")
    gen_bits = []
    for g in generators:
        b = _bits(g)
        if b < 0 or b & ~full:
            raise InputError(f"generator {b:#x} is not a subset of the ground set")
        gen_bits.append(b)

    certs: dict[int, tuple] = {}
    work: list[int] = []

    def add(b: int, cert: tuple) -> None:
        if b in certs:
            return
        if len(certs) >= budget:
            raise ResourceError(f"logic closure exceeded the budget of {budget} elements")
        certs[b] = cert
        work.append(b)

    add(0, ("empty",))
    add(full, ("complement", 0))
    for i, b in enumerate(gen_bits):
        add(b, ("generator", labels[i] if labels is not None else i))

    done: list[int] = []
    pos = 0
    # FIFO keeps construction certificates shallow and deterministic
    while pos < len(work):
        x = work[pos]
        pos += 1
        add(full ^ x, ("complement", x))
        for y in done:
            if not x & y:
                add(x | y, ("union", y, x))
        done.append(x)

    gens = {}
    if labels is not None:
        for lab, b in zip(labels, gen_bits):
            gens[lab] = b
    return ConcreteLogic(ground, (Event(b, c) for b, c in certs.items()), gens)


def generate_sublogic(L: ConcreteLogic, seeds: Iterable[EventLike], meets: bool = True) -> ConcreteLogic:
    """Smallest subfamily of L containing ``seeds`` closed under the logic operations.

    Always closes under complement and disjoint union.  With ``meets`` it also
    closes under meets of compatible pairs, which in L are set intersections.
    """
    idx = L._index
    full = L.full
    fam: dict[int, tuple] = {}
    work: list[int] = []

    def add(b: int, cert: tuple) -> None:
        if b not in fam:
            if b not in idx:
                raise InvariantError(f"closure left the logic at {L.hex(b)}")
            fam[b] = cert
            work.append(b)

    add(0, ("empty",))
    add(full, ("complement", 0))
    for s in seeds:
        add(_member(L, s), ("given",))
    done: list[int] = []
    pos = 0
    while pos < len(work):
        x = work[pos]
        pos += 1
        add(full ^ x, ("complement", x))
        for y in done:
            if not x & y:
                add(x | y, ("union", y, x))
            elif meets and (x & y) in idx:
                add(x & y, ("meet", y, x))
        done.append(x)
    return ConcreteLogic(L.ground, (Event(b, c) for b, c in fam.items()), L.generators)


def _member(L: ConcreteLogic, p: EventLike) -> int:
    b = _bits(p)
    L.index(b)
    return b


def leq(L: ConcreteLogic, p: EventLike, q: EventLike) -> bool:
    a, b = _member(L, p), _member(L, q)
    return a & ~b == 0


def orthocomplement(L: ConcreteLogic, p: EventLike) -> Event:
    b = _member(L, p)
    c = L.get(L.full ^ b)
    if c is None:
        raise InputError(f"complement of {L.hex(b)} is not a member (C2 fails)")
    return c


def join_disjoint(L: ConcreteLogic, ps: Sequence[EventLike]) -> Event:
    """Union of pairwise disjoint members; empty list gives the bottom."""
    acc = 0
    for p in ps:
        b = _member(L, p)
        if acc & b:
            raise PreconditionError(f"event {L.hex(b)} overlaps the other arguments")
        acc |= b
    e = L.get(acc)
    if e is None:
        raise InputError(f"disjoint union {L.hex(acc)} is not a member (C3 fails)")
    return e


def _lub_bits(L: ConcreteLogic, x: int) -> int | None:
    """Least member containing the set ``x``, if one exists."""
    if x in L._index:
        return x
    acc = L.full
    found = False
    for e in L.bits:
        if x & ~e == 0:
            acc &= e
            found = True
    return acc if found and acc in L._index else None


def _glb_bits(L: ConcreteLogic, x: int) -> int | None:
    """Greatest member contained in the set ``x``, if one exists."""
    if x in L._index:
        return x
    acc = 0
    found = False
    for e in L.bits:
        if e & ~x == 0:
            acc |= e
            found = True
    return acc if found and acc in L._index else None


def join(L: ConcreteLogic, p: EventLike, q: EventLike) -> Event | None:
    """Least upper bound in the inclusion order, or ``None``."""
    b = _lub_bits(L, _member(L, p) | _member(L, q))
    return None if b is None else L.events[L._index[b]]


def meet(L: ConcreteLogic, p: EventLike, q: EventLike) -> Event | None:
    """Greatest lower bound in the inclusion order, or ``None``."""
    b = _glb_bits(L, _member(L, p) & _member(L, q))
    return None if b is None else L.events[L._index[b]]


def meet_all(L: ConcreteLogic, ps: Iterable[EventLike]) -> Event | None:
    x = L.full
    for p in ps:
        x &= _member(L, p)
    b = _glb_bits(L, x)
    return None if b is None else L.events[L._index[b]]


def atoms(L: ConcreteLogic) -> list[Event]:
    return [L.events[i] for i in L.atom_index]


def is_atomistic(L: ConcreteLogic) -> bool:
    at = L.atom_bits
    for p in L.bits:
        below = 0
        for a in at:
            if a & ~p == 0:
                below |= a
        if below != p and _lub_bits(L, below) != p:
            return False
    return True


def exact_covers(L: ConcreteLogic, p: EventLike) -> Iterator[tuple[int, ...]]:
    """All decompositions of ``p`` into pairwise disjoint atoms.

    Depth-first, branching on the uncovered point with the fewest candidate
    atoms; each cover is yielded once, as a tuple sorted by bits.
    """
    target = _bits(p)
    cands = [a for a in L.atom_bits if a & ~target == 0]

    def rec(rem: int, live: list[int], chosen: list[int]):
        if not rem:
            yield tuple(sorted(chosen))
            return
        best = None
        best_opts: list[int] = []
        r = rem
        while r:
            low = r & -r
            r ^= low
            opts = [a for a in live if a & low]
            if best is None or len(opts) < len(best_opts):
                best, best_opts = low, opts
                if len(opts) <= 1:
                    break
        for a in best_opts:
            chosen.append(a)
            rest = rem ^ a
            yield from rec(rest, [c for c in live if c & ~rest == 0], chosen)
            chosen.pop()

    yield from rec(target, cands, [])


def compatible_by_definition(L: ConcreteLogic, p: EventLike, q: EventLike) -> bool:
    """Search members r, p1, q1 pairwise disjoint with p = p1 v r and q = q1 v r."""
    pb, qb = _member(L, p), _member(L, q)
    for r in L.bits:
        if r & ~pb or r & ~qb:
            continue
        for p1 in L.bits:
            if p1 & r or p1 | r != pb:
                continue
            for q1 in L.bits:
                if not (q1 & r or q1 & p1) and q1 | r == qb:
                    return True
    return False


def is_compatible(L: ConcreteLogic, p: EventLike, q: EventLike, crosscheck: bool = False) -> bool:
    """p and q are compatible iff their set intersection is a member.

    In a concrete logic the decomposition is forced to r = p & q, p1 = p - q,
    q1 = q - p.  ``crosscheck`` reruns the definitional search and raises
    :class:`InvariantError` on disagreement.
    """
    pb, qb = _member(L, p), _member(L, q)
    fast = (pb & qb) in L._index
    if crosscheck and fast != compatible_by_definition(L, pb, qb):
        raise InvariantError(f"compatibility shortcut disagrees on {L.hex(pb)}, {L.hex(qb)}")
    return fast


def compatible_cover(L: ConcreteLogic, A: Iterable[EventLike]) -> list[Event] | None:
    """Pairwise disjoint members G such that each element of A is a union from G.

    The candidate G is the set of nonempty cells of the set algebra generated by
    A; A is compatible iff every cell is a member.  Returns ``None`` otherwise.
    """
    cells = [L.full]
    for p in A:
        b = _member(L, p)
        nxt = []
        for c in cells:
            for part in (c & b, c & ~b):
                if part:
                    nxt.append(part)
        cells = nxt
    if any(c not in L._index for c in cells):
        return None
    return [L.events[L._index[c]] for c in sorted(cells)]


def is_set_compatible(L: ConcreteLogic, A: Iterable[EventLike]) -> bool:
    return compatible_cover(L, A) is not None


def boolean_sublogic(L: ConcreteLogic, A: Iterable[EventLike]) -> ConcreteLogic | None:
    """The Boolean sublogic witnessing compatibility of A, or ``None``."""
    cover = compatible_cover(L, A)
    if cover is None:
        return None
    return generate_logic(L.ground, cover)


def _compat_masks(L: ConcreteLogic) -> list[int]:
    """For each member index i, a bit mask of the member indices compatible with it."""
    n = len(L)
    idx = L._index
    bits = L.bits
    masks = [0] * n
    for i in range(n):
        bi = bits[i]
        m = masks[i] | (1 << i)
        for j in range(i + 1, n):
            if (bi & bits[j]) in idx:
                m |= 1 << j
                masks[j] |= 1 << i
        masks[i] = m
    return masks


def is_regular(L: ConcreteLogic) -> bool:
    """Every mutually compatible triple {a, b, c} has a compatible with b v c.

    Equivalently, for each compatible pair (b, c) every member compatible with
    both b and c is compatible with their join.
    """
    n = len(L)
    comp = _compat_masks(L)
    bits = L.bits
    for i in range(n):
        m = comp[i] >> (i + 1)
        j = i + 1
        while m:
            if m & 1:
                jb = _lub_bits(L, bits[i] | bits[j])
                if jb is None:
                    return False
                k = L._index[jb]
                if comp[i] & comp[j] & ~comp[k]:
                    return False
            m >>= 1
            j += 1
    return True


def _lattice_counterexample(L: ConcreteLogic) -> tuple[int, int] | None:
    bits = L.bits
    for i, p in enumerate(bits):
        for q in bits[i + 1:]:
            if _lub_bits(L, p | q) is None:
                return p, q
    return None


def is_lattice(L: ConcreteLogic) -> bool:
    return _lattice_counterexample(L) is None


def is_boolean(L: ConcreteLogic) -> bool:
    """Complemented distributive lattice, checked exhaustively."""
    if any((L.full ^ b) not in L._index for b in L.bits):
        return False
    if not is_lattice(L):
        return False
    n = len(L)
    bits = L.bits
    idx = L._index
    jn = [[0] * n for _ in range(n)]
    mt = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            jb = _lub_bits(L, bits[i] | bits[j])
            mb = _glb_bits(L, bits[i] & bits[j])
            if jb is None or mb is None:
                return False
            jn[i][j] = jn[j][i] = idx[jb]
            mt[i][j] = mt[j][i] = idx[mb]
    for p in range(n):
        mp = mt[p]
        for q in range(n):
            jq = jn[q]
            for r in range(q + 1, n):
                if mp[jq[r]] != jn[mp[q]][mp[r]]:
                    return False
    return True


def verify_logic_axioms(L: ConcreteLogic) -> Report:
    """Check C1-C3 and L1-L5 exhaustively, with a counterexample for each failure.

    Joins and meets are the least upper / greatest lower bounds of the
    inclusion order on the family, not set operations.  Suprema are finite.
    """
    full = L.full
    idx = L._index
    bits = L.bits
    hx = L.hex
    rep = Report("axioms")

    rep.add(check("C1", None if 0 in idx else {"missing": hx(0)}, members=len(L)))

    cx = next(({"p": hx(b), "missing": hx(full ^ b)} for b in bits if (full ^ b) not in idx), None)
    rep.add(check("C2", cx, members=len(L)))

    cx, pairs = None, 0
    for i, p in enumerate(bits):
        for q in bits[i:]:
            if not p & q:
                pairs += 1
                if (p | q) not in idx and cx is None:
                    cx = {"p": hx(p), "q": hx(q), "missing": hx(p | q)}
    rep.add(check("C3", cx, disjoint_pairs=pairs))

    greatest = [b for b in bits if all(o & ~b == 0 for o in bits)]
    least = [b for b in bits if all(b & ~o == 0 for o in bits)]
    cx = None if greatest and least else {"greatest": len(greatest), "least": len(least)}
    rep.add(check("L1", cx, members=len(L)))

    # L2, L5 scan comparable pairs; L4 scans disjoint pairs
    cx2 = cx4 = cx5 = None
    comparable = orthogonal = 0
    for p in bits:
        pc = full ^ p
        for q in bits:
            if p & ~q == 0:
                comparable += 1
                qc = full ^ q
                if cx2 is None:
                    if pc not in idx or qc not in idx:
                        cx2 = {"p": hx(p), "q": hx(q), "reason": "complement missing"}
                    elif qc & ~pc:
                        cx2 = {"p": hx(p), "q": hx(q), "reason": "order not reversed"}
                if cx5 is None:
                    if pc not in idx:
                        cx5 = {"p": hx(p), "q": hx(q), "reason": "complement missing"}
                    else:
                        m = _glb_bits(L, q & pc)
                        j = None if m is None else _lub_bits(L, p | m)
                        if j != q:
                            cx5 = {
                                "p": hx(p),
                                "q": hx(q),
                                "reason": "meet missing" if m is None else "orthomodular law fails",
                            }
            if not p & q and p <= q:
                orthogonal += 1
                if cx4 is None and _lub_bits(L, p | q) is None:
                    cx4 = {"p": hx(p), "q": hx(q), "reason": "no supremum"}
    cx3 = None
    for p in bits:
        c = full ^ p
        if c not in idx:
            cx3 = {"p": hx(p), "reason": "complement missing"}
            break
        if full ^ c != p:
            cx3 = {"p": hx(p)}
            break
    rep.add(check("L2", cx2, comparable_pairs=comparable))
    rep.add(check("L3", cx3, members=len(L)))
    rep.add(check("L4", cx4, orthogonal_pairs=orthogonal))
    rep.add(check("L5", cx5, comparable_pairs=comparable))
    return rep
