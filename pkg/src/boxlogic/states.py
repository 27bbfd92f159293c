"""States on box-world logics.

A state on the two-box logic is represented by its behavior, the table of
conditional probabilities P(alpha beta | a b), one entry per atom.  Values on
other events are obtained by decomposing the event into disjoint atoms and
summing.  Everything is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError, InvariantError, NormalizationError, SignalingError, StateError
from .logic import ConcreteLogic, EventLike, exact_covers

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Exact conversion from int, Fraction, ``"p/q"`` strings or ``[p, q]`` pairs."""
    if isinstance(x, bool):
        raise InputError(f"not a probability: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InputError(f"not a rational number: {x!r}") from None
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(
        isinstance(v, int) and not isinstance(v, bool) for v in x
    ):
        if x[1] == 0:
            raise InputError(f"zero denominator in {x!r}")
        return Fraction(x[0], x[1])
    if isinstance(x, float):
        raise InputError(f"floating point value {x!r}; use an exact rational such as '1/3'")
    raise InputError(f"not a rational number: {x!r}")


def _fmt(x: Fraction) -> str:
    return str(x)


class Behavior:
    """A no-signaling conditional probability table P(alpha beta | a b).

    ``table[(a, b)][alpha][beta]`` holds the probability; inputs and outcomes
    are 0-based.  Construct through :func:`behavior_from_table`, which
    validates normalization and no-signaling.
    """

    def __init__(self, left_sizes, right_sizes, table):
        self.left_sizes = tuple(left_sizes)
        self.right_sizes = tuple(right_sizes)
        self.table = table

    def prob(self, a: int, b: int, alpha: int, beta: int) -> Fraction:
        return self.table[(a, b)][alpha][beta]

    def atom_value(self, L: ConcreteLogic, atom: int) -> Fraction:
        label = L.labels.get(atom)
        if label is None or len(label) != 4:
            raise InvariantError(f"atom {L.hex(atom)} carries no joint-question label")
        return self.prob(*label)

    def left_marginal(self, a: int) -> tuple[Fraction, ...]:
        return tuple(sum(row) for row in self.table[(a, 0)])

    def right_marginal(self, b: int) -> tuple[Fraction, ...]:
        rows = self.table[(0, b)]
        return tuple(sum(r[beta] for r in rows) for beta in range(self.right_sizes[b]))

    @cached_property
    def vector(self) -> tuple[Fraction, ...]:
        """Coordinates in canonical order: contexts (a, b) lexicographic, then (alpha, beta)."""
        return tuple(
            x for key in sorted(self.table) for row in self.table[key] for x in row
        )

    @property
    def contexts(self) -> list[tuple[int, int]]:
        return sorted(self.table)

    def is_deterministic(self) -> bool:
        return all(x in (ZERO, ONE) for x in self.vector)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Behavior)
            and self.left_sizes == other.left_sizes
            and self.right_sizes == other.right_sizes
            and self.vector == other.vector
        )

    def __hash__(self) -> int:
        return hash((self.left_sizes, self.right_sizes, self.vector))

    def __repr__(self) -> str:
        return f"Behavior(left={list(self.left_sizes)}, right={list(self.right_sizes)})"

    def to_json_dict(self) -> dict[str, list[list[str]]]:
        """Context keys "a,b" are 1-based, as in the behavior file format."""
        return {
            f"{a + 1},{b + 1}": [[_fmt(x) for x in row] for row in self.table[(a, b)]]
            for a, b in sorted(self.table)
        }


def _rows_2d(raw, ka: int | None, kb: int | None) -> list[list[Fraction]]:
    """Accept ``[alpha][beta]`` rows, or a flat row-major array when sizes are known."""
    if not isinstance(raw, (list, tuple)) or not raw:
        raise InputError(f"context table must be a non-empty array, got {raw!r}")
    nested = all(isinstance(r, (list, tuple)) for r in raw)
    if nested and ka is not None and kb is not None:
        nested = len(raw) == ka and all(len(r) == kb for r in raw)
    if nested:
        return [[to_fraction(x) for x in r] for r in raw]
    if ka is None or kb is None or ka * kb != len(raw):
        raise InputError("flat context tables need known outcome counts matching their length")
    flat = [to_fraction(x) for x in raw]
    return [flat[i * kb:(i + 1) * kb] for i in range(ka)]


def behavior_from_table(
    raw: Mapping | Sequence,
    left_sizes: Sequence[int] | None = None,
    right_sizes: Sequence[int] | None = None,
) -> Behavior:
    """Validate a raw probability table and return a :class:`Behavior`.

    ``raw`` maps ``(a, b)`` to a 2-D array ``[alpha][beta]`` (or a flat
    row-major array when the outcome counts are given), or is a nested list
    ``raw[a][b]``.  Raises :class:`NormalizationError` or
    :class:`SignalingError` naming the offending contexts.
    """
    if isinstance(raw, Mapping):
        items = {}
        for key, val in raw.items():
            if not (isinstance(key, tuple) and len(key) == 2):
                raise InputError(f"context key must be an (a, b) pair, got {key!r}")
            items[(int(key[0]), int(key[1]))] = val
    else:
        items = {(a, b): val for a, row in enumerate(raw) for b, val in enumerate(row)}
    if not items:
        raise InputError("empty behavior table")
    n_left = max(a for a, _ in items) + 1
    n_right = max(b for _, b in items) + 1
    missing = [(a, b) for a in range(n_left) for b in range(n_right) if (a, b) not in items]
    if missing or min(min(k) for k in items) < 0:
        raise InputError(f"incomplete behavior table; missing contexts {missing}")

    if left_sizes is not None and len(left_sizes) != n_left:
        raise InputError(f"table has {n_left} left inputs, expected {len(left_sizes)}")
    if right_sizes is not None and len(right_sizes) != n_right:
        raise InputError(f"table has {n_right} right inputs, expected {len(right_sizes)}")

    table: dict[tuple[int, int], tuple[tuple[Fraction, ...], ...]] = {}
    for (a, b), val in sorted(items.items()):
        ka = left_sizes[a] if left_sizes is not None else None
        kb = right_sizes[b] if right_sizes is not None else None
        rows = _rows_2d(val, ka, kb)
        if len({len(r) for r in rows}) != 1:
            raise InputError(f"context ({a + 1},{b + 1}): ragged table")
        table[(a, b)] = tuple(tuple(r) for r in rows)

    ls = []
    for a in range(n_left):
        sizes = {len(table[(a, b)]) for b in range(n_right)}
        if len(sizes) != 1:
            raise InputError(f"left input {a + 1} has inconsistent outcome counts {sorted(sizes)}")
        ls.append(sizes.pop())
    rs = []
    for b in range(n_right):
        sizes = {len(table[(a, b)][0]) for a in range(n_left)}
        if len(sizes) != 1:
            raise InputError(f"right input {b + 1} has inconsistent outcome counts {sorted(sizes)}")
        rs.append(sizes.pop())
    if left_sizes is not None and tuple(left_sizes) != tuple(ls):
        raise InputError(f"left outcome counts {ls} do not match {list(left_sizes)}")
    if right_sizes is not None and tuple(right_sizes) != tuple(rs):
        raise InputError(f"right outcome counts {rs} do not match {list(right_sizes)}")

    for (a, b), rows in table.items():
        for row in rows:
            for x in row:
                if not ZERO <= x <= ONE:
                    raise StateError(f"context ({a + 1},{b + 1}): entry {x} outside [0, 1]")

    beh = Behavior(ls, rs, table)
    for a in range(n_left):
        ref = tuple(sum(r) for r in table[(a, 0)])
        for b in range(1, n_right):
            got = tuple(sum(r) for r in table[(a, b)])
            if got != ref:
                raise SignalingError(
                    f"left marginal of input {a + 1} differs between contexts "
                    f"({a + 1},1) and ({a + 1},{b + 1}): {list(map(str, ref))} vs {list(map(str, got))}"
                )
    for b in range(n_right):
        ref = beh.right_marginal(b)
        for a in range(1, n_left):
            rows = table[(a, b)]
            got = tuple(sum(r[beta] for r in rows) for beta in range(rs[b]))
            if got != ref:
                raise SignalingError(
                    f"right marginal of input {b + 1} differs between contexts "
                    f"(1,{b + 1}) and ({a + 1},{b + 1}): {list(map(str, ref))} vs {list(map(str, got))}"
                )
    # marginals agree by now, so every context has the same total
    for (a, b), rows in table.items():
        total = sum(sum(r) for r in rows)
        if total != ONE:
            raise NormalizationError(f"context ({a + 1},{b + 1}) sums to {total}, not 1")
    return beh


@dataclass(frozen=True)
class ComponentState:
    """A single-box state: one outcome distribution P(alpha | a) per input."""

    table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(x) for x in r) for r in self.table)
        object.__setattr__(self, "table", rows)
        if not rows:
            raise InputError("component state needs at least one input")
        for a, r in enumerate(rows):
            if not r or any(not ZERO <= x <= ONE for x in r):
                raise StateError(f"input {a + 1}: entries must lie in [0, 1]")
            if sum(r) != ONE:
                raise NormalizationError(f"input {a + 1} sums to {sum(r)}, not 1")

    @classmethod
    def deterministic(cls, sizes: Sequence[int], outcomes: Sequence[int]) -> "ComponentState":
        return cls(tuple(
            tuple(ONE if i == x else ZERO for i in range(k)) for k, x in zip(sizes, outcomes)
        ))

    @classmethod
    def uniform(cls, sizes: Sequence[int]) -> "ComponentState":
        return cls(tuple(tuple(Fraction(1, k) for _ in range(k)) for k in sizes))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.table)

    def prob(self, a: int, alpha: int) -> Fraction:
        return self.table[a][alpha]

    def atom_value(self, L: ConcreteLogic, atom: int) -> Fraction:
        label = L.labels.get(atom)
        if label is None or len(label) != 2:
            raise InvariantError(f"atom {L.hex(atom)} carries no single-box label")
        return self.table[label[0]][label[1]]

    def is_deterministic(self) -> bool:
        return all(x in (ZERO, ONE) for r in self.table for x in r)


@dataclass(frozen=True)
class AtomState:
    """A state given directly by its values on atoms (for unlabeled logics)."""

    values: tuple[tuple[int, Fraction], ...]

    def atom_value(self, L: ConcreteLogic, atom: int) -> Fraction:
        return dict(self.values).get(atom, ZERO)


State = Union[Behavior, ComponentState, AtomState, "TwoValuedState"]


@dataclass(frozen=True)
class TwoValuedState:
    """A 0/1-valued state, described by the set of atoms on which it is 1."""

    atoms: frozenset[int]
    state: Behavior | ComponentState | AtomState

    def atom_value(self, L: ConcreteLogic, atom: int) -> Fraction:
        return self.state.atom_value(L, atom)

    @property
    def behavior(self) -> Behavior:
        if not isinstance(self.state, Behavior):
            raise InputError("not a state on a two-box logic")
        return self.state


def evaluate(s: State, L: ConcreteLogic, p: EventLike) -> Fraction:
    """Value of state ``s`` on event ``p``: sum over a decomposition into disjoint atoms."""
    return sum((s.atom_value(L, a) for a in L.atom_cover(p)), ZERO)


def evaluate_all_covers(s: State, L: ConcreteLogic, p: EventLike) -> set[Fraction]:
    """The set of values obtained over every atom decomposition of ``p``."""
    L.index(p)
    return {sum((s.atom_value(L, a) for a in cover), ZERO) for cover in exact_covers(L, p)}


def value_table(s: State, L: ConcreteLogic) -> list[Fraction]:
    """Values of ``s`` on every member of ``L``, in member order."""
    atom_val = {a: s.atom_value(L, a) for a in L.atom_bits}
    return [sum((atom_val[a] for a in L.atom_cover(b)), ZERO) for b in L.bits]


def _exact_hitting_sets(blocks: list[tuple[int, ...]]) -> list[frozenset[int]]:
    """All atom sets meeting every block in exactly one atom (Algorithm X)."""
    X: dict[int, set[int]] = {i: set(blk) for i, blk in enumerate(blocks)}
    Y: dict[int, list[int]] = {}
    for i, blk in enumerate(blocks):
        for a in blk:
            Y.setdefault(a, []).append(i)

    def select(r):
        cols = []
        for j in Y[r]:
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].discard(i)
            cols.append(X.pop(j))
        return cols

    def deselect(r, cols):
        for j in reversed(Y[r]):
            X[j] = cols.pop()
            for i in X[j]:
                for k in Y[i]:
                    if k != j:
                        X[k].add(i)

    out: list[frozenset[int]] = []
    chosen: list[int] = []

    def solve():
        if not X:
            out.append(frozenset(chosen))
            return
        c = min(X, key=lambda j: (len(X[j]), j))
        for r in sorted(X[c]):
            chosen.append(r)
            cols = select(r)
            solve()
            deselect(r, cols)
            chosen.pop()

    solve()
    return out


def state_from_atoms(L: ConcreteLogic, ones: Iterable[int]) -> Behavior | ComponentState | AtomState:
    """The 0/1 state that is 1 exactly on the atoms ``ones``, in the logic's native form."""
    ones = frozenset(ones)

    def val(b: int) -> Fraction:
        return Fraction(sum(1 for a in L.atom_cover(b) if a in ones))

    labels = list(L.generators)
    if labels and all(isinstance(x, tuple) and len(x) == 4 for x in labels):
        nl = max(x[0] for x in labels) + 1
        nr = max(x[1] for x in labels) + 1
        ls = [max(x[2] for x in labels if x[0] == a) + 1 for a in range(nl)]
        rs = [max(x[3] for x in labels if x[1] == b) + 1 for b in range(nr)]
        raw = {
            (a, b): [[val(L.generators[(a, b, i, j)]) for j in range(rs[b])] for i in range(ls[a])]
            for a in range(nl) for b in range(nr)
        }
        return behavior_from_table(raw, ls, rs)
    if labels and all(isinstance(x, tuple) and len(x) == 2 for x in labels):
        n = max(x[0] for x in labels) + 1
        sizes = [max(x[1] for x in labels if x[0] == a) + 1 for a in range(n)]
        return ComponentState(tuple(
            tuple(val(L.generators[(a, i)]) for i in range(sizes[a])) for a in range(n)
        ))
    return AtomState(tuple((a, ONE) for a in sorted(ones)))


def enumerate_two_valued_states(L: ConcreteLogic) -> list[TwoValuedState]:
    """All two-valued states of an atomistic logic.

    A set O of atoms defines a two-valued state iff it meets every
    decomposition of the whole space into disjoint atoms exactly once; those
    decompositions are enumerated and the exact hitting sets found by
    Algorithm X.  States come out sorted by their atom sets.
    """
    blocks = list(exact_covers(L, L.full))
    if not blocks:
        raise InvariantError("the unit has no decomposition into atoms")
    sols = sorted(_exact_hitting_sets(blocks), key=lambda s: sorted(s))
    return [TwoValuedState(O, state_from_atoms(L, O)) for O in sols]


def product_state(mu: ComponentState, nu: ComponentState) -> Behavior:
    """P(alpha beta | a b) = mu(alpha | a) nu(beta | b)."""
    raw = {
        (a, b): [[x * y for y in rb] for x in ra]
        for a, ra in enumerate(mu.table)
        for b, rb in enumerate(nu.table)
    }
    return behavior_from_table(raw, mu.sizes, nu.sizes)


def uniform_behavior(left_sizes: Sequence[int], right_sizes: Sequence[int]) -> Behavior:
    return product_state(ComponentState.uniform(left_sizes), ComponentState.uniform(right_sizes))


def factorize_two_valued(chi: TwoValuedState | Behavior) -> tuple[ComponentState, ComponentState]:
    """Split a two-valued two-box state into deterministic single-box states.

    Follows the rectangle argument: if [p, q] and [r, s] carry value 1 then so
    do [p, s] and [r, q], hence the support is O1 x O2.  Raises
    :class:`StateError` naming the offending atom pair when the table is not
    a valid two-valued state.
    """
    beh = chi.behavior if isinstance(chi, TwoValuedState) else chi
    ones = []
    for (a, b), rows in sorted(beh.table.items()):
        hits = []
        for alpha, row in enumerate(rows):
            for beta, x in enumerate(row):
                if x not in (ZERO, ONE):
                    raise StateError(f"context ({a + 1},{b + 1}) has non 0/1 entry {x}")
                if x == ONE:
                    hits.append((a, b, alpha, beta))
        if len(hits) != 1:
            raise StateError(f"context ({a + 1},{b + 1}) has {len(hits)} outcomes with value 1")
        ones.extend(hits)
    support = set(ones)
    for a, b, alpha, beta in ones:
        for a2, b2, alpha2, beta2 in ones:
            for need in ((a, b2, alpha, beta2), (a2, b, alpha2, beta)):
                if need not in support:
                    raise StateError(
                        f"rectangle property fails: atoms [{a + 1} {alpha}, {b + 1} {beta}] and "
                        f"[{a2 + 1} {alpha2}, {b2 + 1} {beta2}] have value 1 but "
                        f"[{need[0] + 1} {need[2]}, {need[1] + 1} {need[3]}] does not"
                    )
    left = {(a, alpha) for a, _, alpha, _ in ones}
    right = {(b, beta) for _, b, _, beta in ones}
    xs = [alpha for _, alpha in sorted(left)]
    ys = [beta for _, beta in sorted(right)]
    if len(xs) != len(beh.left_sizes) or len(ys) != len(beh.right_sizes):
        raise StateError("disjoint atoms both carry value 1")
    mu = ComponentState.deterministic(beh.left_sizes, xs)
    nu = ComponentState.deterministic(beh.right_sizes, ys)
    if product_state(mu, nu) != beh:
        raise InvariantError("factorization does not reproduce the state")
    return mu, nu


def _one_masks(S: Sequence[State], L: ConcreteLogic) -> list[int]:
    """For each member, a bit mask over S of the states valuing it at 1."""
    masks = [0] * len(L)
    for k, s in enumerate(S):
        for i, v in enumerate(value_table(s, L)):
            if v == ONE:
                masks[i] |= 1 << k
    return masks


def richness_violation(S: Sequence[State], L: ConcreteLogic) -> tuple[int, int] | None:
    """A pair (p, q) with p not below q yet every state valuing p at 1 also values q at 1."""
    masks = _one_masks(S, L)
    bits = L.bits
    for i, p in enumerate(bits):
        mi = masks[i]
        for j, q in enumerate(bits):
            if p & ~q and mi & ~masks[j] == 0:
                return p, q
    return None


def is_rich(S: Sequence[State], L: ConcreteLogic) -> bool:
    return richness_violation(S, L) is None


def _null_events(S: Sequence[State], L: ConcreteLogic) -> list[int]:
    """Indices of members on which every state in S vanishes."""
    tables = [value_table(s, L) for s in S]
    return [i for i in range(len(L)) if all(t[i] == ZERO for t in tables)]


def is_superposition(mu: State, S: Sequence[State], L: ConcreteLogic) -> bool:
    """True iff mu vanishes on every event on which all states of S vanish."""
    vals = value_table(mu, L)
    return all(vals[i] == ZERO for i in _null_events(S, L))


def superposition_closure_members(C: Sequence[State], S: Sequence[State], L: ConcreteLogic) -> list:
    """The members of the candidate list C that are superpositions of S."""
    null = _null_events(S, L)
    out = []
    for mu in C:
        vals = value_table(mu, L)
        if all(vals[i] == ZERO for i in null):
            out.append(mu)
    return out


def pr_box_state() -> Behavior:
    """The canonical PR box: P(alpha beta | a b) = 1/2 iff alpha XOR beta = a AND b."""
    half = Fraction(1, 2)
    raw = {
        (a, b): [[half if (al ^ be) == (a & b) else ZERO for be in range(2)] for al in range(2)]
        for a in range(2) for b in range(2)
    }
    return behavior_from_table(raw)


def correlator(s: Behavior, a: int, b: int) -> Fraction:
    rows = s.table[(a, b)]
    return sum(
        (x if (al ^ be) == 0 else -x for al, row in enumerate(rows) for be, x in enumerate(row)),
        ZERO,
    )


def chsh_value(s: Behavior) -> Fraction:
    """E(1,1) + E(1,2) + E(2,1) - E(2,2) for the binary two-input scenario."""
    if s.left_sizes != (2, 2) or s.right_sizes != (2, 2):
        raise InputError(
            f"CHSH needs two binary inputs per side, got {list(s.left_sizes)} x {list(s.right_sizes)}"
        )
    return correlator(s, 0, 0) + correlator(s, 0, 1) + correlator(s, 1, 0) - correlator(s, 1, 1)
