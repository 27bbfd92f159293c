"""The no-signaling polytope and exact vertex enumeration.

Variables are the atom probabilities P(alpha beta | a b).  The polytope is cut
out by nonnegativity, per-context normalization and the no-signaling
equalities.  Vertices are found with the double-description method over the
rationals: the equalities are solved to parametrize the affine hull, the
resulting inequality system is homogenized, and extreme rays of that cone are
built one constraint at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .box_world import BoxWorld
from .errors import InputError, InvariantError, ResourceError
from .logic import ConcreteLogic
from .states import Behavior, behavior_from_table

Row = tuple[Fraction, ...]
POLYTOPE_BUDGET = 400


def _shape_from_logic(L: ConcreteLogic) -> tuple[tuple[int, ...], tuple[int, ...]]:
    labels = list(L.generators)
    if not labels or not all(isinstance(x, tuple) and len(x) == 4 for x in labels):
        raise InputError("the no-signaling polytope needs a two-box logic")
    nl = max(x[0] for x in labels) + 1
    nr = max(x[1] for x in labels) + 1
    ls = tuple(max(x[2] for x in labels if x[0] == a) + 1 for a in range(nl))
    rs = tuple(max(x[3] for x in labels if x[1] == b) + 1 for b in range(nr))
    return ls, rs


@dataclass
class StatePolytope:
    """H-representation {x : E x = e, x >= 0} over atom-indexed coordinates."""

    left_sizes: tuple[int, ...]
    right_sizes: tuple[int, ...]
    variables: tuple[tuple[int, int, int, int], ...]
    equalities: list[tuple[Row, Fraction]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def inequalities(self) -> list[tuple[Row, Fraction]]:
        """Nonnegativity rows, read as ``row . x >= rhs``."""
        n = self.dimension
        return [
            (tuple(Fraction(int(i == j)) for j in range(n)), Fraction(0)) for i in range(n)
        ]

    def contains(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.dimension or any(v < 0 for v in x):
            return False
        return all(sum(c * v for c, v in zip(row, x)) == rhs for row, rhs in self.equalities)

    @cached_property
    def vertices(self) -> list[tuple[Fraction, ...]]:
        return double_description(self.equalities, self.dimension)

    def behavior(self, x: Sequence[Fraction]) -> Behavior:
        raw: dict = {}
        for (a, b, al, be), v in zip(self.variables, x):
            rows = raw.setdefault(
                (a, b), [[None] * self.right_sizes[b] for _ in range(self.left_sizes[a])]
            )
            rows[al][be] = v
        return behavior_from_table(raw, self.left_sizes, self.right_sizes)

    def to_dict(self) -> dict:
        def fr(x: Fraction) -> str:
            return str(x)

        return {
            "left": list(self.left_sizes),
            "right": list(self.right_sizes),
            "variables": [
                {"a": a + 1, "b": b + 1, "alpha": al, "beta": be}
                for a, b, al, be in self.variables
            ],
            "equalities": [
                {"coeffs": [fr(c) for c in row], "rhs": fr(rhs)} for row, rhs in self.equalities
            ],
            "inequalities": [
                {"coeffs": [fr(c) for c in row], "rhs": fr(rhs), "sense": ">="}
                for row, rhs in self.inequalities()
            ],
            "vertices": [[fr(v) for v in x] for x in self.vertices],
        }


def ns_polytope(L: ConcreteLogic | BoxWorld, budget: int = POLYTOPE_BUDGET) -> StatePolytope:
    """No-signaling polytope of a two-box logic (or box world)."""
    if isinstance(L, BoxWorld):
        ls, rs = L.left.outcome_sizes, L.right.outcome_sizes
    else:
        ls, rs = _shape_from_logic(L)
    variables = tuple(
        (a, b, al, be)
        for a in range(len(ls))
        for b in range(len(rs))
        for al in range(ls[a])
        for be in range(rs[b])
    )
    n = len(variables)
    if n > budget:
        raise ResourceError(f"polytope has {n} coordinates, over the budget of {budget}")
    pos = {v: i for i, v in enumerate(variables)}

    def row(terms: dict[int, int]) -> Row:
        r = [Fraction(0)] * n
        for i, c in terms.items():
            r[i] += c
        return tuple(r)

    eqs: list[tuple[Row, Fraction]] = []
    for a in range(len(ls)):
        for b in range(len(rs)):
            eqs.append((row({pos[(a, b, al, be)]: 1 for al in range(ls[a]) for be in range(rs[b])}), Fraction(1)))
    # right marginal of b must not depend on the left input
    for b in range(len(rs)):
        for be in range(rs[b]):
            for a in range(len(ls) - 1):
                t = {pos[(a, b, al, be)]: 1 for al in range(ls[a])}
                for al in range(ls[a + 1]):
                    t[pos[(a + 1, b, al, be)]] = -1
                eqs.append((row(t), Fraction(0)))
    for a in range(len(ls)):
        for al in range(ls[a]):
            for b in range(len(rs) - 1):
                t = {pos[(a, b, al, be)]: 1 for be in range(rs[b])}
                for be in range(rs[b + 1]):
                    t[pos[(a, b + 1, al, be)]] = -1
                eqs.append((row(t), Fraction(0)))
    return StatePolytope(tuple(ls), tuple(rs), variables, eqs)


def polytope_vertices(P: StatePolytope) -> list[Behavior]:
    """Vertices as behaviors, in lexicographic order of their coordinate vectors."""
    return [P.behavior(x) for x in P.vertices]


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns; returns (rows, pivots)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + [row for row in m[r:] if any(row)], pivots


def _affine_hull(eqs: list[tuple[Row, Fraction]], n: int):
    """x = x0 + K t for all solutions of the equalities."""
    aug = [list(row) + [rhs] for row, rhs in eqs]
    red, pivots = rref(aug, n)
    for r in red[len(pivots):]:
        if r[n] != 0:
            raise InputError("equality constraints are inconsistent")
    free = [c for c in range(n) if c not in pivots]
    x0 = [Fraction(0)] * n
    for r, c in zip(red, pivots):
        x0[c] = r[n]
    K = [[Fraction(0)] * len(free) for _ in range(n)]
    for k, f in enumerate(free):
        K[f][k] = Fraction(1)
        for r, c in zip(red, pivots):
            K[c][k] = -r[f]
    return x0, K


def _normalize(z: list[Fraction]) -> tuple[Fraction, ...]:
    lead = next(abs(v) for v in z if v != 0)
    return tuple(v / lead for v in z)


def _dot(g: Sequence[Fraction], z: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(g, z) if a), Fraction(0))


def double_description(eqs: list[tuple[Row, Fraction]], n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of {x in Q^n : equalities, x >= 0}, sorted lexicographically.

    The polytope must be bounded; an extreme ray at infinity raises
    :class:`InvariantError`.
    """
    x0, K = _affine_hull(eqs, n)
    d = len(K[0]) if K else 0
    dim = d + 1
    # homogenized cone in (t, s): s >= 0 and s * x0 + K t >= 0
    G: list[list[Fraction]] = [[Fraction(0)] * d + [Fraction(1)]]
    for i in range(n):
        G.append(list(K[i]) + [x0[i]])

    # initial simplicial cone from dim linearly independent rows
    basis: list[int] = []
    echelon: list[list[Fraction]] = []
    for i, g in enumerate(G):
        v = list(g)
        for e in echelon:
            c = next(j for j, x in enumerate(e) if x != 0)
            if v[c] != 0:
                f = v[c] / e[c]
                v = [a - f * b for a, b in zip(v, e)]
        if any(v):
            echelon.append(v)
            basis.append(i)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise InvariantError("constraint system does not define a pointed cone")
    B = [list(G[i]) for i in basis]
    aug = [row + [Fraction(int(r == c)) for c in range(dim)] for r, row in enumerate(B)]
    red, _ = rref(aug, dim)
    Binv = [row[dim:] for row in red]
    rays: list[tuple[Fraction, ...]] = []
    zeros: list[int] = []
    for k in range(dim):
        rays.append(_normalize([Binv[r][k] for r in range(dim)]))
        zeros.append(sum(1 << basis[j] for j in range(dim) if j != k))

    for h in range(len(G)):
        if h in basis:
            continue
        g = G[h]
        vals = [_dot(g, z) for z in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | (1 << h) for i in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if common.bit_count() < dim - 2:
                    continue
                if any(
                    r != p and r != q and common & ~zeros[r] == 0 for r in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], vals[q]
                z = [vp * b - vq * a for a, b in zip(rays[p], rays[q])]
                new_rays.append(_normalize(z))
                new_zeros.append(common | (1 << h))
        rays, zeros = new_rays, new_zeros

    verts = set()
    for z in rays:
        s = z[-1]
        if s == 0:
            raise InvariantError("polytope is unbounded")
        t = [v / s for v in z[:-1]]
        x = tuple(x0[i] + sum((K[i][k] * t[k] for k in range(d)), Fraction(0)) for i in range(n))
        verts.add(x)
    return sorted(verts)
