from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from boxlogic import BoxWorld, chsh_value, enumerate_two_valued_states, ns_polytope, polytope_vertices
from boxlogic.errors import InputError, ResourceError
from boxlogic.polytope import double_description, rref


def oracle_system(left, right):
    """Normalization and no-signaling rows over all pairs of contexts, built from scratch."""
    var = [
        (a, b, x, y)
        for a, ka in enumerate(left) for b, kb in enumerate(right)
        for x in range(ka) for y in range(kb)
    ]
    pos = {v: i for i, v in enumerate(var)}
    rows, rhs = [], []
    for a, ka in enumerate(left):
        for b, kb in enumerate(right):
            r = np.zeros(len(var))
            for x in range(ka):
                for y in range(kb):
                    r[pos[(a, b, x, y)]] = 1
            rows.append(r)
            rhs.append(1)
    for a, ka in enumerate(left):
        for b, b2 in itertools.combinations(range(len(right)), 2):
            for x in range(ka):
                r = np.zeros(len(var))
                for y in range(right[b]):
                    r[pos[(a, b, x, y)]] += 1
                for y in range(right[b2]):
                    r[pos[(a, b2, x, y)]] -= 1
                rows.append(r)
                rhs.append(0)
    for b, kb in enumerate(right):
        for a, a2 in itertools.combinations(range(len(left)), 2):
            for y in range(kb):
                r = np.zeros(len(var))
                for x in range(left[a]):
                    r[pos[(a, b, x, y)]] += 1
                for x in range(left[a2]):
                    r[pos[(a2, b, x, y)]] -= 1
                rows.append(r)
                rhs.append(0)
    return np.array(rows), np.array(rhs, dtype=float)


def basis_enumeration(left, right) -> set[tuple[Fraction, ...]]:
    """Vertices as basic feasible solutions: float solves, then exact verification."""
    E, e = oracle_system(left, right)
    # keep a maximal independent set of rows
    keep = []
    for i in range(len(E)):
        if np.linalg.matrix_rank(E[keep + [i]]) > len(keep):
            keep.append(i)
    E, e = E[keep], e[keep]
    m, n = E.shape
    bases = np.array(list(itertools.combinations(range(n), m)))
    mats = np.transpose(E[:, bases], (1, 0, 2))
    ok = np.abs(np.linalg.det(mats)) > 1e-9
    bases, mats = bases[ok], mats[ok]
    sols = np.linalg.solve(mats, np.broadcast_to(e, (len(mats), m))[..., None])[..., 0]
    feasible = (sols > -1e-9).all(axis=1)
    full = np.zeros((int(feasible.sum()), n))
    np.put_along_axis(full, bases[feasible], sols[feasible], axis=1)
    # degenerate vertices have many bases; dedupe before the exact check
    uniq = np.unique(np.round(full, 9), axis=0)
    out = set()
    for row in uniq:
        x = [Fraction(float(v)).limit_denominator(1000) for v in row]
        Ex = [sum(Fraction(int(c)) * xi for c, xi in zip(r, x)) for r in E]
        assert Ex == [Fraction(int(v)) for v in e]
        assert min(x) >= 0
        out.add(tuple(x))
    return out


@pytest.mark.parametrize("left, right, count", [
    ((2,), (2,), 4),
    ((2, 2), (2, 2), 24),
    ((3,), (2, 2), 12),
    ((2, 2), (3,), 12),
    ((2, 2), (2, 3), 48),
])
def test_vertices_match_basis_enumeration(left, right, count):
    P = ns_polytope(BoxWorld(left, right))
    got = P.vertices
    assert len(got) == count
    assert set(got) == basis_enumeration(left, right)
    assert got == sorted(got)


def test_ns_24_vertices_split(w22):
    verts = polytope_vertices(ns_polytope(w22))
    integral = [v for v in verts if v.is_deterministic()]
    half = [v for v in verts if set(v.vector) == {Fraction(0), Fraction(1, 2)}]
    assert (len(verts), len(integral), len(half)) == (24, 16, 8)
    assert {t.behavior for t in enumerate_two_valued_states(w22.logic)} == set(integral)
    assert max(chsh_value(v) for v in verts) == 4
    assert max(chsh_value(v) for v in integral) == 2


def test_pr_vertices_reach_chsh_four_up_to_relabeling(w22):
    verts = polytope_vertices(ns_polytope(w22))
    vals = sorted(abs(chsh_value(v)) for v in verts if not v.is_deterministic())
    # each PR-type vertex saturates one of the eight CHSH variants
    assert set(vals) <= {Fraction(0), Fraction(4)}
    assert vals.count(Fraction(4)) == 2


def test_every_vertex_is_in_the_polytope(w22):
    P = ns_polytope(w22)
    assert all(P.contains(x) for x in P.vertices)
    assert not P.contains([Fraction(1)] * P.dimension)


def test_polytope_from_logic_equals_from_world(w22):
    assert ns_polytope(w22.logic).vertices == ns_polytope(w22).vertices


def test_polytope_needs_two_box_logic(w22):
    with pytest.raises(InputError):
        ns_polytope(w22.left_logic)


def test_polytope_budget(w22):
    with pytest.raises(ResourceError):
        ns_polytope(w22, budget=10)


def test_double_description_simplex():
    # x0 + x1 + x2 = 1
    eqs = [((Fraction(1),) * 3, Fraction(1))]
    assert double_description(eqs, 3) == [
        (0, 0, 1), (0, 1, 0), (1, 0, 0)
    ]


def test_rref_rank():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    red, piv = rref(rows, 2)
    assert piv == [0]
