from __future__ import annotations

import itertools

import pytest

from boxlogic import BoxWorld, build_product_witness
from boxlogic.logic import ConcreteLogic, GroundSet


def brute_closure(n: int, generators) -> set[int]:
    """Naive fixpoint: add complements and disjoint unions until nothing changes."""
    full = (1 << n) - 1
    fam = {0, full, *generators}
    while True:
        new = {full ^ x for x in fam}
        new |= {x | y for x, y in itertools.product(fam, repeat=2) if not x & y}
        if new <= fam:
            return fam
        fam |= new


def powerset_logic(n: int) -> ConcreteLogic:
    return ConcreteLogic.from_family(GroundSet.plain(n), range(1 << n))


def brute_lub(L: ConcreteLogic, p: int, q: int) -> int | None:
    ups = [r for r in L.bits if (p | q) & ~r == 0]
    least = [r for r in ups if all(r & ~s == 0 for s in ups)]
    return least[0] if least else None


def brute_glb(L: ConcreteLogic, p: int, q: int) -> int | None:
    downs = [r for r in L.bits if r & ~(p & q) == 0]
    greatest = [r for r in downs if all(s & ~r == 0 for s in downs)]
    return greatest[0] if greatest else None


@pytest.fixture(scope="session")
def w22() -> BoxWorld:
    return BoxWorld((2, 2), (2, 2))


@pytest.fixture(scope="session")
def wit22(w22):
    return build_product_witness(w22)


@pytest.fixture(scope="session")
def w3223() -> BoxWorld:
    return BoxWorld((3, 2), (2, 3))


@pytest.fixture(scope="session")
def w1() -> BoxWorld:
    return BoxWorld((2,), (2,))
