"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (with its
tolerance) straight to the terminal, then asserts.  All comparisons are exact
rational or integer equalities.  Run alone with::

    pytest tests/test_acceptance.py -v
"""

from __future__ import annotations

import filecmp
import itertools
from fractions import Fraction

import pytest

from boxlogic import (
    BoxWorld,
    are_isomorphic,
    build_product_witness,
    chsh_value,
    cli,
    enumerate_two_valued_states,
    factorize_two_valued,
    is_atomistic,
    is_boolean,
    is_regular,
    ns_polytope,
    polytope_vertices,
    product_state,
    verify_atoms_product,
    verify_free_orthodistributive,
    verify_logic_axioms,
    verify_strong_tensor_product,
    verify_weak_conditions,
    zero_one_pasting,
)
from boxlogic.errors import ResourceError
from boxlogic.logic import ConcreteLogic, GroundSet, exact_covers
from boxlogic.pasting import pasting_orthoposet

from conftest import powerset_logic

# element cap for the axiom sweep; larger scenarios are listed as skipped
SWEEP_BUDGET = 5000


@pytest.fixture
def say(capsys):
    def emit(n: int, ok: bool, text: str, tolerance: str = "exact") -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} [{tolerance}] {text}")
    return emit


@pytest.fixture(scope="module")
def world():
    return BoxWorld((2, 2), (2, 2))


@pytest.fixture(scope="module")
def witness(world):
    return build_product_witness(world)


@pytest.fixture(scope="module")
def vertices(world):
    return polytope_vertices(ns_polytope(world))


def test_criterion_1_construction(world, say):
    L, L1 = world.logic, world.left_logic
    blocks = [powerset_logic(2), powerset_logic(2)]
    facts = {
        "atomistic": is_atomistic(L),
        "atoms": len(L.atom_bits),
        "single_box_size": len(L1),
        "iso_abstract_pasting": are_isomorphic(L1, pasting_orthoposet(blocks)),
        "iso_concrete_pasting": are_isomorphic(L1, zero_one_pasting(blocks)),
    }
    ok = facts == {
        "atomistic": True, "atoms": 16, "single_box_size": 6,
        "iso_abstract_pasting": True, "iso_concrete_pasting": True,
    }
    say(1, ok, f"(2,2)x(2,2): {facts}")
    assert ok


def _sweep_scenarios():
    sides = [t for n in (1, 2, 3) for t in itertools.combinations_with_replacement((2, 3), n)]
    return list(itertools.combinations_with_replacement(sides, 2))


def _fault_family() -> dict[str, ConcreteLogic]:
    g2, g4 = GroundSet.plain(2), GroundSet.plain(4)
    return {
        "C1": ConcreteLogic.from_family(g2, [0b01, 0b10, 0b11]),
        "C2": ConcreteLogic.from_family(g2, [0, 0b01, 0b11]),
        "C3": ConcreteLogic.from_family(g4, [0, 0b1111, 0b0001, 0b1110, 0b0010, 0b1101]),
    }


def test_criterion_2_axiom_suite(say):
    covered, skipped, bad = [], [], []
    for left, right in _sweep_scenarios():
        try:
            w = BoxWorld(left, right, budget=SWEEP_BUDGET)
            logics = (w.left_logic, w.right_logic, w.logic)
        except ResourceError:
            skipped.append((left, right))
            continue
        covered.append((left, right))
        for L in logics:
            if not verify_logic_axioms(L).passed:
                bad.append((left, right))
    faults_named = True
    for axiom, F in _fault_family().items():
        c = verify_logic_axioms(F)[axiom]
        faults_named &= c.status == "fail" and bool(c.counterexample)
    ok = not bad and faults_named and covered
    say(2, ok, (
        f"{len(covered)} scenarios pass L1-L5/C1-C3 (left, right and composite logics), "
        f"{len(skipped)} over the {SWEEP_BUDGET}-element budget skipped {skipped}; "
        f"fault family C1/C2/C3 fails with named counterexamples: {faults_named}"
    ))
    assert ok


@pytest.mark.parametrize("left, right", [((2, 2), (2, 2)), ((3, 2), (2, 3))])
def test_criterion_3_free_orthodistributive(left, right, say):
    w = BoxWorld(left, right)
    rep = verify_free_orthodistributive(w.logic, w.left_logic, w.right_logic, build_product_witness(w))
    statuses = {c.check_id: c.status for c in rep}
    ok = rep.passed and list(statuses) == ["i", "ii", "iii", "iv"]
    say(3, ok, f"{left}x{right} free orthodistributive product {statuses}")
    assert ok


def test_criterion_4_strong_tensor_product(world, witness, say):
    rep = verify_strong_tensor_product(world.logic, world.left_logic, world.right_logic, witness)
    tv = enumerate_two_valued_states(world.logic)
    round_trips = 0
    for t in tv:
        mu, nu = factorize_two_valued(t)
        round_trips += product_state(mu, nu) == t.behavior
    statuses = {c.check_id: c.status for c in rep}
    ok = rep.passed and len(tv) == 16 and round_trips == 16
    say(4, ok, f"strong tensor product {statuses}; {round_trips}/{len(tv)} two-valued states round-trip")
    assert ok


def test_criterion_5_corollary(world, witness, say):
    L, L1, L2 = world.logic, world.left_logic, world.right_logic
    facts = {
        "atoms_product": verify_atoms_product(L, L1, L2, witness),
        "boolean_left": is_boolean(L1),
        "boolean_right": is_boolean(L2),
        "regular": [is_regular(K) for K in (L, L1, L2)],
    }
    ok = facts == {
        "atoms_product": True, "boolean_left": False, "boolean_right": False,
        "regular": [True, True, True],
    }
    say(5, ok, f"(2,2)x(2,2): {facts}")
    assert ok


def test_criterion_6_polytope(vertices, say):
    integral = [v for v in vertices if v.is_deterministic()]
    half = [v for v in vertices if set(v.vector) == {Fraction(0), Fraction(1, 2)}]
    chsh_all = max(chsh_value(v) for v in vertices)
    chsh_int = max(chsh_value(v) for v in integral)
    ok = (len(vertices), len(integral), len(half), chsh_all, chsh_int) == (24, 16, 8, 4, 2)
    say(6, ok, (
        f"{len(vertices)} vertices ({len(integral)} integral, {len(half)} half-integral); "
        f"max CHSH {chsh_all} over all, {chsh_int} over integral"
    ))
    assert ok


def test_criterion_7_well_definedness(world, vertices, say):
    L = world.logic
    covers = {p: list(exact_covers(L, p)) for p in L.bits}
    bad, n_covers = [], sum(len(c) for c in covers.values())
    for k, s in enumerate(vertices):
        val = {a: s.atom_value(L, a) for a in L.atom_bits}
        for p, cs in covers.items():
            if len({sum(val[a] for a in c) for c in cs}) != 1:
                bad.append((k, L.hex(p)))
    ok = not bad and all(covers.values())
    say(7, ok, f"{len(L)} events x {len(vertices)} vertices, {n_covers} exact covers; disagreements: {bad[:3]}")
    assert ok


def test_criterion_8_weak_conditions(world, witness, vertices, say):
    rep = verify_weak_conditions(world.logic, world.left_logic, world.right_logic, witness, vertices)
    statuses = {c.check_id: (c.status, c.certification) for c in rep}
    ok = rep.passed and all(cert == "vertex-certified" for _, cert in statuses.values())
    say(8, ok, f"weak conditions {statuses}")
    assert ok


def test_criterion_9_determinism(tmp_path, say, capsys):
    spec = tmp_path / "world.json"
    spec.write_text('{"left": {"inputs": [2, 2]}, "right": {"inputs": [2, 2]}}')
    runs = [tmp_path / "run1", tmp_path / "run2"]
    codes = [cli.main(["verify", "--spec", str(spec), "--out", str(d)]) for d in runs]
    capsys.readouterr()
    names = sorted(p.name for p in runs[0].iterdir())
    match, mismatch, errors = filecmp.cmpfiles(runs[0], runs[1], names, shallow=False)
    ok = codes == [0, 0] and names and not mismatch and not errors
    say(9, ok, f"two verify runs: exit codes {codes}, identical artifacts {match}")
    assert ok
