from __future__ import annotations

import pytest

from boxlogic import (
    BoxWorld,
    build_product_witness,
    is_boolean,
    is_regular,
    is_set_representable,
    ns_polytope,
    polytope_vertices,
    single_box_logic,
    verify_atoms_product,
    verify_free_orthodistributive,
    verify_strong_tensor_product,
    verify_weak_conditions,
)
from boxlogic.products import product_two_valued_states
from boxlogic.states import Behavior, uniform_behavior

from conftest import powerset_logic


def run_free(w, wit):
    return verify_free_orthodistributive(w.logic, w.left_logic, w.right_logic, wit)


def run_strong(w, wit, **kw):
    return verify_strong_tensor_product(w.logic, w.left_logic, w.right_logic, wit, **kw)


@pytest.mark.parametrize("left, right", [((2, 2), (2, 2)), ((3, 2), (2, 3)), ((2,), (2,))])
def test_free_orthodistributive_passes(left, right):
    w = BoxWorld(left, right)
    rep = run_free(w, build_product_witness(w))
    assert [c.check_id for c in rep] == ["i", "ii", "iii", "iv"]
    assert rep.passed, rep.failures


def test_corrupted_top_fails_axiom_i(w22, wit22):
    bad = wit22.copy()
    L1 = w22.left_logic
    bad.u[L1.full] = w22.question_bits(0, [0], 0, None)
    rep = run_free(w22, bad)
    c = rep["i"]
    assert c.status == "fail"
    assert c.counterexample["map"] == "u"
    assert c.counterexample["element"] == L1.hex(L1.full)
    assert c.counterexample["reason"] == "top not preserved"
    assert all(rep[k].status == "fail" for k in ("ii", "iii", "iv"))


def test_every_single_entry_mutation_is_caught(w22, wit22):
    L = w22.logic
    members = L.bits
    caught = 0
    tables = [("u", k) for k in wit22.u] + [("v", k) for k in wit22.v] + [("phi", k) for k in wit22.phi]
    for name, key in tables:
        bad = wit22.copy()
        table = getattr(bad, name)
        old = table[key]
        table[key] = members[(members.index(old) + 1) % len(members)]
        free = run_free(w22, bad)
        ok = free.passed and run_strong(w22, bad).passed
        assert not ok, (name, key)
        caught += 1
    assert caught == 6 + 6 + 36


def test_atoms_product(w22, wit22, w1):
    assert verify_atoms_product(w22.logic, w22.left_logic, w22.right_logic, wit22)
    assert verify_atoms_product(w1.logic, w1.left_logic, w1.right_logic, build_product_witness(w1))
    bad = wit22.copy()
    atom = w22.left_logic.atom_bits[0]
    bad.u[atom] = w22.logic.full
    assert not verify_atoms_product(w22.logic, w22.left_logic, w22.right_logic, bad)


def test_atoms_identity_with_non_boolean_regular_components(w22, wit22):
    assert verify_atoms_product(w22.logic, w22.left_logic, w22.right_logic, wit22)
    assert not is_boolean(w22.left_logic) and not is_boolean(w22.right_logic)
    assert all(is_regular(L) for L in (w22.logic, w22.left_logic, w22.right_logic))


@pytest.mark.parametrize("left, right", [((2, 2), (2, 2)), ((2, 3), (2, 2))])
def test_strong_tensor_product_passes(left, right):
    w = BoxWorld(left, right)
    rep = run_strong(w, build_product_witness(w))
    assert rep.passed, rep.failures
    assert rep["two_valued_factorize"].counts["two_valued_states"] == len(w.gamma1) * len(w.gamma2)


def test_strong_ii_fails_with_only_uniform_state(w22, wit22):
    rep = run_strong(w22, wit22, product_states=[uniform_behavior((2, 2), (2, 2))])
    assert rep["ii"].status == "fail"
    assert set(rep["ii"].counterexample) == {"a", "b"}
    assert rep["i"].passed and rep["iii"].passed


def test_product_two_valued_states_count(w22):
    assert len(product_two_valued_states(w22.left_logic, w22.right_logic)) == 16


def test_weak_conditions_pass(w22, wit22):
    verts = polytope_vertices(ns_polytope(w22))
    rep = verify_weak_conditions(w22.logic, w22.left_logic, w22.right_logic, wit22, verts)
    assert rep.passed
    assert rep["ii''"].certification == "vertex-certified"
    assert rep["ii'"].certification == "vertex-certified"
    assert rep["ii''"].counts["null_events"] == 1


def test_weak_ii_prime_catches_a_non_state(w22, wit22):
    # an all-zero table vanishes everywhere, so it is a "superposition" valuing nothing at 1
    zero = Behavior((2, 2), (2, 2), {ctx: ((0, 0), (0, 0)) for ctx in w22.contexts})
    verts = polytope_vertices(ns_polytope(w22)) + [zero]
    rep = verify_weak_conditions(w22.logic, w22.left_logic, w22.right_logic, wit22, verts)
    assert rep["ii'"].status == "fail"
    assert 24 in rep["ii'"].counterexample["superposition_closure"]


def test_set_representable(w22, w1):
    assert is_set_representable(w22.logic)
    assert is_set_representable(w1.logic)
    assert is_set_representable(single_box_logic((2, 2)))
    assert is_set_representable(powerset_logic(3))
