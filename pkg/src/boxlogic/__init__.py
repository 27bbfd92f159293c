"""Finite quantum logics of no-signaling box worlds.

The package builds the concrete logics of one and two black boxes, the
no-signaling state space on them, and exhaustive checks of the product
structure (free orthodistributive product, strong tensor product).
"""

from .errors import (
    BoxLogicError,
    InputError,
    InvariantError,
    NormalizationError,
    PreconditionError,
    ResourceError,
    SignalingError,
    SpecError,
    StateError,
)
from .logic import (
    ConcreteLogic,
    Event,
    GroundSet,
    atoms,
    generate_logic,
    is_atomistic,
    is_boolean,
    is_compatible,
    is_lattice,
    is_regular,
    is_set_compatible,
    join_disjoint,
    leq,
    orthocomplement,
    verify_logic_axioms,
)
from .pasting import are_isomorphic, zero_one_pasting
from .box_world import (
    BoxSpec,
    BoxWorld,
    ProductWitness,
    build_product_witness,
    embed_left,
    embed_right,
    question_event,
    single_box_logic,
    two_box_logic,
)
from .states import (
    Behavior,
    ComponentState,
    TwoValuedState,
    behavior_from_table,
    chsh_value,
    enumerate_two_valued_states,
    evaluate,
    factorize_two_valued,
    is_rich,
    is_superposition,
    pr_box_state,
    product_state,
    superposition_closure_members,
)
from .polytope import StatePolytope, ns_polytope, polytope_vertices
from .products import (
    is_set_representable,
    verify_atoms_product,
    verify_free_orthodistributive,
    verify_strong_tensor_product,
    verify_weak_conditions,
)
from .report import Check, Report

__version__ = "0.1.0"
