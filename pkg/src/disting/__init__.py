"""Exact distinguishing number / index toolkit for small graphs."""

__version__ = "0.1.0"

from .graphs import (  # noqa: F401
    Graph,
    FamilySpec,
    StructuralSets,
    contract_edge,
    contract_vertex,
    edge,
    is_connected,
    make_family,
    odot,
    parse_graph6,
    remove_edge,
    remove_vertex,
    structural_sets,
    to_graph6,
)
from .automorphism import (  # noqa: F401
    AutomorphismGroup,
    CanonicalCode,
    Permutation,
    automorphisms,
    canonical_form,
    induced_edge_action,
    vertex_orbits,
)
from .solver import (  # noqa: F401
    DistResult,
    brute_force_value,
    distinguishing_index,
    distinguishing_number,
    edge_action_faithful,
    is_distinguishing_edge,
    is_distinguishing_vertex,
)
