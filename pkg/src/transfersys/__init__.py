"""Transfer systems on finite lattices: enumeration, weak factorization
systems, self-duality, and the noncrossing-partition bijection."""

from .poset import (
    Duality,
    LatticeWitness,
    Poset,
    canonical_duality,
    find_isomorphism,
    is_lattice,
    join,
    make_boolean,
    make_chain,
    make_divisor_poset,
    make_grid,
    make_product,
    meet,
    opposite,
)
from .transfer import (
    TransferSystem,
    complete,
    enumerate_transfer_systems,
    generate,
    maximal_edges,
    min_generating_number,
    refines,
    trivial,
    ts_join,
    ts_meet,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Duality",
    "LatticeWitness",
    "Poset",
    "TransferSystem",
    "canonical_duality",
    "complete",
    "enumerate_transfer_systems",
    "find_isomorphism",
    "generate",
    "is_lattice",
    "join",
    "make_boolean",
    "make_chain",
    "make_divisor_poset",
    "make_grid",
    "make_product",
    "maximal_edges",
    "meet",
    "min_generating_number",
    "opposite",
    "refines",
    "trivial",
    "ts_join",
    "ts_meet",
    "validate",
]
