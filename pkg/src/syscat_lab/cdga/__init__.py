"""Free commutative differential graded algebras and their cohomology."""
from .algebra import FreeCDGA, builtin_model, cp_model, make_cdga, parse_cdga, su6_model, torus_model
from .cohomology import (
    CohClass,
    CohomologySpace,
    MasseyCoset,
    betti_numbers,
    class_of,
    cohomology,
    cup_length,
    cup_product,
    in_coset,
    massey_triple,
    toomer_e0,
    toomer_witness,
)
from .homotopy import AlgebraMap, HomotopyFamily, IdentityCheck, MultiMap, identity_family, tabulate, verify_higher_homotopies
from .linalg import QQ, Field

__all__ = [
    "QQ",
    "AlgebraMap",
    "HomotopyFamily",
    "IdentityCheck",
    "MultiMap",
    "identity_family",
    "tabulate",
    "verify_higher_homotopies",
    "CohClass",
    "CohomologySpace",
    "Field",
    "FreeCDGA",
    "MasseyCoset",
    "betti_numbers",
    "builtin_model",
    "class_of",
    "cohomology",
    "cp_model",
    "cup_length",
    "cup_product",
    "in_coset",
    "make_cdga",
    "massey_triple",
    "parse_cdga",
    "su6_model",
    "toomer_e0",
    "toomer_witness",
    "torus_model",
]
