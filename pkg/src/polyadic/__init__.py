"""Finite n-ary (polyadic) groups: axioms, skew calculus, Hosszu-Gluskin
decomposition, covering groups, representations and independence."""

from .core import (
    AxiomReport,
    GuardError,
    NaryGroup,
    NaryTable,
    NotAGroupError,
    Solvability,
    check_axioms,
    criteria_for,
    identity_suite,
    is_associative,
    is_ij_associative,
    long_product,
    minimal_axiom_check,
    solvability,
)
from .groups import GroupTable, NotAGroup, cyclic_group
from .hg import (
    HgAlgebra,
    classify_cyclic,
    cyclic_family,
    hg_construct,
    hg_decompose,
    isomorphic,
    retract,
    special_forms,
)
from .skew import order, power, skew_endomorphism_check, skew_tower

__all__ = [
    "AxiomReport", "GuardError", "NaryGroup", "NaryTable", "NotAGroupError", "Solvability",
    "check_axioms", "criteria_for", "identity_suite", "is_associative", "is_ij_associative",
    "long_product", "minimal_axiom_check", "solvability",
    "GroupTable", "NotAGroup", "cyclic_group",
    "HgAlgebra", "classify_cyclic", "cyclic_family", "hg_construct", "hg_decompose",
    "isomorphic", "retract", "special_forms",
    "order", "power", "skew_endomorphism_check", "skew_tower",
]
