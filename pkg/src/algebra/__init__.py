"""
Package: algebra
----------------
Grammaire des types (operateurs additifs, intersections, unions, annotations
de separabilite), forme normale, egalite et jugements de separabilite.
"""

from .additive import AdditiveOperator, PauliExpansion, is_valid_additive
from .normal_form import normalize, types_equal, union_simplify
from .qtype import Branch, Partition, QType, intersect, lint_branch, reduce_branch, validate_qtype
from .separability import SeparabilityResult, separable_single, separable_subset
from .syntax import format_operator, format_qtype, parse_type

__all__ = [
    "AdditiveOperator",
    "Branch",
    "Partition",
    "PauliExpansion",
    "QType",
    "SeparabilityResult",
    "format_operator",
    "format_qtype",
    "intersect",
    "is_valid_additive",
    "lint_branch",
    "normalize",
    "parse_type",
    "reduce_branch",
    "separable_single",
    "separable_subset",
    "types_equal",
    "union_simplify",
    "validate_qtype",
]
