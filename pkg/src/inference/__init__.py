"""
Package: inference
------------------
Semantique des portes, programmes, moteur d'inference (chemin general et
tableau de Clifford), portes controlees et borne sur le nombre de T.
"""

from .controlled import (
    additive_type_of_gate,
    controlled_additive_type,
    controlled_arrow_type,
    controlled_z_type,
    re_im_decompose,
)
from .engine import (
    CheckVerdict,
    InferenceOptions,
    InferenceResult,
    apply_gate,
    check,
    evolve_operator,
    infer,
    run_inference,
    semantics_of_program,
)
from .gates import GateSemantics, builtin_semantics, derive_Y_action, resolve_semantics
from .program import GateApp, Judgment, Measure, Program, defer_measurements
from .tcount import tcount_lower_bound

__all__ = [
    "CheckVerdict",
    "GateApp",
    "GateSemantics",
    "InferenceOptions",
    "InferenceResult",
    "Judgment",
    "Measure",
    "Program",
    "additive_type_of_gate",
    "apply_gate",
    "builtin_semantics",
    "check",
    "controlled_additive_type",
    "controlled_arrow_type",
    "controlled_z_type",
    "defer_measurements",
    "derive_Y_action",
    "evolve_operator",
    "infer",
    "re_im_decompose",
    "resolve_semantics",
    "run_inference",
    "semantics_of_program",
    "tcount_lower_bound",
]
