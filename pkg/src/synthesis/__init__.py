"""
Package: synthesis
------------------
Circuits a partir de types : preparation de Clifford d'un type de Gottesman
complet, 2-transitivite du groupe de Clifford, preparation Clifford + un T.
"""

from .clifford import (
    SynthResult,
    canonical_pair,
    clifford_from_stabilizers,
    inverse_program,
    two_transitive_clifford,
)
from .one_t import one_t_shape, prep_clifford_plus_T

__all__ = [
    "SynthResult",
    "canonical_pair",
    "clifford_from_stabilizers",
    "inverse_program",
    "one_t_shape",
    "prep_clifford_plus_T",
    "two_transitive_clifford",
]
