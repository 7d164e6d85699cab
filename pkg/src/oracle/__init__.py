"""
Package: oracle
---------------
Verite terrain numerique (numpy) : matrices denses, decomposition de Pauli,
regle de Born, reconstruction d'unitaires et programmes aleatoires.
"""

from .dense import (
    BornResult,
    born_measure,
    joint_eigenspace_dimension,
    matrix_of,
    pauli_coefficients,
    pauli_decompose,
    schmidt_rank,
    stabilized_state,
    unitary_from_semantics,
    verify_arrow,
    verify_inhabitation,
)
from .fuzz import random_clifford_program, random_clifford_t_program

__all__ = [
    "BornResult",
    "born_measure",
    "joint_eigenspace_dimension",
    "matrix_of",
    "pauli_coefficients",
    "pauli_decompose",
    "random_clifford_program",
    "random_clifford_t_program",
    "schmidt_rank",
    "stabilized_state",
    "unitary_from_semantics",
    "verify_arrow",
    "verify_inhabitation",
]
