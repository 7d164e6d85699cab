"""
Package: pauli
--------------
Algebre exacte des chaines de Pauli avec phase et de l'anneau des
coefficients (a + b*rt2)/2^k, plus l'elimination symplectique sur GF(2).
"""

from .pauli_string import PauliString, commutes, mul, product, tensor
from .ring import HALF, INV_SQRT2, ONE, ZERO, RingCoeff, invsqrt2_scale
from .symplectic import dependency_witness, in_group, independent, subgroup_supported_on

__all__ = [
    "PauliString",
    "RingCoeff",
    "ZERO",
    "ONE",
    "HALF",
    "INV_SQRT2",
    "commutes",
    "dependency_witness",
    "in_group",
    "independent",
    "invsqrt2_scale",
    "mul",
    "product",
    "subgroup_supported_on",
    "tensor",
]
