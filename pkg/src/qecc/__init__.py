"""
Package: qecc
-------------
Codes stabilisateurs (definition, fichier de code, Steane), types logiques,
verification des encodeurs et de la transversalite des portes logiques.
"""

from .codes import CodeDefinition, StabilizerCode, load_code, make_code, parse_code_text, steane_code
from .logical import LogicalType, logical_tensor, logical_type
from .transversal import (
    EncoderVerdict,
    LogicalDefect,
    TransversalityVerdict,
    encoder_check,
    transversal_program,
    transversality_check,
)

__all__ = [
    "CodeDefinition",
    "EncoderVerdict",
    "LogicalDefect",
    "LogicalType",
    "StabilizerCode",
    "TransversalityVerdict",
    "encoder_check",
    "load_code",
    "logical_tensor",
    "logical_type",
    "make_code",
    "parse_code_text",
    "steane_code",
    "transversal_program",
    "transversality_check",
]
