"""
Package: frontend
-----------------
Langage des programmes types (.qt), rapport JSON et ligne de commande.
"""

from .parser import SourceFile, format_program, format_source, load_source, parse_program
from .report import Report, qtype_from_model, qtype_to_model, trace_table

__all__ = [
    "Report",
    "SourceFile",
    "format_program",
    "format_source",
    "load_source",
    "parse_program",
    "qtype_from_model",
    "qtype_to_model",
    "trace_table",
]
