"""Hierarchie d'exceptions du verificateur.

Les erreurs d'entree (types mal formes, programmes invalides) derivent de
``ValueError`` ; les analyses hors du formalisme derivent de ``RuntimeError``
et sont signalees comme "non supportees" par la CLI.
"""

from __future__ import annotations

from typing import Any


class TypeCheckError(Exception):
    """Erreur de base de toutes les analyses."""


class AlgebraError(TypeCheckError, ValueError):
    """Entree algebrique invalide (longueurs, commutation, independance)."""

    def __init__(self, message: str, *, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


class PauliLengthError(AlgebraError):
    """Deux chaines de Pauli de longueurs differentes."""


class QubitIndexError(AlgebraError, IndexError):
    """Indice de qubit hors de l'intervalle 1..n."""


class NonCommutingTermsError(AlgebraError):
    """Intersection contenant deux termes qui anticommutent (type inhabite)."""


class DependentTermsError(AlgebraError):
    """Termes dependants : le temoin est la liste d'indices dont le produit vaut +-I."""


class InvalidAdditiveError(AlgebraError):
    """Operateur additif qui n'est pas a la fois unitaire et hermitien."""


class CodeDefinitionError(AlgebraError):
    """Definition de code stabilisateur incoherente."""


class SynthesisError(AlgebraError):
    """Entree hors du domaine d'une procedure de synthese."""


class UnknownGateError(TypeCheckError, LookupError):
    """Nom de porte inconnu."""


class DslSyntaxError(TypeCheckError, ValueError):
    """Erreur de syntaxe dans un programme ou un type, avec position."""

    def __init__(self, message: str, *, line: int = 0, column: int = 0) -> None:
        location = f"ligne {line}, colonne {column}: " if line else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column


class UnsupportedAnalysis(TypeCheckError, RuntimeError):
    """Analyse hors du formalisme couvert (rapportee, jamais approximee)."""


class OutsideRingError(UnsupportedAnalysis):
    """Coefficient qui ne s'ecrit pas (a + b*rt2)/2^k."""


class SummandCapExceeded(UnsupportedAnalysis):
    """Trop de termes produits par une porte."""

    def __init__(self, message: str, *, gate_index: int | None = None) -> None:
        super().__init__(message)
        self.gate_index = gate_index


class OracleLimitError(TypeCheckError, ValueError):
    """Nombre de qubits superieur a la limite de l'oracle dense."""


class ZeroProbabilityError(TypeCheckError, ValueError):
    """Etat post-mesure demande pour un resultat de probabilite nulle."""
