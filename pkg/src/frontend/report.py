"""Schemas Pydantic du rapport JSON et tables pandas de la ligne de commande."""

from __future__ import annotations

from typing import Any

import pandas as pd
from pydantic import BaseModel, Field, field_validator
from pydantic.config import ConfigDict

import config
from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch, Partition, QType
from src.algebra.syntax import format_qtype
from src.inference.engine import InferenceResult
from src.measurement.outcome import MeasurementOutcome
from src.pauli.pauli_string import PauliString
from src.pauli.ring import RingCoeff

VERDICTS = ("ok", "echec", "non_supporte", "erreur")
TRACE_COLUMNS = ["etape", "instruction", "type"]


class RingCoeffModel(BaseModel):
    """Coefficient exact (a + b*rt2) / 2^k."""

    a: int
    b: int = 0
    k: int = 0

    @classmethod
    def of(cls, c: RingCoeff) -> RingCoeffModel:
        a, b, k = c.to_triple()
        return cls(a=a, b=b, k=k)

    def to_ring(self) -> RingCoeff:
        return RingCoeff(self.a, self.b, self.k)


class TermModel(BaseModel):
    word: str
    coeff: RingCoeffModel


class PartitionModel(BaseModel):
    qubits: list[int]
    branch: BranchModel


class BranchModel(BaseModel):
    """Branche : termes libres (sommes de mots) et partitions."""

    n: int
    terms: list[list[TermModel]] = Field(default_factory=list)
    partitions: list[PartitionModel] = Field(default_factory=list)


class QTypeModel(BaseModel):
    """Type complet ; ``text`` n'est qu'un affichage, les valeurs font foi."""

    n: int
    branches: list[BranchModel]
    text: str = ""


class ProbabilityModel(BaseModel):
    qubit: int
    sign: int
    probability: RingCoeffModel | float | None = None


class TraceEntry(BaseModel):
    step: int = Field(alias="etape")
    instruction: str
    qtype: QTypeModel = Field(alias="type")

    model_config = ConfigDict(populate_by_name=True)


class Report(BaseModel):
    """Rapport d'une commande, rendu en JSON par ``--json``.

    Attributs:
        schema_version: Version du schema.
        command: Sous-commande executee.
        verdict: ``ok``, ``echec``, ``non_supporte`` ou ``erreur``.
        inferred: Type infere.
        expected: Type attendu (``check``).
        trace: Type apres chaque instruction (``--trace``).
        diagnostics: Avertissements et erreurs du journal.
        tbound: Borne inferieure sur le nombre de T.
        probabilities: Probabilites des issues de mesure.
        details: Informations propres a la commande.
    """

    schema_version: str = config.JSON_SCHEMA_VERSION
    command: str
    verdict: str = "ok"
    inferred: QTypeModel | None = None
    expected: QTypeModel | None = None
    trace: list[TraceEntry] | None = None
    diagnostics: list[str] = Field(default_factory=list)
    tbound: int | None = None
    probabilities: list[ProbabilityModel] | None = None
    details: dict[str, Any] = Field(default_factory=dict)

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("verdict", mode="before")
    @classmethod
    def known_verdict(cls, value: Any) -> Any:
        if value not in VERDICTS:
            raise ValueError(f"verdict inconnu : {value}")
        return value

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True, by_alias=True)


PartitionModel.model_rebuild()


# ----------------------------------------------------------------------
# Conversions exactes
# ----------------------------------------------------------------------


def operator_to_model(m: AdditiveOperator) -> list[TermModel]:
    return [TermModel(word=p.word, coeff=RingCoeffModel.of(c)) for p, c in m]


def operator_from_model(n: int, terms: list[TermModel]) -> AdditiveOperator:
    return AdditiveOperator.from_terms(
        n, [(PauliString.from_label(t.word), t.coeff.to_ring()) for t in terms]
    )


def branch_to_model(b: Branch) -> BranchModel:
    return BranchModel(
        n=b.n,
        terms=[operator_to_model(t) for t in b.terms],
        partitions=[
            PartitionModel(qubits=list(part.qubits), branch=branch_to_model(part.branch))
            for part in b.partitions
        ],
    )


def branch_from_model(model: BranchModel) -> Branch:
    return Branch(
        model.n,
        tuple(operator_from_model(model.n, t) for t in model.terms),
        tuple(
            Partition(tuple(part.qubits), branch_from_model(part.branch))
            for part in model.partitions
        ),
    )


def qtype_to_model(t: QType) -> QTypeModel:
    return QTypeModel(n=t.n, branches=[branch_to_model(b) for b in t.branches], text=format_qtype(t))


def qtype_from_model(model: QTypeModel) -> QType:
    """Reconstruit le type a l'identique (coefficients exacts)."""
    return QType(tuple(branch_from_model(b) for b in model.branches))


def probability_models(outcomes: tuple[MeasurementOutcome, ...]) -> list[ProbabilityModel]:
    models = []
    for outcome in outcomes:
        for branch in outcome.branches:
            p = branch.probability
            value = RingCoeffModel.of(p) if isinstance(p, RingCoeff) else p
            models.append(ProbabilityModel(qubit=outcome.qubit, sign=branch.sign, probability=value))
    return models


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------


def trace_table(result: InferenceResult) -> pd.DataFrame:
    """Une ligne par instruction : etape, instruction, type obtenu."""
    rows = [
        {"etape": step.index, "instruction": step.instruction, "type": format_qtype(step.qtype)}
        for step in result.trace
    ]
    return pd.DataFrame(rows, columns=TRACE_COLUMNS)


def trace_entries(result: InferenceResult) -> list[TraceEntry]:
    return [
        TraceEntry(step=step.index, instruction=step.instruction, qtype=qtype_to_model(step.qtype))
        for step in result.trace
    ]


__all__ = [
    "BranchModel",
    "ProbabilityModel",
    "QTypeModel",
    "Report",
    "RingCoeffModel",
    "TRACE_COLUMNS",
    "TraceEntry",
    "qtype_from_model",
    "qtype_to_model",
    "trace_entries",
    "trace_table",
]
