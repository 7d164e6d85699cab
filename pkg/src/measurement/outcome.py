"""Resultat d'une mesure en base Z : une branche typee par issue."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from src.algebra.qtype import Branch, QType
from src.errors import AlgebraError
from src.pauli.ring import RingCoeff

# Probabilite exacte, numerique, ou inconnue (type non complet)
Probability = Union[RingCoeff, float, None]


@dataclass(frozen=True, slots=True)
class OutcomeBranch:
    """Issue ``sign`` (+1 ou -1) de la mesure et type de l'etat post-mesure.

    Attributes:
        sign: +1 pour l'issue 0 (Z), -1 pour l'issue 1 (-Z).
        branch: Type de l'etat apres la mesure.
        probability: Probabilite de l'issue, None si le type ne la fixe pas.
    """

    sign: int
    branch: Branch
    probability: Probability = None

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise AlgebraError(f"Issue de mesure invalide : {self.sign}")

    def is_impossible(self) -> bool:
        p = self.probability
        if isinstance(p, RingCoeff):
            return p.is_zero()
        return p is not None and p == 0.0


@dataclass(frozen=True, slots=True)
class MeasurementOutcome:
    """Issues de la mesure du qubit ``qubit``, +Z d'abord puis -Z."""

    qubit: int
    branches: tuple[OutcomeBranch, ...]

    def __post_init__(self) -> None:
        if not self.branches:
            raise AlgebraError(f"Mesure du qubit {self.qubit} sans aucune issue")

    def as_qtype(self) -> QType:
        return QType(tuple(o.branch for o in self.branches))

    def probabilities(self) -> dict[int, Probability]:
        """Probabilites par issue (+1 / -1) ; issue absente = probabilite nulle."""
        return {o.sign: o.probability for o in self.branches}

    def outcome(self, sign: int) -> OutcomeBranch | None:
        return next((o for o in self.branches if o.sign == sign), None)

    def is_deterministic(self) -> bool:
        return sum(1 for o in self.branches if not o.is_impossible()) == 1

    def __str__(self) -> str:
        parts = []
        for o in self.branches:
            outcome = "+" if o.sign > 0 else "-"
            prob = "?" if o.probability is None else str(o.probability)
            parts.append(f"[{outcome}] p={prob} : {o.branch}")
        return f"MEAS {self.qubit} -> " + " | ".join(parts)


__all__ = ["MeasurementOutcome", "OutcomeBranch", "Probability"]
