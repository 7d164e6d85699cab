"""Grammaire des types : branches (intersections), unions et annotations.

Une ``Branch`` est l'intersection de ses termes (operateurs additifs, les
types de Gottesman etant les termes a un seul mot de coefficient +-1). Les
annotations de separabilite ``Partition`` portent une sous-branche locale a
un ensemble de qubits. Un ``QType`` est l'union disjointe de ses branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from src.algebra.additive import AdditiveOperator, is_valid_additive, require_valid_additive
from src.errors import AlgebraError, PauliLengthError
from src.pauli.pauli_string import PauliString, check_qubit, commutes
from src.pauli.symplectic import in_group


@dataclass(frozen=True, slots=True)
class Partition:
    """Annotation (U)_K : sous-branche ``branch`` posee sur les qubits ``qubits``."""

    qubits: tuple[int, ...]
    branch: Branch

    def __post_init__(self) -> None:
        if len(self.qubits) != self.branch.n:
            raise PauliLengthError(
                f"Partition sur {len(self.qubits)} qubits pour une branche de {self.branch.n}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise AlgebraError(f"Qubits repetes dans la partition {self.qubits}")

    def embedded_terms(self, n: int) -> tuple[AdditiveOperator, ...]:
        return tuple(t.embed(self.qubits, n) for t in self.branch.all_terms())


@dataclass(frozen=True, slots=True)
class Branch:
    """Intersection de termes sur ``n`` qubits.

    Attributes:
        n: Nombre de qubits.
        terms: Termes libres, dans l'ordre d'ecriture.
        partitions: Annotations de separabilite (ensembles disjoints).
    """

    n: int
    terms: tuple[AdditiveOperator, ...] = ()
    partitions: tuple[Partition, ...] = field(default=())

    def __post_init__(self) -> None:
        for term in self.terms:
            if term.n != self.n:
                raise PauliLengthError(f"Terme {term} sur {term.n} qubits, branche sur {self.n}")
        seen: set[int] = set()
        for part in self.partitions:
            for q in part.qubits:
                check_qubit(q, self.n)
                if q in seen:
                    raise AlgebraError(f"Partitions non disjointes (qubit {q})")
                seen.add(q)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_paulis(cls, paulis: Sequence[PauliString]) -> Branch:
        if not paulis:
            raise AlgebraError("Branche vide : nombre de qubits inconnu")
        return cls(paulis[0].n, tuple(AdditiveOperator.from_pauli(p) for p in paulis))

    @classmethod
    def from_labels(cls, labels: Sequence[str]) -> Branch:
        return cls.from_paulis([PauliString.from_label(label) for label in labels])

    @classmethod
    def top(cls, n: int) -> Branch:
        """Branche sans contrainte (tous les etats)."""
        return cls(n)

    @classmethod
    def zero_state(cls, n: int) -> Branch:
        """Z_1 & ... & Z_n, type de |0...0>."""
        return cls.from_paulis([PauliString.single(n, q, "Z") for q in range(1, n + 1)])

    # ------------------------------------------------------------------
    # Acces
    # ------------------------------------------------------------------

    def all_terms(self) -> tuple[AdditiveOperator, ...]:
        """Termes des partitions (plonges sur n qubits) puis termes libres."""
        embedded: list[AdditiveOperator] = []
        for part in sorted(self.partitions, key=lambda p: min(p.qubits)):
            embedded.extend(part.embedded_terms(self.n))
        return tuple(embedded) + self.terms

    def flatten(self) -> Branch:
        if not self.partitions:
            return self
        return Branch(self.n, self.all_terms())

    def is_gottesman(self) -> bool:
        return all(t.is_pauli() for t in self.all_terms())

    def paulis(self) -> list[PauliString]:
        """Termes sous forme de chaines signees ; exige une branche de Gottesman."""
        result = []
        for term in self.all_terms():
            p = term.as_pauli()
            if p is None:
                raise AlgebraError(f"Le terme {term} n'est pas une chaine de Pauli", witness=term)
            result.append(p)
        return result

    def with_terms(self, terms: Iterable[AdditiveOperator]) -> Branch:
        return Branch(self.n, tuple(terms))

    def __len__(self) -> int:
        return len(self.all_terms())

    def __str__(self) -> str:
        from src.algebra.syntax import format_branch

        return format_branch(self)


@dataclass(frozen=True, slots=True)
class QType:
    """Union disjointe non vide de branches."""

    branches: tuple[Branch, ...]

    def __post_init__(self) -> None:
        if not self.branches:
            raise AlgebraError("Un type doit contenir au moins une branche")
        n = self.branches[0].n
        for branch in self.branches:
            if branch.n != n:
                raise PauliLengthError(f"Branches sur {n} et {branch.n} qubits")

    @classmethod
    def single(cls, branch: Branch) -> QType:
        return cls((branch,))

    @classmethod
    def of(cls, *branches: Branch) -> QType:
        return cls(tuple(branches))

    @classmethod
    def from_labels(cls, *labels: str) -> QType:
        """Type a une seule branche, ex. ``QType.from_labels("XXI", "ZZI")``."""
        return cls.single(Branch.from_labels(labels))

    @property
    def n(self) -> int:
        return self.branches[0].n

    def is_deterministic(self) -> bool:
        return len(self.branches) == 1

    def map(self, fn) -> QType:
        return QType(tuple(fn(b) for b in self.branches))

    def __str__(self) -> str:
        from src.algebra.syntax import format_qtype

        return format_qtype(self)


# ----------------------------------------------------------------------
# Reduction et diagnostics
# ----------------------------------------------------------------------


def reduce_branch(b: Branch) -> Branch | None:
    """Supprime les termes redondants ; None si la branche est contradictoire.

    Un terme de Gottesman deja present (au signe pres) dans le groupe engendre
    par les termes gardes est redondant ; de signe oppose, il rend la branche
    inhabitee. Deux chaines qui anticommutent rendent aussi la branche vide.
    Les termes additifs sont dedoublonnes ; m et -m ensemble sont contradictoires.
    """
    flat = b.flatten()
    kept: list[AdditiveOperator] = []
    group: list[PauliString] = []
    additive: list[AdditiveOperator] = []
    for term in flat.terms:
        p = term.as_pauli()
        if p is None:
            if -term in additive:
                return None
            if term not in additive:
                additive.append(term)
                kept.append(term)
            continue
        if any(not commutes(p, q) for q in group):
            return None
        sign = in_group(p, group)
        if sign == 1:
            continue
        if sign == -1:
            return None
        group.append(p)
        kept.append(term)
    return flat.with_terms(kept)


def lint_branch(b: Branch) -> list[str]:
    """Diagnostics de type inhabite : paires non commutantes, termes invalides."""
    diagnostics = []
    terms = b.all_terms()
    for index, term in enumerate(terms, start=1):
        if not is_valid_additive(term):
            diagnostics.append(f"terme {index} ({term}) : carre different de I")
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if not terms[i].commutes_with(terms[j]):
                diagnostics.append(
                    f"termes {i + 1} et {j + 1} ({terms[i]}, {terms[j]}) ne commutent pas : "
                    "intersection vide"
                )
    if b.is_gottesman() and not diagnostics and reduce_branch(b) is None:
        diagnostics.append("termes contradictoires : -I appartient au groupe engendre")
    return diagnostics


def validate_qtype(t: QType, report: Callable[[str], None] | None = None) -> list[str]:
    """Controle de validite d'un type lu en entree.

    Un terme additif dont le carre n'est pas I est une erreur. Une branche
    inhabitee (termes qui anticommutent ou contradictoires) est seulement
    signalee : chaque diagnostic est transmis a ``report`` avec le prefixe
    ``[AVERTISSEMENT]``.

    Raises:
        InvalidAdditiveError: Un terme n'est pas un type additif valide.
    """
    diagnostics = []
    for number, branch in enumerate(t.branches, start=1):
        for term in branch.all_terms():
            require_valid_additive(term)
        prefix = f"branche {number} : " if len(t.branches) > 1 else ""
        diagnostics.extend(f"{prefix}{d}" for d in lint_branch(branch))
    if report is not None:
        for diagnostic in diagnostics:
            report(f"[AVERTISSEMENT] Type inhabite : {diagnostic}")
    return diagnostics


def intersect(a: QType, b: QType) -> QType:
    """Intersection distribuee sur les unions ; les branches vides disparaissent."""
    from src.algebra.normal_form import union_simplify

    if a.n != b.n:
        raise PauliLengthError(f"Types sur {a.n} et {b.n} qubits")
    branches = []
    for left in a.branches:
        for right in b.branches:
            merged = Branch(a.n, left.all_terms() + right.all_terms())
            reduced = reduce_branch(merged)
            if reduced is not None:
                branches.append(reduced)
    if not branches:
        raise AlgebraError(f"Intersection inhabitee : ({a}) & ({b})")
    return union_simplify(QType(tuple(branches)))


__all__ = [
    "Branch",
    "Partition",
    "QType",
    "intersect",
    "lint_branch",
    "reduce_branch",
    "validate_qtype",
]
