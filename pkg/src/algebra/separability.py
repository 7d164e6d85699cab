"""Jugements de separabilite sur les branches de Gottesman.

Une branche est separable selon (K, K complementaire) quand le sous-groupe
de ses elements supportes sur K a exactement |K| generateurs independants :
la restriction a K fixe alors un etat pur, non intrique avec le reste.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from src.algebra.additive import AdditiveOperator
from src.algebra.normal_form import normalize_paulis
from src.algebra.qtype import Branch, Partition, reduce_branch
from src.errors import AlgebraError, UnsupportedAnalysis
from src.pauli.pauli_string import PauliString, check_qubit
from src.pauli.symplectic import in_group, subgroup_supported_on


@dataclass(frozen=True, slots=True)
class SeparabilityResult:
    """Decision de separabilite et branche factorisee.

    Attributes:
        separable: Decision.
        qubits: Ensemble K teste, trie.
        branch: Branche reecrite avec l'annotation (U)_K, ou None.
        reason: Explication en cas d'echec.
    """

    separable: bool
    qubits: tuple[int, ...]
    branch: Branch | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.separable


def separable_single(b: Branch, k: int) -> bool:
    """Vrai si le qubit k porte seul un terme non trivial (au sens du groupe)."""
    check_qubit(k, b.n)
    if b.is_gottesman():
        generators = reduce_branch(b)
        if generators is None:
            return False
        group = generators.paulis()
        return any(
            in_group(PauliString.single(b.n, k, letter), group) != 0 for letter in "XYZ"
        )
    # termes additifs : seule la forme I..U..I explicite est reconnue
    return any(_supported_on(term, {k}) for term in b.all_terms())


def _supported_on(term: AdditiveOperator, qubits: set[int]) -> bool:
    return all(set(p.support) <= qubits for p, _ in term) and not term.is_identity()


def _local_branch(paulis: Iterable[PauliString], qubits: tuple[int, ...]) -> Branch:
    restricted = [p.restrict(qubits) for p in paulis]
    normal = normalize_paulis(restricted)
    return Branch(len(qubits), tuple(AdditiveOperator.from_pauli(p) for p in normal))


def separable_subset(b: Branch, qubits: Iterable[int]) -> SeparabilityResult:
    """Decide la separabilite selon (K, K complementaire) et factorise la branche.

    Args:
        b: Branche de Gottesman.
        qubits: Ensemble K (1-based).

    Returns:
        SeparabilityResult: Branche annotee ``(U)@K`` en cas de succes ; si le
        complementaire se factorise aussi, il recoit sa propre annotation.
    """
    chosen = tuple(sorted(set(qubits)))
    if not chosen:
        raise AlgebraError("Ensemble de qubits vide")
    for q in chosen:
        check_qubit(q, b.n)
    if not b.is_gottesman():
        raise UnsupportedAnalysis("Separabilite des branches additives non prise en charge")
    if len(chosen) == b.n:
        return SeparabilityResult(True, chosen, b)

    reduced = reduce_branch(b)
    if reduced is None:
        return SeparabilityResult(False, chosen, None, "branche contradictoire")
    generators = reduced.paulis()
    inner = subgroup_supported_on(generators, chosen)
    if len(inner) < len(chosen):
        return SeparabilityResult(
            False,
            chosen,
            None,
            f"seulement {len(inner)} terme(s) independant(s) supporte(s) sur "
            f"{set(chosen)} pour {len(chosen)} qubit(s)",
        )

    rest = tuple(q for q in range(1, b.n + 1) if q not in chosen)
    partitions = [Partition(chosen, _local_branch(inner, chosen))]
    outer = subgroup_supported_on(generators, rest)
    if outer and len(inner) + len(outer) == len(generators):
        partitions.append(Partition(rest, _local_branch(outer, rest)))
        return SeparabilityResult(True, chosen, Branch(b.n, (), tuple(partitions)))

    # termes residuels : ceux qui ne sont pas deja engendres par U_K
    group = list(inner)
    free: list[AdditiveOperator] = []
    for p in generators:
        if in_group(p, group) == 0:
            group.append(p)
            free.append(AdditiveOperator.from_pauli(p))
    return SeparabilityResult(True, chosen, Branch(b.n, tuple(free), tuple(partitions)))


__all__ = ["SeparabilityResult", "separable_single", "separable_subset"]
