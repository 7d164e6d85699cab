"""Elimination de Gauss sur GF(2) dans la representation symplectique.

Chaque chaine de Pauli est vue comme le vecteur de 2n bits x | (z << n).
Les lignes de la base sont de vraies ``PauliString`` : les produits gardent
le signe, ce qui donne directement l'appartenance signee a un groupe
stabilisateur.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from src.pauli.pauli_string import PauliString, mul


def _vector(p: PauliString) -> int:
    return p.x | (p.z << p.n)


@dataclass
class ReducedBasis:
    """Base echelonnee d'un sous-espace de Pauli.

    Attributes:
        n: Nombre de qubits.
        rows: Bit de tete -> (ligne, masque des generateurs d'origine utilises).
    """

    n: int
    rows: dict[int, tuple[PauliString, int]] = field(default_factory=dict)

    def reduce(self, p: PauliString) -> tuple[PauliString, int]:
        """Reduit ``p`` par la base.

        Returns:
            tuple[PauliString, int]: Reste et masque des generateurs multiplies.
        """
        current, combo = p, 0
        vector = _vector(current)
        while vector:
            lead = vector.bit_length() - 1
            entry = self.rows.get(lead)
            if entry is None:
                break
            row, row_combo = entry
            current = mul(current, row)
            combo ^= row_combo
            vector = _vector(current)
        return current, combo

    def insert(self, p: PauliString, combo: int) -> tuple[PauliString, int] | None:
        """Ajoute ``p`` a la base ; renvoie le reste nul (dependance) sinon None."""
        remainder, used = self.reduce(p)
        vector = _vector(remainder)
        if vector == 0:
            return remainder, combo ^ used
        # le bit de tete du reste est libre : pas de collision possible
        self.rows[vector.bit_length() - 1] = (remainder, combo ^ used)
        return None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def elements(self) -> list[PauliString]:
        return [row for _, (row, _) in sorted(self.rows.items())]


def reduce_basis(paulis: Sequence[PauliString]) -> ReducedBasis:
    if not paulis:
        raise ValueError("Liste de Pauli vide : nombre de qubits inconnu")
    basis = ReducedBasis(paulis[0].n)
    for index, p in enumerate(paulis):
        basis.insert(p, 1 << index)
    return basis


def dependency_witness(paulis: Sequence[PauliString]) -> list[int] | None:
    """Indices (0-based) d'un sous-produit non vide egal a +-I, ou None."""
    if not paulis:
        return None
    basis = ReducedBasis(paulis[0].n)
    for index, p in enumerate(paulis):
        found = basis.insert(p, 1 << index)
        if found is not None:
            _, combo = found
            return [i for i in range(len(paulis)) if (combo >> i) & 1]
    return None


def independent(paulis: Sequence[PauliString]) -> bool:
    """Vrai si aucun sous-produit non vide n'est egal a +-I^n."""
    return dependency_witness(paulis) is None


def rank(paulis: Sequence[PauliString]) -> int:
    return reduce_basis(paulis).rank if paulis else 0


def in_group(p: PauliString, generators: Sequence[PauliString]) -> int:
    """Appartenance signee au groupe engendre par des generateurs commutants.

    Returns:
        int: +1 si p est dans le groupe, -1 si -p y est, 0 sinon.
    """
    if p.is_identity():
        return {0: 1, 2: -1}.get(p.phase, 0)
    if not generators:
        return 0
    remainder, _ = reduce_basis(generators).reduce(p)
    if _vector(remainder):
        return 0
    # p . g = remainder = i^phase I  =>  p = i^phase g
    return {0: 1, 2: -1}.get(remainder.phase, 0)


def group_element(generators: Sequence[PauliString], indices: Sequence[int], n: int) -> PauliString:
    result = PauliString.identity(n)
    for index in indices:
        result = mul(result, generators[index])
    return result


def subgroup_supported_on(
    generators: Sequence[PauliString], qubits: Sequence[int]
) -> list[PauliString]:
    """Base du sous-groupe des elements agissant trivialement hors de ``qubits``.

    L'elimination commence par les colonnes exterieures : les lignes qui s'y
    annulent engendrent le sous-groupe cherche.
    """
    if not generators:
        return []
    n = generators[0].n
    inside = set(qubits)
    outside_mask = 0
    for q in range(1, n + 1):
        if q not in inside:
            outside_mask |= (1 << (q - 1)) | (1 << (q - 1 + n))
    rows: dict[int, PauliString] = {}
    kernel: list[PauliString] = []
    for p in generators:
        current = p
        while True:
            outer = _vector(current) & outside_mask
            if not outer:
                break
            lead = outer.bit_length() - 1
            if lead not in rows:
                rows[lead] = current
                current = None
                break
            current = mul(current, rows[lead])
        if current is not None and not current.is_identity():
            kernel.append(current)
    # les restes peuvent etre dependants entre eux
    if not kernel:
        return []
    basis = reduce_basis(kernel)
    return basis.elements()


__all__ = [
    "ReducedBasis",
    "dependency_witness",
    "group_element",
    "in_group",
    "independent",
    "rank",
    "reduce_basis",
    "subgroup_supported_on",
]
