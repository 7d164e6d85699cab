"""Forme normale des intersections de Gottesman, egalite et simplification des unions."""

from __future__ import annotations

from typing import Hashable, Sequence

from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch, Partition, QType, reduce_branch
from src.errors import DependentTermsError, NonCommutingTermsError, UnsupportedAnalysis
from src.pauli.pauli_string import PauliString, commutes, mul
from src.pauli.symplectic import dependency_witness, in_group


def check_terms(paulis: Sequence[PauliString]) -> None:
    """Verifie commutation deux a deux et independance.

    Raises:
        NonCommutingTermsError: Temoin = couple d'indices (0-based).
        DependentTermsError: Temoin = indices dont le produit vaut +-I.
    """
    for i in range(len(paulis)):
        for j in range(i + 1, len(paulis)):
            if not commutes(paulis[i], paulis[j]):
                raise NonCommutingTermsError(
                    f"{paulis[i]} et {paulis[j]} anticommutent : type inhabite",
                    witness=(i, j),
                )
    witness = dependency_witness(paulis)
    if witness is not None:
        product = PauliString.identity(paulis[0].n)
        for index in witness:
            product = mul(product, paulis[index])
        labels = " * ".join(str(paulis[i]) for i in witness)
        raise DependentTermsError(
            f"Termes dependants : {labels} = {product}", witness=witness
        )


def normalize_paulis(paulis: Sequence[PauliString]) -> list[PauliString]:
    """Forme echelonnee par pivots X puis Z, qubit par qubit."""
    if not paulis:
        return []
    check_terms(paulis)
    n = paulis[0].n
    rows = list(paulis)
    pivot_of: dict[int, tuple[int, int]] = {}
    for q in range(n):
        bit = 1 << q
        for kind, plane in ((0, "x"), (1, "z")):
            chosen = next(
                (
                    j
                    for j in range(len(rows))
                    if j not in pivot_of and getattr(rows[j], plane) & bit
                ),
                None,
            )
            if chosen is None:
                continue
            pivot_of[chosen] = (q, kind)
            pivot = rows[chosen]
            for i in range(len(rows)):
                if i != chosen and getattr(rows[i], plane) & bit:
                    rows[i] = mul(rows[i], pivot)
            break
    order = sorted(range(len(rows)), key=lambda i: pivot_of.get(i, (n, 2)))
    return [rows[i] for i in order]


def normalize(b: Branch) -> Branch:
    """Forme normale d'une branche de Gottesman, annotations conservees.

    Raises:
        NonCommutingTermsError: Deux termes anticommutent.
        DependentTermsError: Un sous-produit des termes vaut +-I.
        UnsupportedAnalysis: La branche contient un terme additif.
    """
    if not b.is_gottesman():
        raise UnsupportedAnalysis(
            f"Pas de forme normale pour les intersections additives : {b}"
        )
    # preconditions sur l'ensemble complet, annotations comprises
    if len(b):
        check_terms(b.paulis())
    partitions = tuple(
        Partition(part.qubits, normalize(part.branch)) for part in b.partitions
    )
    free = [t.as_pauli() for t in b.terms]
    terms = tuple(AdditiveOperator.from_pauli(p) for p in normalize_paulis(free))
    return Branch(b.n, terms, partitions)


def _branch_key(b: Branch) -> Hashable:
    reduced = reduce_branch(b)
    if reduced is None:
        return ("vide", b.n)
    paulis = [t.as_pauli() for t in reduced.terms if t.is_pauli()]
    additive = sorted(
        (t for t in reduced.terms if not t.is_pauli()), key=lambda t: repr(t.terms)
    )
    normal = normalize_paulis(paulis)
    return (
        b.n,
        tuple((p.x, p.z, p.phase) for p in normal),
        tuple(t.terms for t in additive),
    )


def canonical_key(t: QType) -> frozenset:
    """Cle invariante : ensemble des formes normales des branches."""
    return frozenset(_branch_key(b) for b in t.branches)


def types_equal(a: QType, b: QType) -> bool:
    """Egalite par formes normales, insensible a l'ordre des branches.

    Les termes redondants sont retires avant normalisation ; les termes
    additifs sont compares tels quels (ordre canonique des mots).
    """
    if a.n != b.n:
        return False
    return canonical_key(a) == canonical_key(b)


def _is_subtype(small: Branch, large: Branch) -> bool:
    """Vrai si tout etat de ``small`` habite ``large`` (branches de Gottesman)."""
    group = small.paulis()
    return all(in_group(p, group) == 1 for p in large.paulis())


def union_simplify(t: QType) -> QType:
    """Fusionne les branches egales et absorbe les sous-types.

    Une branche de Gottesman dont le groupe contient tous les termes d'une
    autre branche en est un sous-type et disparait de l'union.
    """
    kept: list[Branch] = []
    keys: list[Hashable] = []
    for branch in t.branches:
        reduced = reduce_branch(branch)
        if reduced is None:
            continue
        key = _branch_key(reduced)
        if key in keys:
            continue
        kept.append(branch if len(reduced) == len(branch) else reduced)
        keys.append(key)
    if not kept:
        return t
    result = []
    for index, branch in enumerate(kept):
        absorbed = branch.is_gottesman() and any(
            other_index != index
            and other.is_gottesman()
            and _is_subtype(branch, other)
            for other_index, other in enumerate(kept)
        )
        if not absorbed:
            result.append(branch)
    return QType(tuple(result))


__all__ = [
    "canonical_key",
    "check_terms",
    "normalize",
    "normalize_paulis",
    "types_equal",
    "union_simplify",
]
