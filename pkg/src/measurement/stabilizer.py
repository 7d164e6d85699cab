"""Mesure d'un qubit pour une intersection de chaines de Pauli.

Apres normalisation, trois cas :
  - un terme anticommute avec Z_q : il est retire (apres avoir ete multiplie
    dans les autres termes anticommutants) et l'issue est aleatoire ;
  - +-Z_q appartient au groupe engendre : l'issue est deterministe ;
  - sinon le type ne fixe pas l'issue : deux branches de probabilite inconnue.
"""

from __future__ import annotations

from src.algebra.additive import AdditiveOperator
from src.algebra.normal_form import normalize_paulis
from src.algebra.qtype import Branch, reduce_branch
from src.errors import AlgebraError, UnsupportedAnalysis
from src.measurement.outcome import MeasurementOutcome, OutcomeBranch
from src.pauli.pauli_string import PauliString, check_qubit, commutes, mul
from src.pauli.ring import HALF, ONE, ZERO
from src.pauli.symplectic import in_group


def _branch(n: int, paulis: list[PauliString]) -> Branch:
    return Branch(n, tuple(AdditiveOperator.from_pauli(p) for p in normalize_paulis(paulis)))


def measure_stabilizer(
    b: Branch, qubit: int, *, keep_impossible: bool = False
) -> MeasurementOutcome:
    """Type post-mesure (base Z) du qubit ``qubit`` d'une branche de Gottesman.

    Args:
        b: Branche dont tous les termes sont des chaines +-1.
        qubit: Qubit mesure (1-based).
        keep_impossible: Conserve l'issue de probabilite nulle (type contradictoire).

    Raises:
        QubitIndexError: Qubit hors de 1..n.
        UnsupportedAnalysis: Branche contenant un terme additif.
        AlgebraError: Branche inhabitee.
    """
    check_qubit(qubit, b.n)
    if not b.is_gottesman():
        raise UnsupportedAnalysis(f"Regle des stabilisateurs appliquee a un type additif : {b}")
    reduced = reduce_branch(b)
    if reduced is None:
        raise AlgebraError(f"Mesure d'un type inhabite : {b}")
    n = b.n
    rows = normalize_paulis(reduced.paulis())
    z_q = PauliString.single(n, qubit, "Z")

    anticommuting = [i for i, row in enumerate(rows) if not commutes(row, z_q)]
    if anticommuting:
        pivot_index = anticommuting[0]
        pivot = rows[pivot_index]
        rest = [
            mul(row, pivot) if i in anticommuting else row
            for i, row in enumerate(rows)
            if i != pivot_index
        ]
        branches = tuple(
            OutcomeBranch(sign, _branch(n, [z_q if sign > 0 else -z_q, *rest]), HALF)
            for sign in (1, -1)
        )
        return MeasurementOutcome(qubit, branches)

    sign = in_group(z_q, rows)
    if sign != 0:
        exposed = z_q if sign > 0 else -z_q
        # sZ_q d'abord : le terme devenu redondant disparait
        merged = reduce_branch(Branch.from_paulis([exposed, *rows]))
        certain = OutcomeBranch(sign, _branch(n, merged.paulis()), ONE)
        outcomes = [certain]
        if keep_impossible:
            contradiction = Branch.from_paulis([-exposed, *rows])
            outcomes.append(OutcomeBranch(-sign, contradiction, ZERO))
        outcomes.sort(key=lambda o: -o.sign)
        return MeasurementOutcome(qubit, tuple(outcomes))

    branches = tuple(
        OutcomeBranch(sign, _branch(n, [z_q if sign > 0 else -z_q, *rows]), None)
        for sign in (1, -1)
    )
    return MeasurementOutcome(qubit, branches)


__all__ = ["measure_stabilizer"]
