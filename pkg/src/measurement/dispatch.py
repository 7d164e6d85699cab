"""Choix de la regle de mesure selon la forme de la branche."""

from __future__ import annotations

from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch, reduce_branch
from src.errors import AlgebraError, UnsupportedAnalysis
from src.measurement.additive import (
    measure_additive_1q,
    measure_additive_2q,
    measure_additive_IZ_term,
)
from src.measurement.outcome import MeasurementOutcome, OutcomeBranch
from src.measurement.stabilizer import measure_stabilizer
from src.pauli.pauli_string import PauliString, check_qubit
from src.pauli.ring import ONE, ZERO


def _measure_IZ(b: Branch, qubit: int, *, keep_impossible: bool) -> MeasurementOutcome:
    n = b.n
    others = [q for q in range(1, n + 1) if q != qubit]
    plus_terms: list[AdditiveOperator] = []
    minus_terms: list[AdditiveOperator] = []
    for term in b.all_terms():
        plus, minus = measure_additive_IZ_term(term, qubit)
        plus_terms.append(plus.embed(others, n))
        minus_terms.append(minus.embed(others, n))

    z_q = AdditiveOperator.from_pauli(PauliString.single(n, qubit, "Z"))
    candidates = []
    for sign, terms in ((1, plus_terms), (-1, minus_terms)):
        measured = z_q if sign > 0 else -z_q
        raw = Branch(n, (measured, *terms))
        candidates.append((sign, raw, reduce_branch(raw)))

    possible = [c for c in candidates if c[2] is not None]
    if not possible:
        raise AlgebraError(f"Mesure d'un type inhabite : {b}")
    deterministic = len(possible) == 1
    branches = []
    for sign, raw, reduced in candidates:
        if reduced is None:
            if keep_impossible:
                branches.append(OutcomeBranch(sign, raw, ZERO))
            continue
        branches.append(OutcomeBranch(sign, reduced, ONE if deterministic else None))
    return MeasurementOutcome(qubit, tuple(branches))


def measure_branch(b: Branch, qubit: int, *, keep_impossible: bool = False) -> MeasurementOutcome:
    """Mesure Z du qubit ``qubit`` pour une branche quelconque.

    Ordre des regles : chaines de Pauli seules, lemme de Born a un qubit,
    theoreme a deux qubits, lemme I/Z. Toute autre forme est refusee.

    Raises:
        UnsupportedAnalysis: Forme additive hors des cas couverts.
    """
    check_qubit(qubit, b.n)
    if b.is_gottesman():
        return measure_stabilizer(b, qubit, keep_impossible=keep_impossible)
    terms = b.all_terms()
    additive = [t for t in terms if not t.is_pauli()]
    if b.n == 1 and len(terms) == 1:
        return measure_additive_1q(terms[0], keep_impossible=keep_impossible)
    if b.n == 2 and len(terms) == 2:
        return measure_additive_2q(terms[0], terms[1], qubit, keep_impossible=keep_impossible)
    try:
        return _measure_IZ(b, qubit, keep_impossible=keep_impossible)
    except UnsupportedAnalysis as exc:
        raise UnsupportedAnalysis(
            f"Mesure du qubit {qubit} non supportee pour {len(additive)} terme(s) additif(s) "
            f"sur {b.n} qubits : {exc}"
        ) from exc


__all__ = ["measure_branch"]
