"""Preparation Clifford + une porte T des types a un terme (P0 + P1)/rt2."""

from __future__ import annotations

from dataclasses import dataclass

from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch
from src.errors import SynthesisError
from src.inference.clifford_frame import evolve_paulis
from src.inference.program import GateApp, Program
from src.pauli.pauli_string import PauliString, commutes
from src.pauli.ring import INV_SQRT2
from src.synthesis.clifford import (
    SynthResult,
    certify,
    clifford_from_stabilizers,
    inverse_program,
    to_canonical_pair,
)


@dataclass(frozen=True)
class OneTShape:
    """Decomposition d'une branche : terme (P0 + P1)/rt2 et termes de Pauli restants."""

    p0: PauliString
    p1: PauliString
    rest: tuple[PauliString, ...]
    position: int


def _split_magic(term: AdditiveOperator) -> tuple[PauliString, PauliString] | None:
    if len(term) != 2:
        return None
    (p0, c0), (p1, c1) = term
    signed = []
    for p, c in ((p0, c0), (p1, c1)):
        if c == INV_SQRT2:
            signed.append(p)
        elif c == -INV_SQRT2:
            signed.append(-p)
        else:
            return None
    if commutes(signed[0], signed[1]):
        return None
    return signed[0], signed[1]


def one_t_shape(b: Branch) -> OneTShape | None:
    """Forme attendue par ``prep_clifford_plus_T``, None pour une branche de Gottesman.

    Raises:
        SynthesisError: Forme non prise en charge.
    """
    terms = b.flatten().terms
    additive = [i for i, t in enumerate(terms) if not t.is_pauli()]
    if not additive:
        return None
    if len(additive) > 1:
        raise SynthesisError(f"Forme non prise en charge : {len(additive)} termes additifs")
    position = additive[0]
    pair = _split_magic(terms[position])
    if pair is None:
        raise SynthesisError(
            f"Forme non prise en charge : {terms[position]} n'est pas (P0 + P1)/rt2"
        )
    rest = tuple(t.as_pauli() for i, t in enumerate(terms) if i != position)
    for p, term in zip(rest, (t for i, t in enumerate(terms) if i != position)):
        if not term.commutes_with(terms[position]):
            raise SynthesisError(f"Forme non prise en charge : {p} ne commute pas avec {terms[position]}")
    return OneTShape(pair[0], pair[1], rest, position)


def prep_clifford_plus_T(b: Branch) -> SynthResult:
    """Circuit Clifford + un T preparant ``b`` depuis |0...0>.

    D envoie (P0, P1) sur (X_1, Y_1) ; T^dag ramene alors le terme additif a
    X_1 et les termes restants, sans support sur le qubit 1, ne bougent pas ;
    W prepare l'intersection de Gottesman obtenue. Le circuit emis est
    ``W ; T 1 ; inverse(D)``.

    Raises:
        SynthesisError: Forme non prise en charge ou type incomplet.
    """
    shape = one_t_shape(b)
    if shape is None:
        return clifford_from_stabilizers(b.paulis())
    n = b.n
    if len(b) != n:
        raise SynthesisError(f"{len(b)} terme(s) pour {n} qubits : type incomplet")
    route = to_canonical_pair(shape.p0, shape.p1)
    rest = evolve_paulis(n, list(shape.rest), route.gates())
    for p in rest:
        if p.letter(1) != "I":
            raise SynthesisError(f"Forme non prise en charge : {p} agit sur le qubit 1")
    stabilizers = list(rest)
    stabilizers.insert(shape.position, PauliString.single(n, 1, "X"))
    prepare = clifford_from_stabilizers(stabilizers).circuit
    circuit = prepare.then(Program(n, (GateApp("T", (1,)),))).then(inverse_program(route))
    return SynthResult(circuit, (certify(circuit, Branch.zero_state(n), b),))


__all__ = ["OneTShape", "one_t_shape", "prep_clifford_plus_T"]
