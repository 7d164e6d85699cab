"""Synthese de circuits de Clifford a partir de types de Gottesman.

Les circuits sont construits par elimination : on cherche d'abord un circuit
F qui envoie les termes demandes sur Z_1, ..., Z_n, puis on emet son inverse.
Toutes les images sont calculees par le tableau de ``clifford_frame``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Sequence

from src.algebra.normal_form import check_terms, types_equal
from src.algebra.qtype import Branch, QType
from src.errors import AlgebraError, SynthesisError
from src.inference.clifford_frame import evolve_paulis
from src.inference.engine import infer
from src.inference.program import GateApp, Judgment, Measure, Program
from src.pauli.pauli_string import PauliString, commutes

_INVERSE_NAMES: Final[dict[str, str]] = {
    "I": "I",
    "X": "X",
    "Y": "Y",
    "Z": "Z",
    "H": "H",
    "S": "Sdg",
    "Sdg": "S",
    "T": "Tdg",
    "Tdg": "T",
    "CNOT": "CNOT",
    "CZ": "CZ",
}

# Signe a corriger -> lettre de Pauli sur le qubit 1, pour le couple (X_1, Y_1)
_ANTICOMMUTING_FIX: Final[dict[tuple[bool, bool], str]] = {
    (True, False): "Y",
    (False, True): "X",
    (True, True): "Z",
}


@dataclass(frozen=True)
class SynthResult:
    """Circuit emis et jugements re-derives par l'inference.

    Attributes:
        circuit: Programme emis.
        certificates: Jugements ``circuit : entree -> sortie`` verifies.
    """

    circuit: Program
    certificates: tuple[Judgment, ...]

    @property
    def certificate(self) -> Judgment:
        return self.certificates[0]

    def gate_count(self, *names: str) -> int:
        """Nombre de portes, eventuellement restreint a ``names``."""
        gates = self.circuit.gates()
        if not names:
            return len(gates)
        wanted = {name.upper() for name in names}
        return sum(1 for g in gates if g.name.upper() in wanted)


def inverse_program(program: Program) -> Program:
    """Programme inverse : ordre renverse, S <-> Sdg, T <-> Tdg.

    Raises:
        SynthesisError: Mesure ou porte sans inverse connu.
    """
    statements = []
    for statement in reversed(program.expand().statements):
        if isinstance(statement, Measure):
            raise SynthesisError("Un programme avec mesures n'est pas inversible")
        name = _INVERSE_NAMES.get(statement.name)
        if name is None:
            raise SynthesisError(f"Pas d'inverse connu pour {statement.name}")
        statements.append(GateApp(name, statement.qubits))
    return Program(program.n, tuple(statements))


def _swap(a: int, b: int) -> list[GateApp]:
    return [GateApp("CNOT", (a, b)), GateApp("CNOT", (b, a)), GateApp("CNOT", (a, b))]


def _to_x_basis(p: PauliString, qubits: Sequence[int]) -> list[GateApp]:
    """H sur les Z, Sdg sur les Y : chaque lettre de ``qubits`` devient X."""
    gates = []
    for q in qubits:
        letter = p.letter(q)
        if letter == "Z":
            gates.append(GateApp("H", (q,)))
        elif letter == "Y":
            gates.append(GateApp("Sdg", (q,)))
    return gates


def _single_z_gates(p: PauliString) -> tuple[list[GateApp], int]:
    """Portes envoyant p sur +-Z_q, q premier qubit du support.

    Seuls les qubits du support de p sont touches.
    """
    support = p.support
    if not support:
        raise SynthesisError(f"{p} n'a pas de support : pas de pivot")
    pivot = support[0]
    gates = _to_x_basis(p, support)
    gates += [GateApp("CNOT", (pivot, q)) for q in support[1:]]
    gates.append(GateApp("H", (pivot,)))
    return gates, pivot


def _evolve(n: int, paulis: Sequence[PauliString], gates: Sequence[GateApp]) -> list[PauliString]:
    return evolve_paulis(n, list(paulis), gates) if gates else list(paulis)


def _without(p: PauliString, qubit: int) -> PauliString:
    mask = ~(1 << (qubit - 1))
    return PauliString(p.n, p.x & mask, p.z & mask)


def _reduce_group(rows: list[PauliString]) -> list[GateApp]:
    """Circuit W envoyant le groupe engendre par ``rows`` sur le groupe des +-Z_q.

    Les lignes sont combinees entre elles ; seul le groupe est conserve.
    """
    n = rows[0].n
    gates: list[GateApp] = []
    remaining = list(rows)
    pivots: dict[int, PauliString] = {}
    while remaining:
        row = remaining.pop(0)
        for q, z_row in pivots.items():
            if row.letter(q) == "Z":
                row = row * z_row
        step, pivot = _single_z_gates(row)
        gates += step
        remaining = _evolve(n, remaining, step)
        pivots[pivot] = _evolve(n, [row], step)[0]
    return gates


def _z_vector(p: PauliString) -> list[int]:
    if p.x:
        raise SynthesisError(f"{p} devrait etre un produit de Z")
    return [(p.z >> q) & 1 for q in range(p.n)]


def _linear_z_network(images: Sequence[PauliString]) -> list[GateApp]:
    """Reseau de CNOT envoyant Z^{v_j} sur Z_j (elimination de Gauss-Jordan par colonnes).

    CNOT(c, t) ajoute la colonne t a la colonne c dans chaque vecteur v_j.
    """
    n = len(images)
    matrix = [_z_vector(p) for p in images]
    gates: list[GateApp] = []

    def add_column(control: int, target: int) -> None:
        gates.append(GateApp("CNOT", (control + 1, target + 1)))
        for row in matrix:
            row[control] ^= row[target]

    for j in range(n):
        column = next((c for c in range(j, n) if matrix[j][c]), None)
        if column is None:
            raise SynthesisError("Images dependantes apres elimination")
        if column != j:
            gates += _swap(j + 1, column + 1)
            for row in matrix:
                row[j], row[column] = row[column], row[j]
        for c in range(n):
            if c != j and matrix[j][c]:
                add_column(c, j)
    return gates


def certify(circuit: Program, source: Branch, expected: Branch) -> Judgment:
    """Re-infere ``circuit`` sur ``source`` et exige une sortie egale a ``expected``."""
    inferred = infer(circuit, QType.single(source))
    if not types_equal(inferred, QType.single(expected)):
        raise SynthesisError(f"Certificat refuse : {inferred} au lieu de {expected}")
    return Judgment(circuit, QType.single(source), inferred)


def _check_stabilizers(terms: Sequence[PauliString]) -> int:
    if not terms:
        raise SynthesisError("Aucun terme a preparer")
    n = terms[0].n
    if len(terms) != n:
        raise SynthesisError(f"{len(terms)} terme(s) pour {n} qubits : type incomplet")
    for p in terms:
        if p.n != n or not p.is_hermitian():
            raise SynthesisError(f"Terme invalide {p} pour {n} qubits")
    try:
        check_terms(terms)
    except AlgebraError as exc:
        raise SynthesisError(str(exc), witness=exc.witness) from exc
    return n


def clifford_from_stabilizers(terms: Sequence[PauliString]) -> SynthResult:
    """Circuit C sur {H, S, CNOT, X} tel que C : Z_j -> P_j pour chaque j.

    Le circuit compte au plus 3n^2 + 5n portes : elimination du groupe
    (n^2 + n), reseau lineaire de CNOT (n^2 + 3n) puis couche de X pour les
    signes (n).

    Raises:
        SynthesisError: Termes non commutants, dependants ou en nombre
            different de n.
    """
    n = _check_stabilizers(terms)
    forward = _reduce_group(list(terms))
    images = _evolve(n, terms, forward)
    network = _linear_z_network(images)
    forward += network
    images = _evolve(n, images, network)
    forward += [GateApp("X", (j,)) for j, p in enumerate(images, start=1) if p.phase == 2]
    circuit = inverse_program(Program(n, tuple(forward)))
    target = Branch.from_paulis(list(terms))
    return SynthResult(circuit, (certify(circuit, Branch.zero_state(n), target),))


def _check_pair(a: PauliString, b: PauliString, role: str) -> None:
    for p in (a, b):
        if not p.is_hermitian() or p.is_identity():
            raise SynthesisError(f"{role} : {p} doit etre une chaine hermitienne non triviale")
    if a.n != b.n:
        raise SynthesisError(f"{role} : longueurs differentes ({a.n} et {b.n})")
    if a.key == b.key:
        raise SynthesisError(f"{role} : {a} et {b} sont egaux au signe pres")


def _anticommuting_to_canonical(p1: PauliString, p2: PauliString) -> list[GateApp]:
    n = p1.n
    gates, a = _single_z_gates(p1)
    q2 = _evolve(n, [p2], gates)[0]
    if q2.letter(a) == "Y":
        gates.append(GateApp("Sdg", (a,)))
        q2 = _evolve(n, [q2], gates[-1:])[0]
    rest = _without(q2, a)
    step = _to_x_basis(rest, rest.support)
    step += [GateApp("CNOT", (a, q)) for q in rest.support]
    if a != 1:
        step += _swap(a, 1)
    step += [GateApp("S", (1,)), GateApp("H", (1,))]
    gates += step
    c1, c2 = _evolve(n, [p1, p2], gates)
    fix = _ANTICOMMUTING_FIX.get((c1.phase == 2, c2.phase == 2))
    if fix is not None:
        gates.append(GateApp(fix, (1,)))
    return gates


def _commuting_to_canonical(p1: PauliString, p2: PauliString) -> list[GateApp]:
    n = p1.n
    gates, a = _single_z_gates(p1)
    q2 = _evolve(n, [p2], gates)[0]
    step, b = _single_z_gates(_without(q2, a))
    if q2.letter(a) == "Z":
        step.append(GateApp("CNOT", (a, b)))
    gates += step
    if a != 1:
        gates += _swap(a, 1)
        b = a if b == 1 else b
    if b != 2:
        gates += _swap(b, 2)
    c1, c2 = _evolve(n, [p1, p2], gates)
    gates += [GateApp("X", (q,)) for q, c in ((1, c1), (2, c2)) if c.phase == 2]
    return gates


def canonical_pair(n: int, *, anticommuting: bool) -> tuple[PauliString, PauliString]:
    """(X_1, Y_1) pour un couple anticommutant, (Z_1, Z_2) sinon."""
    if anticommuting:
        return PauliString.single(n, 1, "X"), PauliString.single(n, 1, "Y")
    return PauliString.single(n, 1, "Z"), PauliString.single(n, 2, "Z")


def to_canonical_pair(p1: PauliString, p2: PauliString) -> Program:
    """Circuit envoyant exactement (p1, p2) sur ``canonical_pair``."""
    _check_pair(p1, p2, "couple")
    if commutes(p1, p2):
        gates = _commuting_to_canonical(p1, p2)
    else:
        gates = _anticommuting_to_canonical(p1, p2)
    program = Program(p1.n, tuple(gates))
    expected = canonical_pair(p1.n, anticommuting=not commutes(p1, p2))
    if tuple(_evolve(p1.n, [p1, p2], program.gates())) != expected:
        raise SynthesisError(f"Forme canonique non atteinte pour ({p1}, {p2})")
    return program


def two_transitive_clifford(
    p1: PauliString, p2: PauliString, q1: PauliString, q2: PauliString
) -> SynthResult:
    """Circuit C tel que C : p1 -> q1 et C : p2 -> q2.

    Les deux couples passent par la meme forme canonique ; le circuit emis
    est ``vers_canonique(p) ; inverse(vers_canonique(q))``.

    Raises:
        SynthesisError: Couples degeneres ou de classes de commutation differentes.
    """
    _check_pair(p1, p2, "source")
    _check_pair(q1, q2, "cible")
    if p1.n != q1.n:
        raise SynthesisError(f"Source sur {p1.n} qubits, cible sur {q1.n}")
    if commutes(p1, p2) != commutes(q1, q2):
        raise SynthesisError(
            f"Classes de commutation differentes : ({p1}, {p2}) et ({q1}, {q2})"
        )
    circuit = to_canonical_pair(p1, p2).then(inverse_program(to_canonical_pair(q1, q2)))
    certificates = (
        certify(circuit, Branch.from_paulis([p1]), Branch.from_paulis([q1])),
        certify(circuit, Branch.from_paulis([p2]), Branch.from_paulis([q2])),
    )
    return SynthResult(circuit, certificates)


__all__ = [
    "SynthResult",
    "canonical_pair",
    "certify",
    "clifford_from_stabilizers",
    "inverse_program",
    "to_canonical_pair",
    "two_transitive_clifford",
]
