"""Verification des encodeurs et de la transversalite des portes logiques.

Une porte physique U realise la porte logique V sur un code si
  - chaque generateur g_i est envoye dans le groupe stabilisateur (signe +) ;
  - chaque X_L, Z_L est envoye sur l'image logique prescrite par V, a un
    element du stabilisateur pres.
Les ecarts sont classes : mauvais signe (ex. -Y_L), mauvaise action logique,
sortie de l'espace de code, ou sortie du formalisme (image additive).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from src.algebra.additive import Accumulator, AdditiveOperator
from src.algebra.normal_form import normalize, types_equal
from src.algebra.qtype import Branch, QType
from src.errors import AlgebraError
from src.inference.engine import evolve_operator, infer
from src.inference.gates import GateSemantics, resolve_semantics
from src.inference.program import GateApp, Program
from src.pauli.pauli_string import PauliString, mul, tensor
from src.pauli.symplectic import in_group
from src.qecc.codes import StabilizerCode
from src.qecc.logical import LogicalType
from src.state.journal import Reporter

DEFECT_KINDS = ("espace_de_code", "signe", "action_logique", "additif")


@dataclass(frozen=True)
class LogicalDefect:
    """Ecart constate pour un generateur ou un operateur logique.

    Attributes:
        kind: Categorie (cf. DEFECT_KINDS).
        subject: Element examine, ex. ``g1`` ou ``X_L``.
        image: Image obtenue.
        detail: Explication lisible, ex. ``X_L -> -Y_L``.
    """

    kind: str
    subject: str
    image: str
    detail: str


@dataclass(frozen=True)
class TransversalityVerdict:
    passed: bool
    target: str
    defects: tuple[LogicalDefect, ...] = ()

    def __bool__(self) -> bool:
        return self.passed

    def kinds(self) -> set[str]:
        return {d.kind for d in self.defects}


@dataclass(frozen=True)
class EncoderVerdict:
    passed: bool
    basis: str
    inferred: QType
    expected: QType

    def __bool__(self) -> bool:
        return self.passed


def _silent(_: str) -> None:
    return None


def transversal_program(gates: Sequence[str], n: int, *, blocks: int = 1) -> Program:
    """Programme appliquant chaque porte sur tous les qubits (ou paire de blocs).

    Une porte a un qubit est posee sur chacun des ``n * blocks`` qubits ; une
    porte a ``blocks`` qubits est posee sur (q, q + n, ...) pour q = 1..n.
    """
    statements: list[GateApp] = []
    for name in gates:
        arity = resolve_semantics(name).arity
        if arity == 1:
            statements.extend(GateApp(name, (q,)) for q in range(1, n * blocks + 1))
        elif arity == blocks:
            statements.extend(
                GateApp(name, tuple(q + b * n for b in range(blocks))) for q in range(1, n + 1)
            )
        else:
            raise AlgebraError(f"{name} (arite {arity}) ne se pose pas sur {blocks} bloc(s)")
    return Program(n * blocks, tuple(statements))


def _block_qubits(code: StabilizerCode, block: int) -> list[int]:
    return list(range(block * code.n + 1, (block + 1) * code.n + 1))


def _stabilizer(code: StabilizerCode, blocks: int) -> list[PauliString]:
    total = code.n * blocks
    return [
        g.embed(_block_qubits(code, b), total) for b in range(blocks) for g in code.generators
    ]


def _logical_word(code: StabilizerCode, word: str) -> PauliString:
    result = PauliString.identity(0)
    for letter in word:
        result = tensor(result, code.logical(letter))
    return result


def materialize(code: StabilizerCode, logical: AdditiveOperator) -> AdditiveOperator:
    """Operateur physique associe a un operateur sur l'alphabet logique."""
    acc = Accumulator(code.n * logical.n)
    for p, c in logical:
        acc.add_pauli(_logical_word(code, p.word), c)
    return acc.result()


def identify_logical(
    image: PauliString, code: StabilizerCode, blocks: int, stabilizer: Sequence[PauliString]
) -> str | None:
    """Libelle ``+-P_L`` d'une chaine egale a un operateur logique modulo le stabilisateur."""
    for letters in itertools.product("IXYZ", repeat=blocks):
        candidate = _logical_word(code, "".join(letters))
        sign = in_group(mul(candidate, image), stabilizer)
        if sign:
            label = " (x) ".join(f"{letter}_L" for letter in letters)
            return label if sign > 0 else f"-{label}"
    return None


def _compare_logical(
    subject: str,
    image: AdditiveOperator,
    expected: AdditiveOperator,
    code: StabilizerCode,
    blocks: int,
    stabilizer: Sequence[PauliString],
) -> LogicalDefect | None:
    image_pauli = image.as_pauli()
    expected_pauli = expected.as_pauli()
    if image_pauli is None:
        if image == expected:
            return None
        return LogicalDefect(
            "additif", subject, str(image), f"{subject} sort du formalisme de Gottesman"
        )
    if expected_pauli is None:
        return LogicalDefect(
            "action_logique", subject, str(image), f"{subject} : image de Pauli, attendue additive"
        )
    sign = in_group(mul(expected_pauli, image_pauli), stabilizer)
    if sign == 1:
        return None
    found = identify_logical(image_pauli, code, blocks, stabilizer)
    detail = f"{subject} -> {found}" if found else f"{subject} -> {image_pauli}"
    return LogicalDefect("signe" if sign == -1 else "action_logique", subject, str(image_pauli), detail)


def transversality_check(
    code: StabilizerCode,
    program: Program,
    target: GateSemantics,
    *,
    report: Reporter | None = None,
) -> TransversalityVerdict:
    """Verifie que ``program`` realise ``target`` sur ``target.arity`` blocs du code.

    Args:
        code: Code stabilisateur (un bloc par qubit logique).
        program: Programme physique sur ``code.n * target.arity`` qubits.
        target: Semantique de la porte logique visee.
        report: Fonction de log recevant les messages d'avancement.

    Returns:
        TransversalityVerdict: Verdict et liste des ecarts.
    """
    reporter = report or print
    blocks = target.arity
    if program.n != code.n * blocks:
        raise AlgebraError(
            f"Programme sur {program.n} qubits pour {blocks} bloc(s) de {code.n} qubits"
        )
    total = program.n
    stabilizer = _stabilizer(code, blocks)
    defects: list[LogicalDefect] = []

    reporter(f"[STEP] Preservation de l'espace de code ({len(stabilizer)} generateurs)")
    for index, g in enumerate(stabilizer, start=1):
        image = evolve_operator(AdditiveOperator.from_pauli(g), program)
        image_pauli = image.as_pauli()
        subject = f"g{index}"
        if image_pauli is None:
            defects.append(
                LogicalDefect("additif", subject, str(image), f"{g} -> type additif non trivial")
            )
            continue
        sign = in_group(image_pauli, stabilizer)
        if sign == 1:
            continue
        kind = "signe" if sign == -1 else "espace_de_code"
        defects.append(LogicalDefect(kind, subject, str(image_pauli), f"{g} -> {image_pauli}"))

    reporter(f"[STEP] Action logique comparee a {target.name}_L")
    for letter, j in target.generators():
        source = PauliString.single(blocks, j, letter)
        physical = materialize(code, AdditiveOperator.from_pauli(source))
        image = evolve_operator(physical, program)
        expected = materialize(code, target.images[(letter, j)])
        subject = f"{letter}_L" if blocks == 1 else f"{letter}_L{j}"
        defect = _compare_logical(subject, image, expected, code, blocks, stabilizer)
        if defect is not None:
            defects.append(defect)

    for defect in defects:
        reporter(f"[AVERTISSEMENT] {defect.kind} : {defect.detail}")
    passed = not defects
    if passed:
        reporter(f"[OK] {target.name}_L realisee transversalement sur {total} qubits")
    return TransversalityVerdict(passed, f"{target.name}_L", tuple(defects))


def encoder_input(code: StabilizerCode, basis: str, *, data_qubit: int = 1) -> QType:
    """``basis`` sur le qubit de donnee, Z sur les ancillas."""
    if basis not in ("X", "Y", "Z"):
        raise AlgebraError(f"Base d'encodage inconnue : {basis}")
    terms = [
        PauliString.single(code.n, q, basis if q == data_qubit else "Z")
        for q in range(1, code.n + 1)
    ]
    return QType.single(Branch.from_paulis(terms))


def encoder_check(
    program: Program,
    code: StabilizerCode,
    basis: str = "Z",
    *,
    data_qubit: int = 1,
    report: Reporter | None = None,
) -> EncoderVerdict:
    """Infere l'encodeur sur ``basis`` & Z... et compare a norm(basis_L)."""
    reporter = report or _silent
    if program.n != code.n:
        raise AlgebraError(f"Encodeur sur {program.n} qubits pour un code sur {code.n}")
    inferred = infer(program, encoder_input(code, basis, data_qubit=data_qubit))
    expected = QType.single(normalize(LogicalType(code, basis).branch()))
    passed = types_equal(inferred, expected)
    tag = "[OK]" if passed else "[AVERTISSEMENT]"
    reporter(f"{tag} Encodeur, base {basis} : {'conforme' if passed else 'non conforme'}")
    return EncoderVerdict(passed, basis, inferred, expected)


__all__ = [
    "DEFECT_KINDS",
    "EncoderVerdict",
    "LogicalDefect",
    "TransversalityVerdict",
    "encoder_check",
    "encoder_input",
    "identify_logical",
    "materialize",
    "transversal_program",
    "transversality_check",
]
