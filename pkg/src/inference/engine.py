"""Moteur d'inference : propage un type a travers un programme.

Chaque porte agit terme a terme sur chaque branche (regles du produit
tensoriel, de la somme et du changement d'echelle) ; une mesure est confiee
au module de mesure, branche par branche. Les suites maximales de portes de
Clifford sur des types de Gottesman passent par le tableau par colonnes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import config
from src.algebra.additive import Accumulator, AdditiveOperator
from src.algebra.normal_form import canonical_key, types_equal, union_simplify
from src.algebra.qtype import Branch, QType
from src.errors import AlgebraError, PauliLengthError, SummandCapExceeded
from src.inference.clifford_frame import evolve_paulis
from src.inference.gates import GateSemantics, is_clifford_name, resolve_semantics
from src.inference.program import GateApp, Judgment, Measure, Program, defer_measurements
from src.measurement.dispatch import measure_branch
from src.measurement.outcome import MeasurementOutcome
from src.pauli.pauli_string import PauliString
from src.state.journal import Reporter


def _silent(_: str) -> None:
    return None


@dataclass(frozen=True)
class InferenceOptions:
    """Reglages du moteur.

    Attributes:
        summand_cap: Nombre maximal de termes produits par une porte sur un terme.
        keep_impossible: Conserve les issues de mesure de probabilite nulle.
        trace: Enregistre le type apres chaque instruction.
        defer_measurements: Repousse les mesures (mesure differee).
        fast_clifford: Autorise le tableau par colonnes pour les blocs de Clifford.
    """

    summand_cap: int = config.SUMMAND_CAP
    keep_impossible: bool = config.KEEP_IMPOSSIBLE_BRANCHES
    trace: bool = False
    defer_measurements: bool = False
    fast_clifford: bool = True


@dataclass
class InferenceStats:
    gates: int = 0
    measurements: int = 0
    clifford_batches: int = 0
    max_summands_before_combine: int = 0
    max_summands: int = 0


@dataclass(frozen=True, slots=True)
class TraceStep:
    index: int
    instruction: str
    qtype: QType


@dataclass(frozen=True)
class InferenceResult:
    """Jugement obtenu, trace eventuelle, statistiques et issues de mesure."""

    judgment: Judgment
    trace: tuple[TraceStep, ...] = ()
    stats: InferenceStats = field(default_factory=InferenceStats)
    outcomes: tuple[MeasurementOutcome, ...] = ()

    @property
    def output(self) -> QType:
        return self.judgment.output


@dataclass(frozen=True)
class CheckVerdict:
    """Verdict de ``check`` : comparaison par formes normales."""

    passed: bool
    inferred: QType
    expected: QType
    diff: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


# ----------------------------------------------------------------------
# Application d'une porte a un terme
# ----------------------------------------------------------------------


def _local_bits(x: int, z: int, at: Sequence[int]) -> tuple[int, int, int]:
    lx = lz = mask = 0
    for position, qubit in enumerate(at):
        shift = qubit - 1
        lx |= ((x >> shift) & 1) << position
        lz |= ((z >> shift) & 1) << position
        mask |= 1 << shift
    return lx, lz, mask


def _scatter(bits: int, at: Sequence[int]) -> int:
    result = 0
    for position, qubit in enumerate(at):
        result |= ((bits >> position) & 1) << (qubit - 1)
    return result


def apply_gate(
    term: AdditiveOperator,
    g: GateSemantics,
    at: Sequence[int],
    *,
    cap: int | None = None,
    gate_index: int | None = None,
    stats: InferenceStats | None = None,
) -> AdditiveOperator:
    """Image de ``term`` par la porte ``g`` posee sur les qubits ``at``.

    Chaque mot est conjugue lettre a lettre sur ``at`` ; les termes semblables
    sont regroupes exactement.

    Raises:
        AlgebraError: Arite ou qubits incompatibles.
        SummandCapExceeded: Plus de ``cap`` termes avant regroupement.
    """
    if len(at) != g.arity:
        raise AlgebraError(f"{g.name} attend {g.arity} qubit(s), {len(at)} fourni(s)")
    if len(set(at)) != len(at):
        raise AlgebraError(f"Qubits repetes pour {g.name} : {tuple(at)}")
    for qubit in at:
        if not 1 <= qubit <= term.n:
            raise AlgebraError(f"Qubit {qubit} hors de 1..{term.n} pour {g.name}")
    acc = Accumulator(term.n)
    scattered: dict[tuple[int, int], tuple[tuple[int, int, object], ...]] = {}
    for (x, z), c in term.terms:
        lx, lz, mask = _local_bits(x, z, at)
        if lx == 0 and lz == 0:
            acc.add_key((x, z), c)
        else:
            image = scattered.get((lx, lz))
            if image is None:
                image = tuple(
                    (_scatter(ix, at), _scatter(iz, at), d)
                    for (ix, iz), d in g.word_image(lx, lz).terms
                )
                scattered[(lx, lz)] = image
            base_x, base_z = x & ~mask, z & ~mask
            for ix, iz, d in image:
                acc.add_key((base_x | ix, base_z | iz), c * d)
        if cap is not None and acc.added > cap:
            raise SummandCapExceeded(
                f"Porte {gate_index if gate_index is not None else '?'} ({g.name}) : "
                f"plus de {cap} termes produits",
                gate_index=gate_index,
            )
    result = acc.result()
    if stats is not None:
        stats.max_summands_before_combine = max(stats.max_summands_before_combine, acc.added)
        stats.max_summands = max(stats.max_summands, len(result))
    return result


def _apply_to_branch(
    b: Branch, g: GateSemantics, at: Sequence[int], options: InferenceOptions,
    gate_index: int, stats: InferenceStats,
) -> Branch:
    terms = tuple(
        apply_gate(t, g, at, cap=options.summand_cap, gate_index=gate_index, stats=stats)
        for t in b.all_terms()
    )
    return Branch(b.n, terms)


def _run_clifford_block(current: QType, block: Sequence[GateApp]) -> QType:
    """Un seul tableau pour tous les termes de toutes les branches."""
    paulis: list[PauliString] = []
    sizes: list[int] = []
    for b in current.branches:
        terms = b.paulis()
        sizes.append(len(terms))
        paulis.extend(terms)
    if not paulis:
        return current
    evolved = evolve_paulis(current.n, paulis, block)
    branches = []
    start = 0
    for b, size in zip(current.branches, sizes):
        chunk = evolved[start : start + size]
        start += size
        branches.append(Branch(b.n, tuple(AdditiveOperator.from_pauli(p) for p in chunk)))
    return QType(tuple(branches))


def _measure(
    current: QType, statement: Measure, options: InferenceOptions
) -> tuple[QType, list[MeasurementOutcome]]:
    outcomes = [
        measure_branch(b, statement.qubit, keep_impossible=options.keep_impossible)
        for b in current.branches
    ]
    branches = tuple(o.branch for outcome in outcomes for o in outcome.branches)
    return QType(branches), outcomes


# ----------------------------------------------------------------------
# Orchestration
# ----------------------------------------------------------------------


def run_inference(
    program: Program,
    init: QType,
    options: InferenceOptions | None = None,
    report: Reporter | None = None,
) -> InferenceResult:
    """Infere le type de sortie de ``program`` sur ``init``.

    Args:
        program: Programme (les portes composites sont developpees).
        init: Type d'entree, sur ``program.n`` qubits.
        options: Reglages (valeurs de config.py par defaut).
        report: Fonction de log recevant les messages d'avancement.

    Returns:
        InferenceResult: Jugement, trace, statistiques et issues de mesure.

    Raises:
        PauliLengthError: Type et programme de tailles differentes.
        UnsupportedAnalysis: Mesure hors formalisme ou depassement de capacite.
    """
    reporter = report or print
    options = options or InferenceOptions()
    if init.n != program.n:
        raise PauliLengthError(f"Type sur {init.n} qubits pour un programme sur {program.n}")

    expanded = program.expand()
    if options.defer_measurements:
        expanded = defer_measurements(expanded)
    statements = expanded.statements
    reporter(f"[INFO] Inference sur {program.n} qubit(s), {len(statements)} instruction(s)")

    stats = InferenceStats()
    trace: list[TraceStep] = [TraceStep(0, "INIT", init)] if options.trace else []
    outcomes: list[MeasurementOutcome] = []
    current = init
    index = 0
    try:
        while index < len(statements):
            statement = statements[index]
            if isinstance(statement, Measure):
                reporter(f"[STEP] Mesure du qubit {statement.qubit}")
                current, measured = _measure(current, statement, options)
                outcomes.extend(measured)
                stats.measurements += 1
                index += 1
                if options.trace:
                    trace.append(TraceStep(index, str(statement), current))
                continue

            use_frame = (
                options.fast_clifford
                and not options.trace
                and is_clifford_name(statement.name)
                and all(b.is_gottesman() for b in current.branches)
            )
            if use_frame:
                end = index
                while (
                    end < len(statements)
                    and isinstance(statements[end], GateApp)
                    and is_clifford_name(statements[end].name)
                ):
                    end += 1
                current = _run_clifford_block(current, statements[index:end])
                stats.gates += end - index
                stats.clifford_batches += 1
                index = end
                continue

            g = resolve_semantics(statement.name)
            current = current.map(
                lambda b: _apply_to_branch(b, g, statement.qubits, options, index + 1, stats)
            )
            stats.gates += 1
            index += 1
            if options.trace:
                trace.append(TraceStep(index, str(statement), current))
    except Exception as exc:
        reporter(f"[ERREUR] Instruction {index + 1} : {exc}")
        raise

    if not options.keep_impossible:
        current = union_simplify(current)
    reporter(
        f"[OK] Inference terminee : {stats.gates} porte(s), {stats.measurements} mesure(s), "
        f"{len(current.branches)} branche(s)"
    )
    return InferenceResult(
        judgment=Judgment(program, init, current),
        trace=tuple(trace),
        stats=stats,
        outcomes=tuple(outcomes),
    )


def infer(program: Program, init: QType, options: InferenceOptions | None = None) -> QType:
    """Type de sortie, sans messages d'avancement."""
    return run_inference(program, init, options, report=_silent).output


def _diff(inferred: QType, expected: QType) -> tuple[str, ...]:
    if inferred.n != expected.n:
        return (f"tailles differentes : {inferred.n} et {expected.n} qubits",)
    lines = []
    expected_keys = canonical_key(expected)
    inferred_keys = canonical_key(inferred)
    for b in inferred.branches:
        if canonical_key(QType.single(b)) - expected_keys:
            lines.append(f"+ {b}")
    for b in expected.branches:
        if canonical_key(QType.single(b)) - inferred_keys:
            lines.append(f"- {b}")
    return tuple(lines)


def check(
    program: Program,
    init: QType,
    claimed: QType,
    options: InferenceOptions | None = None,
    report: Reporter | None = None,
) -> CheckVerdict:
    """Infere puis compare au type annonce, par formes normales.

    Le diff liste les branches inferees absentes du type annonce (+) et
    les branches annoncees non obtenues (-).
    """
    inferred = run_inference(program, init, options, report=report or _silent).output
    passed = types_equal(inferred, claimed)
    return CheckVerdict(passed, inferred, claimed, () if passed else _diff(inferred, claimed))


def _unitary_statements(program: Program) -> list[tuple[GateSemantics, tuple[int, ...]]]:
    expanded = program.expand()
    if expanded.has_measurements():
        raise AlgebraError("Un programme avec mesures n'a pas de type fleche")
    return [(resolve_semantics(s.name), s.qubits) for s in expanded.statements]


def evolve_operator(
    term: AdditiveOperator, program: Program, *, cap: int = config.SUMMAND_CAP
) -> AdditiveOperator:
    """Image U M U^dag d'un seul operateur par un programme sans mesure.

    Raises:
        AlgebraError: Le programme contient une mesure.
    """
    if term.n != program.n:
        raise PauliLengthError(f"Operateur sur {term.n} qubits pour un programme sur {program.n}")
    for position, (g, at) in enumerate(_unitary_statements(program), start=1):
        term = apply_gate(term, g, at, cap=cap, gate_index=position)
    return term


def semantics_of_program(program: Program, *, name: str = "programme") -> GateSemantics:
    """Type fleche d'un programme sans mesure : images de X_j et Z_j.

    Raises:
        AlgebraError: Le programme contient une mesure.
    """
    n = program.n
    resolved = _unitary_statements(program)
    images: dict[tuple[str, int], AdditiveOperator] = {}
    for j in range(1, n + 1):
        for letter in "XZ":
            term = AdditiveOperator.from_pauli(PauliString.single(n, j, letter))
            for position, (g, at) in enumerate(resolved, start=1):
                term = apply_gate(term, g, at, cap=config.SUMMAND_CAP, gate_index=position)
            images[(letter, j)] = term
    return GateSemantics(name, n, images)


__all__ = [
    "CheckVerdict",
    "InferenceOptions",
    "InferenceResult",
    "InferenceStats",
    "TraceStep",
    "apply_gate",
    "check",
    "evolve_operator",
    "infer",
    "run_inference",
    "semantics_of_program",
]
