"""Programmes : suites d'applications de portes et de mesures (qubits 1-based)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from src.algebra.qtype import QType
from src.errors import AlgebraError, DslSyntaxError, QubitIndexError


@dataclass(frozen=True, slots=True)
class GateApp:
    """Application de la porte ``name`` sur ``qubits`` (ordre significatif)."""

    name: str
    qubits: tuple[int, ...]
    line: int = 0

    def __str__(self) -> str:
        return " ".join([self.name, *map(str, self.qubits)])


@dataclass(frozen=True, slots=True)
class Measure:
    """Mesure en base Z du qubit ``qubit``."""

    qubit: int
    line: int = 0

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)

    def __str__(self) -> str:
        return f"MEAS {self.qubit}"


Statement = Union[GateApp, Measure]


@dataclass(frozen=True, slots=True)
class CompositeGate:
    """Porte composite ``GATE NAME a b { ... }`` : corps exprime sur ses parametres."""

    name: str
    params: tuple[str, ...]
    body: tuple[tuple[str, tuple[str, ...], int], ...]
    line: int = 0

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Program:
    """Programme type : nombre de qubits, instructions et definitions composites.

    Attributes:
        n: Nombre de qubits declare.
        statements: Instructions, dans l'ordre d'execution.
        definitions: Portes composites par nom canonique (majuscules).
    """

    n: int
    statements: tuple[Statement, ...] = ()
    definitions: Mapping[str, CompositeGate] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise AlgebraError(f"Nombre de qubits invalide : {self.n}")
        for statement in self.statements:
            for q in statement.qubits:
                if not 1 <= q <= self.n:
                    raise QubitIndexError(
                        f"ligne {statement.line}: qubit {q} hors de 1..{self.n} dans '{statement}'"
                    )
            if isinstance(statement, GateApp) and len(set(statement.qubits)) != len(statement.qubits):
                raise AlgebraError(f"ligne {statement.line}: qubits repetes dans '{statement}'")

    @classmethod
    def of(cls, n: int, text_or_statements: str | Iterable[Statement]) -> Program:
        """Construit un programme ; une chaine ``"H 1; CNOT 1 2"`` est lue directement."""
        if isinstance(text_or_statements, str):
            statements = []
            for chunk in text_or_statements.replace("\n", ";").split(";"):
                words = chunk.split()
                if not words:
                    continue
                if words[0].upper() == "MEAS":
                    statements.append(Measure(int(words[1])))
                else:
                    statements.append(GateApp(words[0], tuple(int(w) for w in words[1:])))
            return cls(n, tuple(statements))
        return cls(n, tuple(text_or_statements))

    def __iter__(self) -> Iterator[Statement]:
        return iter(self.statements)

    def __len__(self) -> int:
        return len(self.statements)

    def gates(self) -> list[GateApp]:
        return [s for s in self.statements if isinstance(s, GateApp)]

    def has_measurements(self) -> bool:
        return any(isinstance(s, Measure) for s in self.statements)

    def then(self, other: Program) -> Program:
        if other.n != self.n:
            raise AlgebraError(f"Composition de programmes sur {self.n} et {other.n} qubits")
        merged = {**self.definitions, **other.definitions}
        return Program(self.n, self.statements + other.statements, merged)

    def expand(self) -> Program:
        """Remplace les appels de portes composites par leur corps.

        Raises:
            DslSyntaxError: Definition cyclique ou mauvaise arite.
        """
        if not self.definitions:
            return self
        expanded: list[Statement] = []
        for statement in self.statements:
            expanded.extend(_inline(statement, self.definitions, ()))
        return Program(self.n, tuple(expanded))

    def __str__(self) -> str:
        from src.frontend.parser import format_program

        return format_program(self)


def _inline(
    statement: Statement, definitions: Mapping[str, CompositeGate], stack: tuple[str, ...]
) -> Iterator[Statement]:
    if isinstance(statement, Measure):
        yield statement
        return
    key = statement.name.upper()
    definition = definitions.get(key)
    if definition is None:
        yield statement
        return
    if key in stack:
        cycle = " -> ".join((*stack, key))
        raise DslSyntaxError(f"definition cyclique : {cycle}", line=definition.line)
    if len(statement.qubits) != definition.arity:
        raise DslSyntaxError(
            f"{definition.name} attend {definition.arity} qubit(s), {len(statement.qubits)} fourni(s)",
            line=statement.line,
        )
    binding = dict(zip(definition.params, statement.qubits))
    for name, args, line in definition.body:
        qubits = tuple(binding[a] if a in binding else int(a) for a in args)
        inner: Statement
        if name.upper() == "MEAS":
            inner = Measure(qubits[0], line or statement.line)
        else:
            inner = GateApp(name, qubits, line or statement.line)
        yield from _inline(inner, definitions, (*stack, key))


def defer_measurements(program: Program) -> Program:
    """Repousse chaque mesure jusqu'a la premiere porte qui touche son qubit."""
    pending: list[Measure] = []
    rewritten: list[Statement] = []
    for statement in program.expand().statements:
        if isinstance(statement, Measure):
            pending.append(statement)
            continue
        touched = set(statement.qubits)
        still_pending = []
        for measure in pending:
            if measure.qubit in touched:
                rewritten.append(measure)
            else:
                still_pending.append(measure)
        pending = still_pending
        rewritten.append(statement)
    rewritten.extend(pending)
    return Program(program.n, tuple(rewritten))


@dataclass(frozen=True, slots=True)
class Judgment:
    """Jugement de typage ``program : input -> output``."""

    program: Program
    input: QType
    output: QType

    def __str__(self) -> str:
        return f"{self.input} -> {self.output}"


__all__ = [
    "CompositeGate",
    "GateApp",
    "Judgment",
    "Measure",
    "Program",
    "Statement",
    "defer_measurements",
]
