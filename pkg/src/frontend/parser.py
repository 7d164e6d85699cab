"""Lecture et impression des fichiers de programmes types (.qt).

Format ligne a ligne (``;`` separe aussi les instructions)::

    QUBITS 2
    INIT IZ & ZI
    GATE BELL a b { H a; CNOT a b }
    X 2
    BELL 1 2
    MEAS 1
    EXPECT ...

Commentaires : ``# ...`` jusqu'a la fin de la ligne, ``(* ... *)`` sur
plusieurs lignes. Les indices de qubits commencent a 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Final

from src.algebra.qtype import QType
from src.algebra.syntax import format_qtype, parse_type
from src.errors import DslSyntaxError, UnknownGateError
from src.inference.gates import resolve_semantics
from src.inference.program import CompositeGate, GateApp, Measure, Program, Statement

_BLOCK_COMMENT_RE: Final[re.Pattern[str]] = re.compile(r"\(\*.*?\*\)", re.DOTALL)
_NAME_RE: Final[re.Pattern[str]] = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")
_DECLARATIONS: Final[frozenset[str]] = frozenset({"QUBITS", "INIT", "EXPECT", "GATE"})


@dataclass(frozen=True)
class SourceFile:
    """Fichier analyse : programme, types d'entree et attendu.

    Attributes:
        text: Texte source.
        program: Programme (definitions ``GATE`` comprises).
        init: Type d'entree declare par ``INIT``.
        expect: Type attendu declare par ``EXPECT``.
        name: Nom du fichier sans extension.
    """

    text: str
    program: Program
    init: QType | None = None
    expect: QType | None = None
    name: str = "programme"

    @property
    def n(self) -> int:
        return self.program.n

    def __str__(self) -> str:
        return format_source(self)


@dataclass(frozen=True, slots=True)
class _Chunk:
    line: int
    column: int
    text: str


def _strip_comments(text: str) -> str:
    """Remplace les commentaires par des blancs, numeros de ligne et colonnes conserves."""

    def blank(match: re.Match[str]) -> str:
        return re.sub(r"[^\n]", " ", match.group(0))

    text = _BLOCK_COMMENT_RE.sub(blank, text)
    if "(*" in text:
        line = text[: text.index("(*")].count("\n") + 1
        raise DslSyntaxError("commentaire '(*' non ferme", line=line, column=1)
    return "\n".join(raw.split("#", 1)[0] for raw in text.split("\n"))


def _chunks(text: str) -> list[_Chunk]:
    chunks = []
    for number, raw in enumerate(text.split("\n"), start=1):
        column = 1
        for piece in raw.split(";"):
            stripped = piece.strip()
            if stripped:
                offset = len(piece) - len(piece.lstrip())
                chunks.append(_Chunk(number, column + offset, stripped))
            column += len(piece) + 1
    return chunks


def _int(word: str, chunk: _Chunk, what: str) -> int:
    if not word.isdigit():
        raise DslSyntaxError(f"{what} attendu, '{word}' trouve", line=chunk.line, column=chunk.column)
    return int(word)


class ProgramParser:
    """Analyse un fichier .qt en ``SourceFile``."""

    def __init__(self, text: str, *, name: str = "programme") -> None:
        self.text = text
        self.name = name
        self.n: int | None = None
        self.init: QType | None = None
        self.expect: QType | None = None
        self.statements: list[Statement] = []
        self.definitions: dict[str, CompositeGate] = {}
        self._open_gate: tuple[_Chunk, str, tuple[str, ...], list] | None = None
        self._gate_uses: list[tuple[str, int, _Chunk]] = []

    def parse(self) -> SourceFile:
        for chunk in _chunks(_strip_comments(self.text)):
            self._chunk(chunk)
        if self._open_gate is not None:
            header = self._open_gate[0]
            raise DslSyntaxError("'}' attendu en fin de definition", line=header.line, column=header.column)
        if self.n is None:
            raise DslSyntaxError("declaration QUBITS manquante", line=1, column=1)
        # les definitions peuvent suivre leurs appels
        for name, arity, chunk in self._gate_uses:
            self._check_gate(name, arity, chunk)
        program = Program(self.n, tuple(self.statements), dict(self.definitions))
        program.expand()
        return SourceFile(self.text, program, self.init, self.expect, self.name)

    # ------------------------------------------------------------------
    # Chunks
    # ------------------------------------------------------------------

    def _chunk(self, chunk: _Chunk) -> None:
        if self._open_gate is not None:
            self._body_chunk(chunk)
            return
        words = chunk.text.split()
        keyword = words[0].upper()
        if keyword == "QUBITS":
            self._qubits(chunk, words)
        elif keyword in ("INIT", "EXPECT"):
            self._type_declaration(chunk, keyword)
        elif keyword == "GATE":
            self._gate_header(chunk)
        else:
            self.statements.append(self._statement(chunk, words))

    def _qubits(self, chunk: _Chunk, words: list[str]) -> None:
        if len(words) != 2:
            raise DslSyntaxError("QUBITS attend un entier", line=chunk.line, column=chunk.column)
        if self.n is not None:
            raise DslSyntaxError("QUBITS declare deux fois", line=chunk.line, column=chunk.column)
        self.n = _int(words[1], chunk, "nombre de qubits")
        if self.n < 1:
            raise DslSyntaxError("QUBITS doit etre positif", line=chunk.line, column=chunk.column)

    def _type_declaration(self, chunk: _Chunk, keyword: str) -> None:
        body = chunk.text[len(keyword):]
        column = chunk.column + len(keyword) + len(body) - len(body.lstrip())
        if not body.strip():
            raise DslSyntaxError(f"{keyword} attend un type", line=chunk.line, column=chunk.column)
        parsed = parse_type(body.strip(), n=self.n, line=chunk.line, column=column)
        if keyword == "INIT":
            self.init = parsed
        else:
            self.expect = parsed

    def _statement(self, chunk: _Chunk, words: list[str], *, params: tuple[str, ...] = ()) -> Statement:
        name = words[0]
        args = words[1:]
        if name.upper() in _DECLARATIONS:
            raise DslSyntaxError(f"{name} interdit ici", line=chunk.line, column=chunk.column)
        if not args:
            raise DslSyntaxError(f"{name} : qubits attendus", line=chunk.line, column=chunk.column)
        if self.n is None and not params:
            raise DslSyntaxError("QUBITS doit preceder les instructions", line=chunk.line, column=chunk.column)
        if params:
            for arg in args:
                if arg not in params and not arg.isdigit():
                    raise DslSyntaxError(
                        f"parametre inconnu '{arg}'", line=chunk.line, column=chunk.column
                    )
            qubits = tuple(0 for _ in args)
        else:
            qubits = tuple(_int(arg, chunk, "indice de qubit") for arg in args)
        if name.upper() == "MEAS":
            if len(args) != 1:
                raise DslSyntaxError("MEAS attend un seul qubit", line=chunk.line, column=chunk.column)
            return Measure(qubits[0], chunk.line)
        self._gate_uses.append((name, len(args), chunk))
        return GateApp(name, qubits, chunk.line)

    def _check_gate(self, name: str, arity: int, chunk: _Chunk) -> None:
        definition = self.definitions.get(name.upper())
        if definition is not None:
            expected = definition.arity
        else:
            try:
                expected = resolve_semantics(name).arity
            except UnknownGateError as exc:
                raise UnknownGateError(f"ligne {chunk.line}, colonne {chunk.column}: {exc}") from exc
        if arity != expected:
            raise DslSyntaxError(
                f"{name} attend {expected} qubit(s), {arity} fourni(s)",
                line=chunk.line,
                column=chunk.column,
            )

    # ------------------------------------------------------------------
    # Definitions GATE
    # ------------------------------------------------------------------

    def _gate_header(self, chunk: _Chunk) -> None:
        header, brace, rest = chunk.text.partition("{")
        if not brace:
            raise DslSyntaxError("'{' attendu apres l'en-tete GATE", line=chunk.line, column=chunk.column)
        words = header.split()
        if len(words) < 3 or not _NAME_RE.match(words[1]):
            raise DslSyntaxError("GATE NOM p1 p2 ... { ... } attendu", line=chunk.line, column=chunk.column)
        name, params = words[1], tuple(words[2:])
        if len(set(params)) != len(params):
            raise DslSyntaxError(f"parametres repetes dans {name}", line=chunk.line, column=chunk.column)
        if name.upper() in self.definitions:
            raise DslSyntaxError(f"{name} deja defini", line=chunk.line, column=chunk.column)
        self._open_gate = (chunk, name, params, [])
        if rest.strip():
            column = chunk.column + len(header) + 1
            self._body_chunk(_Chunk(chunk.line, column, rest.strip()))

    def _body_chunk(self, chunk: _Chunk) -> None:
        assert self._open_gate is not None
        header, name, params, body = self._open_gate
        inside, brace, after = chunk.text.partition("}")
        if inside.strip():
            words = inside.split()
            statement = self._statement(chunk, words, params=params)
            if isinstance(statement, GateApp):
                body.append((words[0], tuple(words[1:]), chunk.line))
            else:
                body.append(("MEAS", tuple(words[1:]), chunk.line))
        if not brace:
            return
        self.definitions[name.upper()] = CompositeGate(name, params, tuple(body), header.line)
        self._open_gate = None
        if after.strip():
            self._chunk(_Chunk(chunk.line, chunk.column + len(inside) + 1, after.strip()))


def parse_program(text: str, *, name: str = "programme") -> SourceFile:
    """Analyse un fichier .qt.

    Raises:
        DslSyntaxError: Syntaxe, arite ou definition cyclique (ligne et colonne).
        QubitIndexError: Indice hors de 1..n.
        UnknownGateError: Porte inconnue.
    """
    return ProgramParser(text, name=name).parse()


def load_source(path: Path | str) -> SourceFile:
    path = Path(path)
    return parse_program(path.read_text(encoding="utf-8"), name=path.stem)


# ----------------------------------------------------------------------
# Impression
# ----------------------------------------------------------------------


def _format_definition(definition: CompositeGate) -> list[str]:
    lines = [f"GATE {definition.name} {' '.join(definition.params)} {{"]
    for name, args, _ in definition.body:
        lines.append(f"  {' '.join((name, *args))}")
    lines.append("}")
    return lines


def format_program(
    program: Program, *, init: QType | None = None, expect: QType | None = None
) -> str:
    """Texte .qt canonique ; ``parse_program`` le relit a l'identique."""
    lines = [f"QUBITS {program.n}"]
    if init is not None:
        lines.append(f"INIT {format_qtype(init)}")
    for definition in program.definitions.values():
        lines.extend(_format_definition(definition))
    lines.extend(str(statement) for statement in program.statements)
    if expect is not None:
        lines.append(f"EXPECT {format_qtype(expect)}")
    return "\n".join(lines) + "\n"


def format_source(source: SourceFile) -> str:
    return format_program(source.program, init=source.init, expect=source.expect)


__all__ = [
    "ProgramParser",
    "SourceFile",
    "format_program",
    "format_source",
    "load_source",
    "parse_program",
]
