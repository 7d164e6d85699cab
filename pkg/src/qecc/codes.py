"""Codes stabilisateurs : definition validee, fichier de code, code de Steane."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Mapping

from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic.config import ConfigDict

import config
from src.algebra.additive import AdditiveOperator
from src.errors import AlgebraError, CodeDefinitionError, DslSyntaxError
from src.pauli.pauli_string import PauliString, commutes, mul
from src.pauli.symplectic import dependency_witness

_PHASE_PREFIXES = ("-i", "+i", "i", "-", "+")


def _pauli_word(value: Any) -> str:
    """Lettres en majuscules ; le prefixe de phase (``-``, ``i``, ``-i``) est garde tel quel."""
    text = str(value).strip()
    prefix = next((p for p in _PHASE_PREFIXES if text.startswith(p)), "")
    return prefix + text[len(prefix):].upper()


class CodeDefinition(BaseModel):
    """Schema d'un fichier de code (lignes ``N``, ``GEN``, ``LOGX``, ``LOGZ``).

    Attributs:
        name: Nom du code.
        n: Nombre de qubits physiques.
        generators: Mots des generateurs du stabilisateur.
        logical_x: Mot de X logique.
        logical_z: Mot de Z logique.
    """

    name: str = "code"
    n: int = Field(alias="N", ge=1)
    generators: list[str] = Field(default_factory=list, alias="GEN")
    logical_x: str = Field(alias="LOGX")
    logical_z: str = Field(alias="LOGZ")

    model_config = ConfigDict(populate_by_name=True)

    @field_validator("generators", mode="before")
    @classmethod
    def split_words(cls, value: Any) -> Any:
        """Accepte une chaine unique separee par des espaces ou des virgules."""
        if isinstance(value, str):
            return [_pauli_word(w) for w in value.replace(",", " ").split() if w]
        return [_pauli_word(w) for w in value]

    @field_validator("logical_x", "logical_z", mode="before")
    @classmethod
    def clean_word(cls, value: Any) -> Any:
        if isinstance(value, str):
            return _pauli_word(value)
        return value


@dataclass(frozen=True)
class StabilizerCode:
    """Code valide : generateurs commutants et independants, X et Z logiques.

    Attributes:
        name: Nom du code.
        n: Nombre de qubits physiques.
        generators: Generateurs g_i du stabilisateur.
        logical_x: X logique.
        logical_z: Z logique.
    """

    name: str
    n: int
    generators: tuple[PauliString, ...]
    logical_x: PauliString
    logical_z: PauliString

    @property
    def logical_y(self) -> PauliString:
        """Y logique = i * X_L * Z_L."""
        product = mul(self.logical_x, self.logical_z)
        return product.with_phase(product.phase + 1)

    def logical(self, letter: str) -> PauliString:
        if letter == "I":
            return PauliString.identity(self.n)
        return {"X": self.logical_x, "Y": self.logical_y, "Z": self.logical_z}[letter]

    def stabilizer_terms(self) -> tuple[AdditiveOperator, ...]:
        return tuple(AdditiveOperator.from_pauli(g) for g in self.generators)


def _word(label: str, n: int, role: str) -> PauliString:
    try:
        p = PauliString.from_label(label)
    except ValueError as exc:
        raise CodeDefinitionError(f"{role} : {exc}") from exc
    if p.n != n:
        raise CodeDefinitionError(f"{role} {label} sur {p.n} qubits, code sur {n}", witness=label)
    if not p.is_hermitian():
        raise CodeDefinitionError(f"{role} {label} n'est pas hermitien (phase +-i)", witness=label)
    return p


def make_code(definition: CodeDefinition | Mapping[str, Any]) -> StabilizerCode:
    """Valide une definition et construit le code.

    Raises:
        CodeDefinitionError: Longueurs, commutations ou independance violees
            (temoin joint a l'exception).
    """
    if not isinstance(definition, CodeDefinition):
        try:
            definition = CodeDefinition.model_validate(definition)
        except ValidationError as exc:
            raise CodeDefinitionError(f"Definition de code invalide : {exc}") from exc
    n = definition.n
    generators = tuple(
        _word(label, n, f"generateur {i}") for i, label in enumerate(definition.generators, start=1)
    )
    logical_x = _word(definition.logical_x, n, "X logique")
    logical_z = _word(definition.logical_z, n, "Z logique")

    for i, g in enumerate(generators):
        for j in range(i + 1, len(generators)):
            if not commutes(g, generators[j]):
                raise CodeDefinitionError(
                    f"Generateurs {g} et {generators[j]} anticommutent", witness=(i + 1, j + 1)
                )
        for role, logical in (("X logique", logical_x), ("Z logique", logical_z)):
            if not commutes(g, logical):
                raise CodeDefinitionError(
                    f"{role} {logical} anticommute avec le generateur {g}", witness=(role, i + 1)
                )
    witness = dependency_witness(list(generators))
    if witness is not None:
        raise CodeDefinitionError(
            "Generateurs dependants : " + " * ".join(str(generators[i]) for i in witness),
            witness=[i + 1 for i in witness],
        )
    if commutes(logical_x, logical_z):
        raise CodeDefinitionError(
            f"X logique {logical_x} et Z logique {logical_z} doivent anticommuter",
            witness=(str(logical_x), str(logical_z)),
        )
    return StabilizerCode(definition.name, n, generators, logical_x, logical_z)


def parse_code_text(text: str, *, name: str = "code") -> CodeDefinition:
    """Lit un fichier de code : ``N 7``, ``GEN IIIXXXX``, ``LOGX ...``, ``LOGZ ...``.

    Raises:
        DslSyntaxError: Mot-cle inconnu ou ligne mal formee.
    """
    fields: dict[str, Any] = {"name": name, "GEN": []}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        keyword = words[0].upper()
        if len(words) != 2:
            raise DslSyntaxError(f"'{keyword}' attend exactement une valeur", line=number, column=1)
        if keyword == "GEN":
            fields["GEN"].append(words[1])
        elif keyword in ("N", "LOGX", "LOGZ", "NAME"):
            fields["name" if keyword == "NAME" else keyword] = words[1]
        else:
            raise DslSyntaxError(f"Mot-cle inconnu '{words[0]}'", line=number, column=1)
    try:
        return CodeDefinition.model_validate(fields)
    except ValidationError as exc:
        raise CodeDefinitionError(f"Definition de code incomplete : {exc}") from exc


def load_code(path: Path | str) -> StabilizerCode:
    path = Path(path)
    return make_code(parse_code_text(path.read_text(encoding="utf-8"), name=path.stem))


@lru_cache(maxsize=1)
def steane_code() -> StabilizerCode:
    """Code de Steane [[7,1,3]], lu depuis data/codes/steane.code."""
    return load_code(config.STEANE_CODE_PATH)


def check_same_code(a: StabilizerCode, b: StabilizerCode) -> None:
    if a != b:
        raise AlgebraError(f"Codes differents : {a.name} et {b.name}")


__all__ = [
    "CodeDefinition",
    "StabilizerCode",
    "check_same_code",
    "load_code",
    "make_code",
    "parse_code_text",
    "steane_code",
]
