"""Semantique des portes : images des generateurs X_j et Z_j par conjugaison.

Les types fleches sont representes en extension : une porte sur ``arity``
qubits est connue par les images de ses 2*arity generateurs. L'image d'un
mot quelconque est le produit des images de ses lettres (Y = iXZ).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Final, Mapping

from src.algebra.additive import AdditiveOperator, PauliExpansion, is_valid_additive
from src.algebra.syntax import parse_operator
from src.errors import AlgebraError, InvalidAdditiveError, UnknownGateError
from src.pauli.pauli_string import PauliString

Generator = tuple[str, int]

CLIFFORD_GATES: Final[frozenset[str]] = frozenset(
    {"I", "X", "Y", "Z", "H", "S", "Sdg", "CNOT", "CZ"}
)

# Tables des portes usuelles a un et deux qubits
_BUILTIN_TABLE: Final[dict[str, dict[Generator, str]]] = {
    "I": {("X", 1): "X", ("Z", 1): "Z"},
    "X": {("X", 1): "X", ("Z", 1): "-Z"},
    "Y": {("X", 1): "-X", ("Z", 1): "-Z"},
    "Z": {("X", 1): "-X", ("Z", 1): "Z"},
    "H": {("X", 1): "Z", ("Z", 1): "X"},
    "S": {("X", 1): "Y", ("Z", 1): "Z"},
    "Sdg": {("X", 1): "-Y", ("Z", 1): "Z"},
    "T": {("X", 1): "(1/rt2)(X + Y)", ("Z", 1): "Z"},
    "Tdg": {("X", 1): "(1/rt2)(X - Y)", ("Z", 1): "Z"},
    "CNOT": {("X", 1): "XX", ("X", 2): "IX", ("Z", 1): "ZI", ("Z", 2): "ZZ"},
    "CZ": {("X", 1): "XZ", ("X", 2): "ZX", ("Z", 1): "ZI", ("Z", 2): "IZ"},
}

# Developpements exacts U = Re + i*Im, utilises pour les portes controlees
_BUILTIN_EXPANSION: Final[dict[str, tuple[str, str | None]]] = {
    "I": ("I", None),
    "X": ("X", None),
    "Y": ("Y", None),
    "Z": ("Z", None),
    "H": ("(1/rt2)(X + Z)", None),
    "S": ("1/2(I + Z)", "1/2(I - Z)"),
    "Sdg": ("1/2(I + Z)", "-1/2(I - Z)"),
    "T": ("(2+rt2)/4 I + (2-rt2)/4 Z", "rt2/4(I - Z)"),
    "Tdg": ("(2+rt2)/4 I + (2-rt2)/4 Z", "-rt2/4(I - Z)"),
    "CNOT": ("1/2(II + IX + ZI - ZX)", None),
    "CZ": ("1/2(II + IZ + ZI - ZZ)", None),
}

_CANONICAL_NAMES: Final[dict[str, str]] = {name.upper(): name for name in _BUILTIN_TABLE}
_CONTROLLED_RE: Final[re.Pattern[str]] = re.compile(r"^C(\d+)-(.+)$", re.IGNORECASE)

# Noms usuels des portes controlees
_ALIASES: Final[dict[str, str]] = {"CCZ": "C2-Z", "CCX": "C2-X", "TOFFOLI": "C2-X"}


@dataclass(frozen=True)
class GateSemantics:
    """Type fleche d'une porte, donne par les images des generateurs.

    Attributes:
        name: Nom canonique.
        arity: Nombre de qubits.
        images: Generateur ("X" | "Z", j) -> image additive sur ``arity`` qubits.
    """

    name: str
    arity: int
    images: Mapping[Generator, AdditiveOperator]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        expected = {(letter, j) for letter in "XZ" for j in range(1, self.arity + 1)}
        if set(self.images) != expected:
            raise AlgebraError(
                f"{self.name} : images attendues pour {sorted(expected)}, "
                f"recues pour {sorted(self.images)}"
            )
        for generator, image in self.images.items():
            if image.n != self.arity:
                raise AlgebraError(f"{self.name} : image de {generator} sur {image.n} qubits")

    def image(self, letter: str, j: int) -> AdditiveOperator:
        if letter == "I":
            return AdditiveOperator.identity(self.arity)
        if letter == "Y":
            key = ("Y", j)
            if key not in self._cache:
                self._cache[key] = derive_Y_action(self, j)
            return self._cache[key]
        return self.images[(letter, j)]

    def word_image(self, x: int, z: int) -> AdditiveOperator:
        """Image du mot local (x, z) sans phase ; memorisee."""
        key = (x, z)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        word = PauliString(self.arity, x, z)
        result = AdditiveOperator.identity(self.arity)
        for j in word.support:
            result = result @ self.image(word.letter(j), j)
        self._cache[key] = result
        return result

    def is_clifford(self) -> bool:
        return all(image.is_pauli() for image in self.images.values())

    def generators(self) -> list[Generator]:
        return [(letter, j) for j in range(1, self.arity + 1) for letter in "XZ"]

    def validate(self) -> None:
        """Verifie validite des images et conservation des (anti)commutations.

        Raises:
            InvalidAdditiveError: Image non unitaire ou relation violee.
        """
        for generator, image in self.images.items():
            if not is_valid_additive(image):
                raise InvalidAdditiveError(
                    f"{self.name} : image de {generator} invalide ({image})", witness=generator
                )
        generators = self.generators()
        for i, left in enumerate(generators):
            for right in generators[i + 1 :]:
                anticommuting = left[1] == right[1]
                a, b = self.images[left], self.images[right]
                ab, ba = a.multiply(b), b.multiply(a)
                expected = PauliExpansion(-ba.re, -ba.im) if anticommuting else ba
                if ab != expected:
                    relation = "anticommuter" if anticommuting else "commuter"
                    raise InvalidAdditiveError(
                        f"{self.name} : les images de {left} et {right} devraient {relation}",
                        witness=(left, right),
                    )


def derive_Y_action(g: GateSemantics, j: int) -> AdditiveOperator:
    """Image de Y_j = i * image(X_j) * image(Z_j).

    Raises:
        AlgebraError: Si le resultat n'est pas reel (images incoherentes).
    """
    product = g.image("X", j).multiply(g.image("Z", j))
    # i(R + iJ) = iR - J
    if not product.re.is_zero():
        raise AlgebraError(
            f"{g.name} : i*img(X{j})*img(Z{j}) n'est pas hermitien", witness=product
        )
    return -product.im


def semantics_from_labels(name: str, arity: int, table: Mapping[Generator, str]) -> GateSemantics:
    images = {generator: parse_operator(text) for generator, text in table.items()}
    return GateSemantics(name, arity, images)


def canonical_name(name: str) -> str:
    """Nom canonique d'une porte predefinie (insensible a la casse)."""
    canonical = _CANONICAL_NAMES.get(name.upper())
    if canonical is None:
        raise UnknownGateError(f"Porte inconnue : {name}")
    return canonical


@lru_cache(maxsize=None)
def builtin_semantics(name: str) -> GateSemantics:
    """Semantique d'une porte predefinie (I, X, Y, Z, H, S, Sdg, T, Tdg, CNOT, CZ)."""
    canonical = canonical_name(name)
    table = _BUILTIN_TABLE[canonical]
    arity = max(j for _, j in table)
    return semantics_from_labels(canonical, arity, table)


@lru_cache(maxsize=None)
def builtin_expansion(name: str) -> PauliExpansion:
    """Developpement exact U = Re + i*Im d'une porte predefinie."""
    canonical = canonical_name(name)
    re_text, im_text = _BUILTIN_EXPANSION[canonical]
    re_part = parse_operator(re_text)
    im_part = parse_operator(im_text) if im_text else AdditiveOperator.zero(re_part.n)
    return PauliExpansion(re_part, im_part)


@lru_cache(maxsize=None)
def resolve_semantics(name: str) -> GateSemantics:
    """Semantique d'un nom de porte, y compris ``C<k>-NOM`` (k controles).

    Raises:
        UnknownGateError: Nom inconnu.
    """
    name = _ALIASES.get(name.upper(), name)
    match = _CONTROLLED_RE.match(name)
    if match is not None:
        from src.inference.controlled import controlled_arrow_type, re_im_decompose

        k = int(match.group(1))
        base = resolve_semantics(match.group(2))
        re_part, im_part = re_im_decompose(builtin_expansion(base.name))
        return controlled_arrow_type(base, re_part, im_part, k)
    return builtin_semantics(name)


def is_clifford_name(name: str) -> bool:
    try:
        return canonical_name(name) in CLIFFORD_GATES
    except UnknownGateError:
        return False


__all__ = [
    "CLIFFORD_GATES",
    "GateSemantics",
    "builtin_expansion",
    "builtin_semantics",
    "canonical_name",
    "derive_Y_action",
    "is_clifford_name",
    "resolve_semantics",
    "semantics_from_labels",
]
