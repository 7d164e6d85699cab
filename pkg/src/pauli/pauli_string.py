"""Chaines de Pauli avec phase, codees sur deux plans de bits.

Le qubit q (1-based) correspond au bit q-1 des entiers ``x`` et ``z`` :
(x, z) = (0, 0) -> I, (1, 0) -> X, (1, 1) -> Y, (0, 1) -> Z. La lettre Y est
litterale (Y = i X Z) et la phase est un exposant de i modulo 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Final, Iterable, Sequence

from src.errors import PauliLengthError, QubitIndexError

LETTERS: Final[str] = "IXYZ"

# (x, z) -> lettre et inverse
_BITS_TO_LETTER: Final[dict[tuple[int, int], str]] = {
    (0, 0): "I",
    (1, 0): "X",
    (1, 1): "Y",
    (0, 1): "Z",
}
_LETTER_TO_BITS: Final[dict[str, tuple[int, int]]] = {
    v: k for k, v in _BITS_TO_LETTER.items()
}

# Ordre lexicographique des lettres : I < X < Y < Z
_LETTER_RANK: Final[dict[tuple[int, int], int]] = {
    (0, 0): 0,
    (1, 0): 1,
    (1, 1): 2,
    (0, 1): 3,
}

_PHASE_PREFIX: Final[dict[int, str]] = {0: "", 1: "i", 2: "-", 3: "-i"}


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exposant de i accumule par le produit lettre a lettre (Y litteral)."""
    y1 = x1 & z1
    only_x1 = x1 & ~z1
    only_z1 = z1 & ~x1
    y2 = x2 & z2
    only_x2 = x2 & ~z2
    only_z2 = z2 & ~x2
    plus = (y1 & only_z2) | (only_x1 & y2) | (only_z1 & only_x2)
    minus = (y1 & only_x2) | (only_x1 & only_z2) | (only_z1 & y2)
    return (plus.bit_count() - minus.bit_count()) % 4


@dataclass(frozen=True, slots=True)
class PauliString:
    """Mot de Pauli sur ``n`` qubits avec phase i^phase.

    Attributes:
        n: Nombre de qubits.
        x: Plan de bits X.
        z: Plan de bits Z.
        phase: Exposant de i (modulo 4).
    """

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase", self.phase % 4)

    # ------------------------------------------------------------------
    # Construction et affichage
    # ------------------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Lit une chaine du type ``-ZII``, ``iYX`` ou ``-iXZ``.

        Raises:
            ValueError: Si une lettre n'appartient pas a {I, X, Y, Z}.
        """
        text = label.strip()
        phase = 0
        if text.startswith("-i"):
            phase, text = 3, text[2:]
        elif text.startswith("+i"):
            phase, text = 1, text[2:]
        elif text.startswith("i"):
            phase, text = 1, text[1:]
        elif text.startswith("-"):
            phase, text = 2, text[1:]
        elif text.startswith("+"):
            text = text[1:]
        if not text:
            raise ValueError(f"Mot de Pauli vide : {label!r}")
        x = z = 0
        for position, letter in enumerate(text):
            if letter not in _LETTER_TO_BITS:
                raise ValueError(f"Lettre de Pauli invalide {letter!r} dans {label!r}")
            bx, bz = _LETTER_TO_BITS[letter]
            x |= bx << position
            z |= bz << position
        return cls(len(text), x, z, phase)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, phase: int = 0) -> PauliString:
        """Lettre ``letter`` sur le qubit ``qubit`` (1-based), identite ailleurs."""
        check_qubit(qubit, n)
        bx, bz = _LETTER_TO_BITS[letter]
        return cls(n, bx << (qubit - 1), bz << (qubit - 1), phase)

    def letter(self, qubit: int) -> str:
        check_qubit(qubit, self.n)
        shift = qubit - 1
        return _BITS_TO_LETTER[((self.x >> shift) & 1, (self.z >> shift) & 1)]

    @property
    def word(self) -> str:
        """Lettres sans la phase, qubit 1 a gauche."""
        return "".join(
            _BITS_TO_LETTER[((self.x >> i) & 1, (self.z >> i) & 1)] for i in range(self.n)
        )

    @property
    def label(self) -> str:
        return f"{_PHASE_PREFIX[self.phase]}{self.word}"

    def __str__(self) -> str:
        return self.label

    def sort_key(self) -> tuple[int, ...]:
        return tuple(
            _LETTER_RANK[((self.x >> i) & 1, (self.z >> i) & 1)] for i in range(self.n)
        )

    # ------------------------------------------------------------------
    # Proprietes
    # ------------------------------------------------------------------

    @property
    def key(self) -> tuple[int, int]:
        return (self.x, self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def sign(self) -> int:
        """+1 ou -1 pour une chaine hermitienne."""
        if not self.is_hermitian():
            raise ValueError(f"{self.label} n'est pas hermitienne")
        return 1 if self.phase == 0 else -1

    @property
    def support(self) -> tuple[int, ...]:
        bits = self.x | self.z
        return tuple(i + 1 for i in range(self.n) if (bits >> i) & 1)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def unsigned(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, 0)

    def with_phase(self, phase: int) -> PauliString:
        return PauliString(self.n, self.x, self.z, phase)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    # ------------------------------------------------------------------
    # Algebre
    # ------------------------------------------------------------------

    def __mul__(self, other: PauliString) -> PauliString:
        return mul(self, other)

    def commutes_with(self, other: PauliString) -> bool:
        return commutes(self, other)

    def restrict(self, qubits: Sequence[int]) -> PauliString:
        """Sous-mot sur ``qubits`` (dans l'ordre donne), phase conservee."""
        x = z = 0
        for position, qubit in enumerate(qubits):
            shift = qubit - 1
            x |= ((self.x >> shift) & 1) << position
            z |= ((self.z >> shift) & 1) << position
        return PauliString(len(qubits), x, z, self.phase)

    def embed(self, qubits: Sequence[int], n: int) -> PauliString:
        """Place ce mot local sur les qubits ``qubits`` d'un registre de taille n."""
        if len(qubits) != self.n:
            raise PauliLengthError(
                f"{self.n} lettres pour {len(qubits)} positions"
            )
        x = z = 0
        for position, qubit in enumerate(qubits):
            check_qubit(qubit, n)
            x |= ((self.x >> position) & 1) << (qubit - 1)
            z |= ((self.z >> position) & 1) << (qubit - 1)
        return PauliString(n, x, z, self.phase)

    def without_qubit(self, qubit: int) -> PauliString:
        keep = [q for q in range(1, self.n + 1) if q != qubit]
        return self.restrict(keep)

    def insert_identity(self, qubit: int) -> PauliString:
        """Inverse de ``without_qubit`` : ajoute un I en position ``qubit``."""
        positions = [q for q in range(1, self.n + 2) if q != qubit]
        return self.embed(positions, self.n + 1)


def check_qubit(qubit: int, n: int) -> None:
    if not 1 <= qubit <= n:
        raise QubitIndexError(f"Qubit {qubit} hors de l'intervalle 1..{n}")


def _check_lengths(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise PauliLengthError(f"Longueurs differentes : {p.label} ({p.n}) et {q.label} ({q.n})")


def mul(p: PauliString, q: PauliString) -> PauliString:
    """Produit pq avec phase exacte, sans arithmetique matricielle."""
    _check_lengths(p, q)
    phase = p.phase + q.phase + _product_phase(p.x, p.z, q.x, q.z)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def commutes(p: PauliString, q: PauliString) -> bool:
    """Vrai si le nombre de positions ou les lettres anticommutent est pair."""
    _check_lengths(p, q)
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() % 2 == 0


def tensor(p: PauliString, q: PauliString) -> PauliString:
    """Concatenation p (qubits 1..p.n) puis q ; les phases se multiplient."""
    return PauliString(
        p.n + q.n, p.x | (q.x << p.n), p.z | (q.z << p.n), p.phase + q.phase
    )


def product(paulis: Iterable[PauliString], n: int) -> PauliString:
    result = PauliString.identity(n)
    for p in paulis:
        result = mul(result, p)
    return result


__all__ = [
    "LETTERS",
    "PauliString",
    "check_qubit",
    "commutes",
    "mul",
    "product",
    "tensor",
]
