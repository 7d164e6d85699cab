"""Operateurs additifs : sommes de chaines de Pauli a coefficients exacts.

Un ``AdditiveOperator`` est une somme reelle sum_P c_P P (la phase de chaque
mot est repliee dans son coefficient). Il sert a la fois de type additif
(lorsqu'il est unitaire et hermitien) et de simple somme de Pauli, par
exemple pour les parties Re(U) et Im(U). Les produits de deux sommes reelles
ont en general une partie imaginaire : ``PauliExpansion`` porte le couple
(re, im) d'un operateur quelconque U = re + i*im.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from src.errors import AlgebraError, InvalidAdditiveError, PauliLengthError
from src.pauli.pauli_string import PauliString
from src.pauli.ring import ONE, ZERO, RingCoeff

Key = tuple[int, int]


def _key_sort(n: int):
    def sort_key(item: tuple[Key, RingCoeff]) -> tuple[int, ...]:
        (x, z), _ = item
        return PauliString(n, x, z).sort_key()

    return sort_key


@dataclass(frozen=True, slots=True)
class AdditiveOperator:
    """Somme reelle de mots de Pauli, sans coefficient nul, en ordre canonique.

    Attributes:
        n: Nombre de qubits.
        terms: Couples ((x, z), coefficient) tries lexicographiquement (I<X<Y<Z).
    """

    n: int
    terms: tuple[tuple[Key, RingCoeff], ...] = ()

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, n: int, coefficients: Mapping[Key, RingCoeff]) -> AdditiveOperator:
        items = [(key, c) for key, c in coefficients.items() if not c.is_zero()]
        items.sort(key=_key_sort(n))
        return cls(n, tuple(items))

    @classmethod
    def zero(cls, n: int) -> AdditiveOperator:
        return cls(n, ())

    @classmethod
    def identity(cls, n: int) -> AdditiveOperator:
        return cls(n, (((0, 0), ONE),))

    @classmethod
    def from_pauli(cls, p: PauliString, coeff: RingCoeff = ONE) -> AdditiveOperator:
        """Terme unique ; la phase de ``p`` doit etre +-1."""
        if not p.is_hermitian():
            raise AlgebraError(f"Phase imaginaire dans {p.label} : terme non hermitien")
        return cls.from_dict(p.n, {p.key: coeff * p.sign})

    @classmethod
    def from_label(cls, label: str) -> AdditiveOperator:
        return cls.from_pauli(PauliString.from_label(label))

    @classmethod
    def from_terms(
        cls, n: int, terms: Iterable[tuple[PauliString, RingCoeff]]
    ) -> AdditiveOperator:
        acc = Accumulator(n)
        for p, c in terms:
            acc.add_pauli(p, c)
        return acc.result()

    # ------------------------------------------------------------------
    # Acces
    # ------------------------------------------------------------------

    def __iter__(self) -> Iterator[tuple[PauliString, RingCoeff]]:
        for (x, z), c in self.terms:
            yield PauliString(self.n, x, z), c

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, word: str | PauliString) -> RingCoeff:
        p = PauliString.from_label(word) if isinstance(word, str) else word
        for key, c in self.terms:
            if key == p.key:
                return c * (p.sign if p.is_hermitian() else 1)
        return ZERO

    def as_dict(self) -> dict[Key, RingCoeff]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def as_pauli(self) -> PauliString | None:
        """Chaine signee si l'operateur est un terme unique de coefficient +-1."""
        if len(self.terms) != 1:
            return None
        (x, z), c = self.terms[0]
        if c == ONE:
            return PauliString(self.n, x, z, 0)
        if c == -ONE:
            return PauliString(self.n, x, z, 2)
        return None

    def is_pauli(self) -> bool:
        return self.as_pauli() is not None

    def is_identity(self) -> bool:
        return self.terms == (((0, 0), ONE),)

    def coefficients(self) -> list[RingCoeff]:
        return [c for _, c in self.terms]

    # ------------------------------------------------------------------
    # Arithmetique
    # ------------------------------------------------------------------

    def _check(self, other: AdditiveOperator) -> None:
        if self.n != other.n:
            raise PauliLengthError(f"Operateurs sur {self.n} et {other.n} qubits")

    def __add__(self, other: AdditiveOperator) -> AdditiveOperator:
        self._check(other)
        acc = Accumulator(self.n, self.as_dict())
        for key, c in other.terms:
            acc.add_key(key, c)
        return acc.result()

    def __neg__(self) -> AdditiveOperator:
        return AdditiveOperator(self.n, tuple((key, -c) for key, c in self.terms))

    def __sub__(self, other: AdditiveOperator) -> AdditiveOperator:
        return self + (-other)

    def scale(self, factor: RingCoeff | int) -> AdditiveOperator:
        factor = RingCoeff.of(factor)
        if factor.is_zero():
            return AdditiveOperator.zero(self.n)
        return AdditiveOperator(self.n, tuple((key, c * factor) for key, c in self.terms))

    def multiply(self, other: AdditiveOperator) -> PauliExpansion:
        """Produit self * other, separe en parties reelle et imaginaire."""
        self._check(other)
        re = Accumulator(self.n)
        im = Accumulator(self.n)
        for p, c in self:
            for q, d in other:
                r = p * q
                cd = c * d
                key = r.key
                if r.phase == 0:
                    re.add_key(key, cd)
                elif r.phase == 2:
                    re.add_key(key, -cd)
                elif r.phase == 1:
                    im.add_key(key, cd)
                else:
                    im.add_key(key, -cd)
        return PauliExpansion(re.result(), im.result())

    def __matmul__(self, other: AdditiveOperator) -> AdditiveOperator:
        """Produit reel ; echoue si une partie imaginaire subsiste."""
        expansion = self.multiply(other)
        if not expansion.im.is_zero():
            raise AlgebraError(
                f"Produit non reel : ({self}) * ({other}) a une partie imaginaire"
            )
        return expansion.re

    def tensor(self, other: AdditiveOperator) -> AdditiveOperator:
        acc = Accumulator(self.n + other.n)
        for (x1, z1), c in self.terms:
            for (x2, z2), d in other.terms:
                acc.add_key((x1 | (x2 << self.n), z1 | (z2 << self.n)), c * d)
        return acc.result()

    def embed(self, qubits: Sequence[int], n: int) -> AdditiveOperator:
        acc = Accumulator(n)
        for p, c in self:
            acc.add_pauli(p.embed(qubits, n), c)
        return acc.result()

    def restrict(self, qubits: Sequence[int]) -> AdditiveOperator:
        acc = Accumulator(len(qubits))
        for p, c in self:
            acc.add_pauli(p.restrict(qubits), c)
        return acc.result()

    def commutes_with(self, other: AdditiveOperator) -> bool:
        return self.multiply(other) == other.multiply(self)

    # ------------------------------------------------------------------
    # Affichage
    # ------------------------------------------------------------------

    def __str__(self) -> str:
        from src.algebra.syntax import format_operator

        return format_operator(self)


@dataclass(frozen=True, slots=True)
class PauliExpansion:
    """Operateur quelconque U = re + i*im, re et im etant des sommes reelles."""

    re: AdditiveOperator
    im: AdditiveOperator

    @property
    def n(self) -> int:
        return self.re.n

    @classmethod
    def real(cls, op: AdditiveOperator) -> PauliExpansion:
        return cls(op, AdditiveOperator.zero(op.n))

    def __mul__(self, other: PauliExpansion) -> PauliExpansion:
        rr = self.re.multiply(other.re)
        ri = self.re.multiply(other.im)
        ir = self.im.multiply(other.re)
        ii = self.im.multiply(other.im)
        # (a + ib)(c + id) = (ac - bd) + i(ad + bc)
        re = rr.re - ii.re - ri.im - ir.im
        im = rr.im + ri.re + ir.re - ii.im
        return PauliExpansion(re, im)

    def dagger(self) -> PauliExpansion:
        return PauliExpansion(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im.is_zero()

    def __str__(self) -> str:
        if self.im.is_zero():
            return str(self.re)
        return f"({self.re}) + i({self.im})"


class Accumulator:
    """Dictionnaire mot -> coefficient, regroupe les termes semblables."""

    __slots__ = ("n", "_terms", "added")

    def __init__(self, n: int, initial: Mapping[Key, RingCoeff] | None = None) -> None:
        self.n = n
        self._terms: dict[Key, RingCoeff] = dict(initial or {})
        self.added = 0

    def add_key(self, key: Key, coeff: RingCoeff) -> None:
        self.added += 1
        current = self._terms.get(key)
        self._terms[key] = coeff if current is None else current + coeff

    def add_pauli(self, p: PauliString, coeff: RingCoeff) -> None:
        if p.n != self.n:
            raise PauliLengthError(f"Mot {p.label} sur {p.n} qubits, attendu {self.n}")
        if not p.is_hermitian():
            raise AlgebraError(f"Phase imaginaire dans {p.label}")
        self.add_key(p.key, coeff * p.sign)

    def result(self) -> AdditiveOperator:
        return AdditiveOperator.from_dict(self.n, self._terms)


def product(a: AdditiveOperator, b: AdditiveOperator) -> PauliExpansion:
    return a.multiply(b)


def is_valid_additive(m: AdditiveOperator) -> bool:
    """Vrai si m est un type additif : hermitien (automatique) et m^2 = I."""
    if m.is_zero():
        return False
    square = m.multiply(m)
    return square.im.is_zero() and square.re.is_identity()


def require_valid_additive(m: AdditiveOperator) -> AdditiveOperator:
    if not is_valid_additive(m):
        square = m.multiply(m)
        raise InvalidAdditiveError(
            f"{m} n'est pas unitaire : son carre vaut {square}", witness=square
        )
    return m


__all__ = [
    "Accumulator",
    "AdditiveOperator",
    "PauliExpansion",
    "is_valid_additive",
    "product",
    "require_valid_additive",
]
