"""Types logiques : St & (operateur logique), produit tensoriel logique."""

from __future__ import annotations

from dataclasses import dataclass

from src.algebra.additive import AdditiveOperator
from src.algebra.qtype import Branch
from src.errors import AlgebraError
from src.pauli.pauli_string import PauliString, tensor
from src.qecc.codes import StabilizerCode, check_same_code

LOGICAL_LETTERS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class LogicalType:
    """Type logique ``sign * letter_L`` d'un code : St = g_1 & ... & g_m, plus le terme logique.

    Attributes:
        code: Code stabilisateur.
        letter: "I" (espace de code), "X", "Y" ou "Z".
        sign: +1 ou -1 (ex. -Y_L).
    """

    code: StabilizerCode
    letter: str
    sign: int = 1

    def __post_init__(self) -> None:
        if self.letter not in LOGICAL_LETTERS:
            raise AlgebraError(f"Lettre logique inconnue : {self.letter}")
        if self.sign not in (1, -1) or (self.letter == "I" and self.sign != 1):
            raise AlgebraError(f"Signe logique invalide : {self.sign}{self.letter}")

    def operator(self) -> PauliString | None:
        """Operateur logique signe, None pour I_L."""
        if self.letter == "I":
            return None
        op = self.code.logical(self.letter)
        return op if self.sign > 0 else -op

    def branch(self) -> Branch:
        """Materialisation : generateurs puis operateur logique."""
        terms = list(self.code.stabilizer_terms())
        op = self.operator()
        if op is not None:
            terms.append(AdditiveOperator.from_pauli(op))
        return Branch(self.code.n, tuple(terms))

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else ''}{self.letter}_L"


def logical_type(code: StabilizerCode, letter: str, sign: int = 1) -> LogicalType:
    return LogicalType(code, letter, sign)


def logical_tensor(a: LogicalType, b: LogicalType) -> Branch:
    """(St (x) I) & (I (x) St) & (A_L (x) B_L), le dernier terme omis pour I_L (x) I_L.

    Raises:
        AlgebraError: Les deux types portent sur des codes differents.
    """
    check_same_code(a.code, b.code)
    code = a.code
    identity = PauliString.identity(code.n)
    terms = [AdditiveOperator.from_pauli(tensor(g, identity)) for g in code.generators]
    terms += [AdditiveOperator.from_pauli(tensor(identity, g)) for g in code.generators]
    left = a.operator() or identity
    right = b.operator() or identity
    product = tensor(left, right)
    if not product.is_identity():
        terms.append(AdditiveOperator.from_pauli(product))
    return Branch(2 * code.n, tuple(terms))


__all__ = ["LOGICAL_LETTERS", "LogicalType", "logical_tensor", "logical_type"]
