"""Mesure en base Z pour les types additifs.

Un operateur M sur n qubits s'ecrit, relativement au qubit mesure,
M = I (x) N0 + X (x) N1 + Y (x) N2 + Z (x) N3. Trois resultats exacts :
  - un qubit, M = aX + bY + cZ : Pr(+1) = (1 + c)/2 ;
  - deux qubits, M1 & M2 : avec M3 = M1 M2 et c_j le coefficient de Z (x) I
    dans M_j, p+- = (1 +- sum c_j)/2 et le qubit restant est de type
    M+ = sum_j (N_j0 + N_j3 - c_j I) / (2 p+)  (resp. N_j0 - N_j3 + c_j I) ;
  - M sans composante X/Y sur le qubit mesure : N0 + N3 (issue +1), N0 - N3 (issue -1).
"""

from __future__ import annotations

from dataclasses import dataclass

from src.algebra.additive import (
    Accumulator,
    AdditiveOperator,
    is_valid_additive,
    require_valid_additive,
)
from src.algebra.qtype import Branch
from src.errors import (
    AlgebraError,
    InvalidAdditiveError,
    NonCommutingTermsError,
    UnsupportedAnalysis,
)
from src.measurement.outcome import MeasurementOutcome, OutcomeBranch
from src.pauli.pauli_string import PauliString, check_qubit
from src.pauli.ring import ONE, ZERO, RingCoeff

_COMPONENT: dict[str, int] = {"I": 0, "X": 1, "Y": 2, "Z": 3}


@dataclass(frozen=True, slots=True)
class QubitDecomposition:
    """Composantes N0..N3 d'un operateur relativement au qubit ``qubit``.

    Attributes:
        qubit: Qubit de reference (1-based) dans l'operateur d'origine.
        components: (N0, N1, N2, N3), chacun sur n - 1 qubits.
    """

    qubit: int
    components: tuple[AdditiveOperator, AdditiveOperator, AdditiveOperator, AdditiveOperator]

    @classmethod
    def of(cls, m: AdditiveOperator, qubit: int) -> QubitDecomposition:
        check_qubit(qubit, m.n)
        accumulators = [Accumulator(m.n - 1) for _ in range(4)]
        for p, c in m:
            accumulators[_COMPONENT[p.letter(qubit)]].add_pauli(p.without_qubit(qubit), c)
        n0, n1, n2, n3 = (acc.result() for acc in accumulators)
        return cls(qubit, (n0, n1, n2, n3))

    @property
    def n0(self) -> AdditiveOperator:
        return self.components[0]

    @property
    def n1(self) -> AdditiveOperator:
        return self.components[1]

    @property
    def n2(self) -> AdditiveOperator:
        return self.components[2]

    @property
    def n3(self) -> AdditiveOperator:
        return self.components[3]

    @property
    def n(self) -> int:
        return self.n0.n + 1

    def recompose(self) -> AdditiveOperator:
        acc = Accumulator(self.n)
        for letter, component in zip("IXYZ", self.components):
            local = PauliString.single(self.n, self.qubit, letter)
            for p, c in component:
                acc.add_pauli(local * p.insert_identity(self.qubit), c)
        return acc.result()

    def has_transverse_part(self) -> bool:
        """Vrai si une composante X ou Y est presente sur le qubit."""
        return not (self.n1.is_zero() and self.n2.is_zero())

    def named_coefficients(self) -> dict[str, RingCoeff]:
        """Coefficients c, x, y, z (de N3) et xt, yt, zt (de N0), operateur a deux qubits."""
        if self.n != 2:
            raise AlgebraError("Coefficients nommes definis pour deux qubits seulement")
        return {
            "c": self.n3.coefficient("I"),
            "x": self.n3.coefficient("X"),
            "y": self.n3.coefficient("Y"),
            "z": self.n3.coefficient("Z"),
            "xt": self.n0.coefficient("X"),
            "yt": self.n0.coefficient("Y"),
            "zt": self.n0.coefficient("Z"),
        }


def meas_prob_1q(m: AdditiveOperator) -> tuple[RingCoeff, RingCoeff]:
    """Probabilites exactes ((1 + c)/2, (1 - c)/2) pour un etat de type m = aX + bY + cZ.

    Raises:
        InvalidAdditiveError: m n'est pas un type additif a un qubit.
        AlgebraError: m = +-I ne fixe pas d'etat.
    """
    require_valid_additive(m)
    if m.n != 1:
        raise InvalidAdditiveError(f"Lemme de Born a un qubit applique a {m.n} qubits")
    if not m.coefficient("I").is_zero():
        raise AlgebraError(f"Le type {m} ne determine aucun etat a un qubit")
    c = m.coefficient("Z")
    return (ONE + c).halve(), (ONE - c).halve()


def measure_additive_1q(m: AdditiveOperator, *, keep_impossible: bool = False) -> MeasurementOutcome:
    p_plus, p_minus = meas_prob_1q(m)
    branches = []
    for sign, probability in ((1, p_plus), (-1, p_minus)):
        if probability.is_zero() and not keep_impossible:
            continue
        branches.append(OutcomeBranch(sign, Branch.from_labels(["Z" if sign > 0 else "-Z"]), probability))
    return MeasurementOutcome(1, tuple(branches))


def _inverse_or_unsupported(value: RingCoeff, what: str) -> RingCoeff:
    inverse = value.try_inverse()
    if inverse is None:
        raise UnsupportedAnalysis(
            f"Renormalisation hors de l'anneau : 1/{what} avec {what} = {float(value):.12g}"
        )
    return inverse


def measure_additive_2q(
    m1: AdditiveOperator,
    m2: AdditiveOperator,
    qubit: int = 1,
    *,
    keep_impossible: bool = False,
) -> MeasurementOutcome:
    """Type post-mesure d'un etat a deux qubits de type m1 & m2.

    Le qubit mesure est ramene en tete ; l'autre qubit recoit M+ (issue +1)
    ou M- (issue -1). Les issues de probabilite nulle sont retirees.

    Raises:
        InvalidAdditiveError: m1 ou m2 invalide.
        NonCommutingTermsError: m1 et m2 ne commutent pas.
        UnsupportedAnalysis: 1/(2p+-) hors de l'anneau (probabilites fournies en flottants).
    """
    for m in (m1, m2):
        require_valid_additive(m)
        if m.n != 2:
            raise AlgebraError(f"Theoreme a deux qubits applique a {m}")
    check_qubit(qubit, 2)
    if not m1.commutes_with(m2):
        raise NonCommutingTermsError(f"{m1} et {m2} ne commutent pas", witness=(0, 1))
    other = 2 if qubit == 1 else 1
    order = (qubit, other)
    first, second = m1.restrict(order), m2.restrict(order)
    third = first @ second
    if third.is_identity() or (-third).is_identity():
        raise AlgebraError(f"Termes dependants : {m1} * {m2} = {third}", witness=[0, 1])

    decompositions = [QubitDecomposition.of(m, 1) for m in (first, second, third)]
    total_c = sum((d.n3.coefficient("I") for d in decompositions), ZERO)
    identity = AdditiveOperator.identity(1)
    z_local = AdditiveOperator.from_pauli(PauliString.single(2, qubit, "Z"))

    branches = []
    for sign in (1, -1):
        twice_p = ONE + total_c if sign > 0 else ONE - total_c
        probability = twice_p.halve()
        if probability.signum() < 0 or (ONE - probability).signum() < 0:
            raise AlgebraError(f"Probabilite {probability} hors de [0, 1] pour {m1} & {m2}")
        if probability.is_zero():
            if keep_impossible:
                contradiction = Branch(2, (z_local if sign > 0 else -z_local, m1, m2))
                branches.append(OutcomeBranch(sign, contradiction, ZERO))
            continue
        total = AdditiveOperator.zero(1)
        for d in decompositions:
            c = d.n3.coefficient("I")
            if sign > 0:
                total = total + d.n0 + d.n3 - identity.scale(c)
            else:
                total = total + d.n0 - d.n3 + identity.scale(c)
        remaining = total.scale(_inverse_or_unsupported(twice_p, f"2p{'+' if sign > 0 else '-'}"))
        if not is_valid_additive(remaining):
            raise InvalidAdditiveError(
                f"Type post-mesure {remaining} invalide pour {m1} & {m2}", witness=remaining
            )
        measured = z_local if sign > 0 else -z_local
        branch = Branch(2, (measured, remaining.embed([other], 2)))
        branches.append(OutcomeBranch(sign, branch, probability))
    return MeasurementOutcome(qubit, tuple(branches))


def measure_additive_IZ_term(
    m: AdditiveOperator, qubit: int
) -> tuple[AdditiveOperator, AdditiveOperator]:
    """Termes N0 + N3 (issue +1) et N0 - N3 (issue -1) sur les n - 1 autres qubits.

    Raises:
        UnsupportedAnalysis: m a une composante X ou Y sur le qubit mesure.
    """
    decomposition = QubitDecomposition.of(m, qubit)
    if decomposition.has_transverse_part():
        raise UnsupportedAnalysis(
            f"{m} a une composante X/Y sur le qubit {qubit} : cas additif general non couvert"
        )
    return decomposition.n0 + decomposition.n3, decomposition.n0 - decomposition.n3


__all__ = [
    "QubitDecomposition",
    "meas_prob_1q",
    "measure_additive_1q",
    "measure_additive_2q",
    "measure_additive_IZ_term",
]
