"""Portes controlees et types additifs des portes hermitiennes.

Controles sur les qubits 1..k, cible sur k+1..k+n. Avec Pi = (I - Z)/2 :
  - Z_j (controle) est invariant ;
  - X_j (controle) -> X_j - 2^-(k-1) [prod_{i!=j} (I-Z)_i] X_j (I - Re)
                          + 2^-(k-1) [prod_{i!=j} (I-Z)_i] Y_j Im ;
  - P (cible), U : P -> V  =>  I^k P - 2^-k (I-Z)^k (P - V).
"""

from __future__ import annotations

from src.algebra.additive import (
    AdditiveOperator,
    PauliExpansion,
    is_valid_additive,
    require_valid_additive,
)
from src.errors import AlgebraError, InvalidAdditiveError
from src.inference.gates import GateSemantics
from src.pauli.pauli_string import PauliString
from src.pauli.ring import RingCoeff


def _minus_z(k: int, *, skip: int | None = None, letter: str = "I") -> AdditiveOperator:
    """Produit tensoriel des (I - Z)_i sur k qubits, ``letter`` en position ``skip``."""
    result = AdditiveOperator.identity(0)
    for i in range(1, k + 1):
        if i == skip:
            factor = AdditiveOperator.from_label(letter)
        else:
            factor = AdditiveOperator.from_label("I") - AdditiveOperator.from_label("Z")
        result = result.tensor(factor)
    return result


def re_im_decompose(u: PauliExpansion) -> tuple[AdditiveOperator, AdditiveOperator]:
    """Parties Re et Im d'un unitaire donne par son developpement exact.

    Verifie symboliquement Re^2 + Im^2 = I et Re*Im = Im*Re.

    Raises:
        InvalidAdditiveError: Le developpement n'est pas celui d'un unitaire.
    """
    re_part, im_part = u.re, u.im
    n = re_part.n
    re_sq = re_part.multiply(re_part)
    im_sq = im_part.multiply(im_part)
    total = PauliExpansion(re_sq.re + im_sq.re, re_sq.im + im_sq.im)
    if total != PauliExpansion.real(AdditiveOperator.identity(n)):
        raise InvalidAdditiveError(f"Re^2 + Im^2 = {total}, different de I", witness=total)
    if re_part.multiply(im_part) != im_part.multiply(re_part):
        raise InvalidAdditiveError("Re et Im ne commutent pas", witness=(re_part, im_part))
    return re_part, im_part


def _conjugate(u: PauliExpansion, p: AdditiveOperator) -> PauliExpansion:
    return u * PauliExpansion.real(p) * u.dagger()


def _check_consistent(g: GateSemantics, re_part: AdditiveOperator, im_part: AdditiveOperator) -> None:
    u = PauliExpansion(re_part, im_part)
    for (letter, j), image in g.images.items():
        source = AdditiveOperator.from_pauli(PauliString.single(g.arity, j, letter))
        if _conjugate(u, source) != PauliExpansion.real(image):
            raise AlgebraError(
                f"Re/Im incoherents avec {g.name} sur {letter}{j}", witness=(letter, j)
            )


def controlled_arrow_type(
    g: GateSemantics, re_part: AdditiveOperator, im_part: AdditiveOperator, k: int
) -> GateSemantics:
    """Type fleche de control^k-U a partir de celui de U et de Re(U), Im(U).

    Args:
        g: Semantique de U sur n qubits.
        re_part: Re(U) = (U + U^dag)/2.
        im_part: Im(U) = (U - U^dag)/(2i).
        k: Nombre de controles (k = 0 renvoie g).

    Raises:
        AlgebraError: k negatif ou Re/Im incoherents avec g.
    """
    if k < 0:
        raise AlgebraError(f"Nombre de controles negatif : {k}")
    if k == 0:
        return g
    if re_part.n != g.arity or im_part.n != g.arity:
        raise AlgebraError("Re/Im et semantique de tailles differentes")
    _check_consistent(g, re_part, im_part)
    n = g.arity
    identity_n = AdditiveOperator.identity(n)
    identity_k = AdditiveOperator.identity(k)
    control_scale = RingCoeff.dyadic(1, k - 1)
    images: dict[tuple[str, int], AdditiveOperator] = {}
    for j in range(1, k + 1):
        images[("Z", j)] = AdditiveOperator.from_pauli(PauliString.single(k + n, j, "Z"))
        x_j = AdditiveOperator.from_pauli(PauliString.single(k + n, j, "X"))
        leaking = _minus_z(k, skip=j, letter="X").tensor(identity_n - re_part)
        rotating = _minus_z(k, skip=j, letter="Y").tensor(im_part)
        images[("X", j)] = x_j - leaking.scale(control_scale) + rotating.scale(control_scale)
    target_scale = RingCoeff.dyadic(1, k)
    projector = _minus_z(k)
    for (letter, j), image in g.images.items():
        source = AdditiveOperator.from_pauli(PauliString.single(n, j, letter))
        lifted = identity_k.tensor(source)
        images[(letter, k + j)] = lifted - projector.tensor(source - image).scale(target_scale)
    return GateSemantics(f"C{k}-{g.name}", k + n, images)


def controlled_additive_type(m: AdditiveOperator, k: int) -> AdditiveOperator:
    """I - 2^-k (I - Z)^k (I - m) : type additif de control^k-m.

    Raises:
        InvalidAdditiveError: m n'est pas un type additif valide.
    """
    require_valid_additive(m)
    if k < 0:
        raise AlgebraError(f"Nombre de controles negatif : {k}")
    if k == 0:
        return m
    n = m.n
    whole = AdditiveOperator.identity(k + n)
    correction = _minus_z(k).tensor(AdditiveOperator.identity(n) - m)
    return whole - correction.scale(RingCoeff.dyadic(1, k))


def controlled_z_type(k: int) -> AdditiveOperator:
    """Type additif de C^(k-1)Z sur k qubits : I - 2^-(k-1) (I - Z)^k."""
    if k < 1:
        raise AlgebraError(f"control^(k-1)-Z demande k >= 1, recu {k}")
    return AdditiveOperator.identity(k) - _minus_z(k).scale(RingCoeff.dyadic(1, k - 1))


def additive_type_of_gate(g: GateSemantics) -> AdditiveOperator | None:
    """Type additif U (hermitien et unitaire) d'une porte, ou None si U^2 != I.

    Le test d'hermiticite est symbolique (U^2 fixe chaque generateur) ; la
    reconstruction passe par l'oracle dense puis par l'exactification des
    coefficients. Convention de signe : premier coefficient non nul positif.

    Raises:
        OutsideRingError: Coefficients non representables dans l'anneau.
    """
    from src.inference.engine import apply_gate
    from src.oracle.dense import pauli_decompose, unitary_from_semantics

    at = tuple(range(1, g.arity + 1))
    for (letter, j), image in g.images.items():
        twice = apply_gate(image, g, at)
        source = AdditiveOperator.from_pauli(PauliString.single(g.arity, j, letter))
        if twice != source:
            return None
    unitary = unitary_from_semantics(g, hermitian=True)
    expansion = pauli_decompose(unitary)
    result = expansion.re
    if result.coefficients() and result.coefficients()[0].signum() < 0:
        result = -result
    if not is_valid_additive(result):
        raise InvalidAdditiveError(f"Reconstruction incoherente pour {g.name} : {result}")
    return result


__all__ = [
    "additive_type_of_gate",
    "controlled_additive_type",
    "controlled_arrow_type",
    "controlled_z_type",
    "re_im_decompose",
]
