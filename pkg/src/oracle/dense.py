"""Oracle numerique : matrices denses, decomposition de Pauli, etats.

Verite terrain independante des regles symboliques, limitee a quelques
qubits (cf. config.ORACLE_MAX_QUBITS). Convention : le qubit 1 est le
facteur le plus a gauche du produit de Kronecker.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Final, Iterable, Sequence

import numpy as np
import pandas as pd

import config
from src.algebra.additive import Accumulator, AdditiveOperator, PauliExpansion
from src.algebra.qtype import Branch, QType
from src.errors import AlgebraError, OracleLimitError, OutsideRingError, ZeroProbabilityError
from src.inference.gates import GateSemantics, builtin_expansion, resolve_semantics
from src.inference.program import Measure, Program
from src.pauli.pauli_string import LETTERS, PauliString, check_qubit
from src.pauli.ring import RingCoeff

_PAULI: Final[dict[str, np.ndarray]] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_PHASE: Final[dict[int, complex]] = {0: 1, 1: 1j, 2: -1, 3: -1j}
_CONTROLLED_NAME: Final[re.Pattern[str]] = re.compile(r"^C(\d+)-(.+)$")


def _check_size(n: int, max_qubits: int) -> None:
    if n > max_qubits:
        raise OracleLimitError(f"{n} qubits : au-dela de la limite de l'oracle ({max_qubits})")


# ----------------------------------------------------------------------
# Matrices
# ----------------------------------------------------------------------


def pauli_matrix(p: PauliString) -> np.ndarray:
    result = np.array([[_PHASE[p.phase]]], dtype=complex)
    for letter in p.word:
        result = np.kron(result, _PAULI[letter])
    return result


def operator_matrix(m: AdditiveOperator) -> np.ndarray:
    dim = 1 << m.n
    result = np.zeros((dim, dim), dtype=complex)
    for p, c in m:
        result += float(c) * pauli_matrix(p)
    return result


def expansion_matrix(u: PauliExpansion) -> np.ndarray:
    return operator_matrix(u.re) + 1j * operator_matrix(u.im)


@lru_cache(maxsize=None)
def gate_matrix(name: str) -> np.ndarray:
    """Matrice d'une porte (predefinie ou ``C<k>-NOM``), controles en tete."""
    canonical = resolve_semantics(name).name
    match = _CONTROLLED_NAME.match(canonical)
    if match is None:
        return expansion_matrix(builtin_expansion(canonical))
    k = int(match.group(1))
    base = gate_matrix(match.group(2))
    dim = (1 << k) * base.shape[0]
    result = np.eye(dim, dtype=complex)
    result[dim - base.shape[0] :, dim - base.shape[0] :] = base
    return result


def embed_matrix(u: np.ndarray, at: Sequence[int], n: int) -> np.ndarray:
    """Matrice sur n qubits de l'operateur local ``u`` pose sur ``at``."""
    k = len(at)
    rest = [q for q in range(1, n + 1) if q not in at]
    full = np.kron(u, np.eye(1 << (n - k), dtype=complex))
    order = list(at) + rest
    perm = [order.index(q) for q in range(1, n + 1)]
    tensor = full.reshape([2] * (2 * n)).transpose(perm + [n + p for p in perm])
    return tensor.reshape(1 << n, 1 << n)


def program_matrix(program: Program, *, max_qubits: int = config.ORACLE_MAX_QUBITS) -> np.ndarray:
    """Produit G_m ... G_1 des portes du programme (ordre d'execution).

    Raises:
        OracleLimitError: Trop de qubits.
        AlgebraError: Le programme contient une mesure.
    """
    _check_size(program.n, max_qubits)
    result = np.eye(1 << program.n, dtype=complex)
    for statement in program.expand().statements:
        if isinstance(statement, Measure):
            raise AlgebraError("Un programme avec mesures n'a pas de matrice unitaire")
        result = embed_matrix(gate_matrix(statement.name), statement.qubits, program.n) @ result
    return result


def matrix_of(
    obj: Program | PauliString | AdditiveOperator | PauliExpansion,
    *,
    max_qubits: int = config.ORACLE_MAX_QUBITS,
) -> np.ndarray:
    """Materialisation dense d'un programme, d'une chaine ou d'une somme de Pauli."""
    if isinstance(obj, Program):
        return program_matrix(obj, max_qubits=max_qubits)
    _check_size(obj.n, max_qubits)
    if isinstance(obj, PauliString):
        return pauli_matrix(obj)
    if isinstance(obj, PauliExpansion):
        return expansion_matrix(obj)
    return operator_matrix(obj)


# ----------------------------------------------------------------------
# Decomposition dans la base de Pauli
# ----------------------------------------------------------------------


def _words(n: int) -> Iterable[PauliString]:
    for letters in itertools.product(LETTERS, repeat=n):
        yield PauliString.from_label("".join(letters))


def _numeric_coefficients(m: np.ndarray, drop: float) -> list[tuple[PauliString, complex]]:
    dim = m.shape[0]
    n = dim.bit_length() - 1
    result = []
    for p in _words(n):
        # tr(P m) / 2^n
        value = np.einsum("ij,ji->", pauli_matrix(p), m) / dim
        if abs(value) >= drop:
            result.append((p, complex(value)))
    return result


def _exact(value: float, p: PauliString, tol: float) -> RingCoeff:
    exact = RingCoeff.approximate(value, tol=tol, max_k=config.EXACTIFY_MAX_K)
    if exact is None:
        raise OutsideRingError(f"Coefficient {value:.12g} de {p.word} hors de l'anneau")
    return exact


def pauli_decompose(
    m: np.ndarray, *, tol: float = config.EQ_TOL, drop: float = config.DROP_TOL
) -> PauliExpansion:
    """Developpement exact m = re + i*im dans la base de Pauli.

    Raises:
        OutsideRingError: Un coefficient n'est proche d'aucun element de l'anneau.
    """
    dim = m.shape[0]
    n = dim.bit_length() - 1
    _check_size(n, config.ORACLE_CODE_MAX_QUBITS)
    re_part, im_part = Accumulator(n), Accumulator(n)
    for p, value in _numeric_coefficients(m, drop):
        if abs(value.real) >= drop:
            re_part.add_pauli(p, _exact(value.real, p, tol))
        if abs(value.imag) >= drop:
            im_part.add_pauli(p, _exact(value.imag, p, tol))
    return PauliExpansion(re_part.result(), im_part.result())


def pauli_coefficients(m: np.ndarray, *, drop: float = config.DROP_TOL) -> pd.DataFrame:
    """Table numerique des coefficients tr(P m)/2^n non negligeables."""
    rows = [
        {"mot": p.word, "re": value.real, "im": value.imag, "module": abs(value)}
        for p, value in _numeric_coefficients(m, drop)
    ]
    return pd.DataFrame(rows, columns=["mot", "re", "im", "module"])


# ----------------------------------------------------------------------
# Verifications
# ----------------------------------------------------------------------


def arrow_deviation(u: np.ndarray, a: AdditiveOperator, b: AdditiveOperator) -> float:
    """max |U A U^dag - B| (norme max des coefficients)."""
    image = u @ operator_matrix(a) @ u.conj().T
    return float(np.max(np.abs(image - operator_matrix(b))))


def verify_arrow(
    program: Program, a: AdditiveOperator, b: AdditiveOperator, tol: float = config.EQ_TOL
) -> bool:
    """Vrai si U A U^dag = B a ``tol`` pres, U etant la matrice du programme."""
    _check_size(program.n, config.ORACLE_MAX_QUBITS)
    return arrow_deviation(program_matrix(program), a, b) <= tol


def _projector_residual(state: np.ndarray, m: AdditiveOperator) -> float:
    projected = 0.5 * (state + operator_matrix(m) @ state)
    return float(np.linalg.norm(projected - state))


def inhabits(state: np.ndarray, b: Branch, tol: float = config.EQ_TOL) -> bool:
    return all(_projector_residual(state, t) <= tol for t in b.all_terms())


def verify_inhabitation(
    state: np.ndarray, t: QType, tol: float = config.EQ_TOL, *,
    max_qubits: int = config.ORACLE_MAX_QUBITS,
) -> bool:
    """Vrai si l'etat habite au moins une branche : (I + M)/2 |s> = |s> pour chaque terme."""
    _check_size(t.n, max_qubits)
    if state.shape != (1 << t.n,):
        raise AlgebraError(f"Etat de dimension {state.shape} pour un type sur {t.n} qubits")
    return any(inhabits(state, b, tol) for b in t.branches)


# ----------------------------------------------------------------------
# Etats
# ----------------------------------------------------------------------


def basis_state(bits: str) -> np.ndarray:
    """Etat de base |bits>, ex. ``basis_state("010")``."""
    state = np.zeros(1 << len(bits), dtype=complex)
    state[int(bits, 2)] = 1.0
    return state


def state_of(program: Program, initial: np.ndarray | None = None) -> np.ndarray:
    """U |initial>, |0...0> par defaut."""
    start = basis_state("0" * program.n) if initial is None else initial
    return program_matrix(program) @ start


def schmidt_rank(state: np.ndarray, qubits: Iterable[int], *, tol: float = config.EQ_TOL) -> int:
    """Nombre de valeurs singulieres non nulles pour la bipartition (K, reste)."""
    n = state.shape[0].bit_length() - 1
    _check_size(n, config.ORACLE_CODE_MAX_QUBITS)
    inside = sorted(set(qubits))
    for q in inside:
        check_qubit(q, n)
    outside = [q for q in range(1, n + 1) if q not in inside]
    tensor = state.reshape([2] * n).transpose([q - 1 for q in inside + outside])
    matrix = tensor.reshape(1 << len(inside), 1 << len(outside))
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular > tol))


@dataclass(frozen=True)
class BornResult:
    """Probabilites et etats post-mesure ; None pour une issue impossible."""

    p_plus: float
    p_minus: float
    post_plus: np.ndarray | None
    post_minus: np.ndarray | None

    def post(self, sign: int) -> np.ndarray:
        state = self.post_plus if sign > 0 else self.post_minus
        if state is None:
            raise ZeroProbabilityError(f"Issue {'+' if sign > 0 else '-'}1 de probabilite nulle")
        return state


def born_measure(state: np.ndarray, qubit: int, *, tol: float = config.EQ_TOL) -> BornResult:
    """Mesure Z du qubit ``qubit`` : regle de Born et etats renormalises."""
    n = state.shape[0].bit_length() - 1
    _check_size(n, config.ORACLE_CODE_MAX_QUBITS)
    projector = 0.5 * (
        np.eye(1 << n, dtype=complex) + pauli_matrix(PauliString.single(n, qubit, "Z"))
    )
    plus = projector @ state
    minus = state - plus
    p_plus = float(np.vdot(plus, plus).real)
    p_minus = float(np.vdot(minus, minus).real)
    return BornResult(
        p_plus,
        p_minus,
        plus / np.sqrt(p_plus) if p_plus > tol else None,
        minus / np.sqrt(p_minus) if p_minus > tol else None,
    )


def _joint_projector(terms: Sequence[AdditiveOperator], n: int) -> np.ndarray:
    projector = np.eye(1 << n, dtype=complex)
    for term in terms:
        projector = projector @ (0.5 * (np.eye(1 << n) + operator_matrix(term)))
    return projector


def joint_eigenspace_dimension(
    terms: Sequence[AdditiveOperator], n: int, *, max_qubits: int = config.ORACLE_CODE_MAX_QUBITS
) -> int:
    """Dimension de l'espace propre +1 commun (termes commutants)."""
    _check_size(n, max_qubits)
    return int(round(np.trace(_joint_projector(terms, n)).real))


def stabilized_state(
    b: Branch, *, max_qubits: int = config.ORACLE_CODE_MAX_QUBITS, tol: float = config.EQ_TOL
) -> np.ndarray:
    """Etat (unique a une phase pres) habitant une branche complete.

    Raises:
        AlgebraError: L'espace propre commun n'est pas de dimension 1.
    """
    _check_size(b.n, max_qubits)
    projector = _joint_projector(b.all_terms(), b.n)
    values, vectors = np.linalg.eigh(0.5 * (projector + projector.conj().T))
    selected = np.flatnonzero(np.abs(values - 1.0) <= tol)
    if len(selected) != 1:
        raise AlgebraError(f"{b} decrit un espace de dimension {len(selected)}, pas un etat")
    return vectors[:, selected[0]]


# ----------------------------------------------------------------------
# Reconstruction d'un unitaire depuis sa semantique
# ----------------------------------------------------------------------


def unitary_from_semantics(
    g: GateSemantics, *, hermitian: bool = False, tol: float = config.EQ_TOL
) -> np.ndarray:
    """Unitaire U (a une phase pres) tel que U P U^dag = image(P) pour chaque generateur.

    U est le vecteur du noyau du systeme lineaire U P - B U = 0. Avec
    ``hermitian``, la phase est choisie pour que U soit hermitien.

    Raises:
        AlgebraError: Semantique incoherente (noyau de dimension differente de 1).
    """
    _check_size(g.arity, config.ORACLE_MAX_QUBITS)
    dim = 1 << g.arity
    identity = np.eye(dim, dtype=complex)
    blocks = []
    for letter, j in g.generators():
        source = pauli_matrix(PauliString.single(g.arity, j, letter))
        image = operator_matrix(g.images[(letter, j)])
        # vec ligne : vec(U P) = (I (x) P^T) vec(U), vec(B U) = (B (x) I) vec(U)
        blocks.append(np.kron(identity, source.T) - np.kron(image, identity))
    system = np.vstack(blocks)
    _, singular, vh = np.linalg.svd(system, full_matrices=False)
    kernel = int(np.sum(singular <= tol * max(1.0, singular[0])))
    if kernel != 1 or singular[-1] > tol:
        raise AlgebraError(f"{g.name} : semantique incoherente (noyau de dimension {kernel})")
    u = vh[-1].conj().reshape(dim, dim)
    u *= np.sqrt(dim) / np.linalg.norm(u)
    if hermitian:
        phase = (u @ u)[0, 0]
        u *= np.exp(-0.5j * np.angle(phase))
    else:
        pivot = u.flat[int(np.argmax(np.abs(u)))]
        u *= np.conj(pivot) / abs(pivot)
    return u


def is_unitary(u: np.ndarray, tol: float = config.UNITARY_TOL) -> bool:
    return bool(np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=tol))


__all__ = [
    "BornResult",
    "arrow_deviation",
    "basis_state",
    "born_measure",
    "embed_matrix",
    "gate_matrix",
    "inhabits",
    "is_unitary",
    "joint_eigenspace_dimension",
    "matrix_of",
    "pauli_coefficients",
    "pauli_decompose",
    "pauli_matrix",
    "program_matrix",
    "schmidt_rank",
    "stabilized_state",
    "state_of",
    "unitary_from_semantics",
]
