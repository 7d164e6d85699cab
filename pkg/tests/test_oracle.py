"""
Tests de l'oracle numérique.

╔══════════════════════════════════════════════════════════════════════════════╗
║                        STRATÉGIE DE TEST APPLIQUÉE                            ║
╚══════════════════════════════════════════════════════════════════════════════╝

   A. Matrices denses : portes, chaînes de Pauli, limite de taille
   B. Décomposition de Pauli exacte et table numérique
   C. Flèches et habitation : jugements symboliques confirmés par numpy
   D. États : rang de Schmidt, règle de Born, état stabilisé
   E. Fuzzing reproductible (graines fixes)

L'oracle est la vérité terrain : chaque jugement symbolique testé ici est
recalculé sur des matrices 2^n x 2^n.
"""

import numpy as np
import pytest

from src.algebra import AdditiveOperator, Branch, parse_type
from src.algebra.syntax import parse_operator
from src.errors import AlgebraError, OracleLimitError, ZeroProbabilityError
from src.inference import Program, resolve_semantics, semantics_of_program
from src.oracle.dense import (
    basis_state,
    born_measure,
    gate_matrix,
    is_unitary,
    joint_eigenspace_dimension,
    matrix_of,
    pauli_coefficients,
    pauli_decompose,
    program_matrix,
    schmidt_rank,
    stabilized_state,
    state_of,
    unitary_from_semantics,
    verify_arrow,
    verify_inhabitation,
)
from src.oracle.fuzz import random_clifford_program
from src.oracle.verify import fuzz_summary, verification_table
from src.pauli import PauliString

A = AdditiveOperator.from_label
P = PauliString.from_label

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)


def silent(_):
    return None


# ============================================================================
# A. Matrices denses
# ============================================================================

def test_pauli_string_matrix():
    """XZ est le produit de Kronecker X (x) Z, qubit 1 en tête."""
    assert np.allclose(matrix_of(P("XZ")), np.kron(X, Z))
    assert np.allclose(matrix_of(P("-XZ")), -np.kron(X, Z))


def test_cnot_matrix_controls_first():
    """CNOT 1 2 envoie |10> sur |11>."""
    u = program_matrix(Program.of(2, "CNOT 1 2"))
    assert np.allclose(u @ basis_state("10"), basis_state("11"))
    reversed_cnot = program_matrix(Program.of(2, "CNOT 2 1"))
    assert np.allclose(reversed_cnot @ basis_state("01"), basis_state("11"))


def test_oracle_size_limit():
    """Au-delà de la limite configurée, l'oracle refuse de matérialiser."""
    with pytest.raises(OracleLimitError):
        program_matrix(Program.of(6, "H 1"))


def test_measurement_has_no_matrix():
    """Un programme avec mesure n'a pas de matrice unitaire."""
    with pytest.raises(AlgebraError):
        program_matrix(Program.of(1, "H 1; MEAS 1"))


# ============================================================================
# B. Décomposition de Pauli
# ============================================================================

def test_decompose_hadamard():
    """H = (X + Z)/rt2, sans partie imaginaire."""
    expansion = pauli_decompose(gate_matrix("H"))
    assert expansion.re == parse_operator("(1/rt2)(X + Z)")
    assert expansion.im.is_zero()


def test_decompose_phase_gate():
    """S = (1+i)/2 I + (1-i)/2 Z."""
    expansion = pauli_decompose(gate_matrix("S"))
    assert expansion.re == parse_operator("1/2(I + Z)")
    assert expansion.im == parse_operator("1/2(I - Z)")


def test_pauli_coefficients_table():
    """CZ a quatre coefficients de module 1/2."""
    table = pauli_coefficients(gate_matrix("CZ"))
    assert list(table.columns) == ["mot", "re", "im", "module"]
    assert sorted(table["mot"]) == ["II", "IZ", "ZI", "ZZ"]
    assert np.allclose(table["module"], 0.5)


# ============================================================================
# C. Flèches et habitation
# ============================================================================

@pytest.mark.parametrize(
    "source,target,expected",
    [
        ("ZI", "XX", True),
        ("XI", "ZI", True),
        ("IX", "IX", True),
        ("IZ", "ZZ", True),
        ("XI", "ZZ", False),
        ("ZI", "-XX", False),
    ],
)
def test_verify_arrow_bell_circuit(source, target, expected):
    """H 1; CNOT 1 2 : Z1 -> XX, X1 -> ZI, X2 -> IX, Z2 -> ZZ."""
    program = Program.of(2, "H 1; CNOT 1 2")
    assert verify_arrow(program, A(source), A(target)) is expected


def test_verify_arrow_additive():
    """T : X -> (1/rt2)(X + Y) confirmé numériquement."""
    assert verify_arrow(Program.of(1, "T 1"), A("X"), parse_operator("(1/rt2)(X + Y)"))
    assert not verify_arrow(Program.of(1, "T 1"), A("X"), parse_operator("(1/rt2)(X - Y)"))


def test_verification_table_all_ok():
    """Chaque image inférée coïncide avec U P U^dag."""
    table = verification_table(Program.of(2, "H 1; T 2; CNOT 1 2; S 1"))
    assert list(table.columns) == ["generateur", "image", "ecart_max", "ok"]
    assert len(table) == 4
    assert table["ok"].all(), table.to_string()


def test_ghz_state_inhabits_its_type():
    """L'état préparé habite XXX & ZZI & IZZ, pas -XXX & ZZI & IZZ."""
    state = state_of(Program.of(3, "H 1; CNOT 1 2; CNOT 2 3"))
    assert verify_inhabitation(state, parse_type("XXX & ZZI & IZZ"))
    assert not verify_inhabitation(state, parse_type("-XXX & ZZI & IZZ"))


def test_inhabitation_checks_dimension():
    """Un état de mauvaise dimension est refusé."""
    with pytest.raises(AlgebraError):
        verify_inhabitation(basis_state("00"), parse_type("ZII"))


# ============================================================================
# D. États
# ============================================================================

def test_schmidt_rank():
    """Bell : rang 2 ; |00> : rang 1 ; GHZ : rang 2 selon {1} et {1, 2}."""
    bell = stabilized_state(Branch.from_labels(["XX", "ZZ"]))
    assert schmidt_rank(bell, [1]) == 2
    assert schmidt_rank(stabilized_state(Branch.from_labels(["ZI", "IZ"])), [1]) == 1
    ghz = state_of(Program.of(3, "H 1; CNOT 1 2; CNOT 2 3"))
    assert schmidt_rank(ghz, [1]) == 2
    assert schmidt_rank(ghz, [1, 2]) == 2


def test_stabilized_state_requires_complete_branch():
    """ZI seul décrit un espace de dimension 2."""
    assert joint_eigenspace_dimension([A("ZI")], 2) == 2
    with pytest.raises(AlgebraError):
        stabilized_state(Branch.from_labels(["ZI"]))


def test_steane_code_space_is_two_dimensional(steane):
    """Les six générateurs de Steane fixent un qubit logique."""
    terms = [AdditiveOperator.from_pauli(g) for g in steane.generators]
    assert joint_eigenspace_dimension(terms, 7) == 2


def test_born_rule_on_magic_state_injection():
    """Mesure du qubit 1 après CNOT 2 1 : p = 1/2, état T transféré au qubit 2."""
    state = state_of(Program.of(2, "H 1; T 1; H 2; CNOT 2 1"))
    result = born_measure(state, 1)
    assert result.p_plus == pytest.approx(0.5)
    assert result.p_minus == pytest.approx(0.5)
    assert verify_inhabitation(result.post(1), parse_type("ZI & (1/rt2)(IX + IY)"))
    assert verify_inhabitation(result.post(-1), parse_type("-ZI & (1/rt2)(IX - IY)"))


def test_born_rule_impossible_outcome():
    """|0> ne donne jamais -1."""
    result = born_measure(basis_state("0"), 1)
    assert result.p_plus == pytest.approx(1.0)
    with pytest.raises(ZeroProbabilityError):
        result.post(-1)


@pytest.mark.parametrize("name", ["H", "S", "CNOT", "T", "C1-S", "CCZ"])
def test_unitary_from_semantics(name):
    """L'unitaire reconstruit réalise chaque flèche de la sémantique."""
    semantics = resolve_semantics(name)
    u = unitary_from_semantics(semantics)
    assert is_unitary(u)
    n = semantics.arity
    for letter, j in semantics.generators():
        source = A(PauliString.single(n, j, letter).label)
        image = semantics.images[(letter, j)]
        assert np.allclose(u @ matrix_of(source) @ u.conj().T, matrix_of(image)), f"{letter}{j}"


def test_unitary_from_program_semantics_is_hermitian_phase():
    """H reconstruit avec une phase hermitienne égale la matrice de H."""
    u = unitary_from_semantics(semantics_of_program(Program.of(1, "H 1")), hermitian=True)
    assert np.allclose(u, u.conj().T)
    assert np.allclose(u @ u, np.eye(2))


# ============================================================================
# E. Fuzzing
# ============================================================================

def test_random_programs_are_reproducible():
    """Même graine, même programme."""
    first = random_clifford_program(3, 20, seed=11)
    second = random_clifford_program(3, 20, seed=11)
    assert [str(g) for g in first.gates()] == [str(g) for g in second.gates()]


@pytest.mark.timeout(60)
def test_fuzz_clifford_programs(mocker):
    """Programmes de Clifford aléatoires : tous confirmés par l'oracle."""
    reporter = mocker.Mock()
    summary = fuzz_summary(7, programs=12, max_qubits=3, max_gates=25, report=reporter)
    assert len(summary) == 12
    assert summary["ok"].all(), summary.to_string()
    assert reporter.call_args.args[0].startswith("[OK]")


@pytest.mark.timeout(60)
def test_fuzz_clifford_t_programs():
    """Programmes avec deux portes T : tous confirmés par l'oracle."""
    summary = fuzz_summary(3, programs=8, max_qubits=3, max_gates=15, t_gates=2, report=silent)
    assert summary["ok"].all(), summary.to_string()
