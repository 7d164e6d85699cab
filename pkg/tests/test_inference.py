"""
Tests unitaires du moteur d'inférence.

╔══════════════════════════════════════════════════════════════════════════════╗
║                        STRATÉGIE DE TEST APPLIQUÉE                            ║
╚══════════════════════════════════════════════════════════════════════════════╝

   1. Circuits de Clifford (GHZ, Deutsch) : chemin tableau et chemin
      général doivent donner le même type
   2. Circuits Clifford+T : coefficients exacts (T, Toffoli, contrôle-S)
   3. Portes contrôlées : forme close de C^kZ et borne sur le nombre de T
   4. Options : mesure différée, trace, plafond de termes
   5. Propriétés : composition séquentielle, commutation préservée par
      conjugaison
"""

import pytest

from src.algebra import (
    AdditiveOperator,
    Branch,
    QType,
    format_qtype,
    normalize,
    parse_type,
    separable_subset,
    types_equal,
)
from src.algebra.additive import PauliExpansion
from src.algebra.syntax import parse_operator
from src.errors import (
    AlgebraError,
    InvalidAdditiveError,
    PauliLengthError,
    SummandCapExceeded,
    UnknownGateError,
)
from src.frontend.parser import load_source
from src.inference import (
    InferenceOptions,
    Measure,
    Program,
    additive_type_of_gate,
    apply_gate,
    builtin_semantics,
    check,
    controlled_additive_type,
    controlled_arrow_type,
    controlled_z_type,
    defer_measurements,
    derive_Y_action,
    evolve_operator,
    infer,
    re_im_decompose,
    resolve_semantics,
    run_inference,
    semantics_of_program,
    tcount_lower_bound,
)
from src.inference.gates import builtin_expansion
from src.oracle.fuzz import random_clifford_t_program

A = AdditiveOperator.from_label


def zero_state(n):
    return QType.single(Branch.zero_state(n))


def silent(_):
    return None


# ============================================================================
# Circuits de Clifford
# ============================================================================

@pytest.mark.parametrize("fast", [True, False])
def test_ghz_preparation(fast):
    """H 1; CNOT 1 2; CNOT 2 3 sur |000> donne XXX & ZZI & IZZ."""
    program = Program.of(3, "H 1; CNOT 1 2; CNOT 2 3")
    result = run_inference(program, zero_state(3), InferenceOptions(fast_clifford=fast), silent)
    expected = QType.from_labels("XXX", "ZZI", "IZZ")
    assert types_equal(result.output, expected), f"obtenu {result.output}"
    assert result.stats.gates == 3
    assert result.stats.clifford_batches == (1 if fast else 0)


def test_deutsch_from_corpus(corpus_file):
    """Le type annoncé de l'algorithme de Deutsch est vérifié."""
    source = load_source(corpus_file("deutsch"))
    verdict = check(source.program, source.init, source.expect)
    assert verdict.passed, f"diff : {verdict.diff}"


def test_ghz_lifecycle():
    """GHZ, puis CNOT 3 1 isole le qubit 1, puis CNOT 3 2 isole le qubit 2."""
    ghz = infer(Program.of(3, "H 1; CNOT 1 2; CNOT 2 3"), zero_state(3))
    after_first = infer(Program.of(3, "CNOT 3 1"), ghz)
    branch = normalize(after_first.branches[0])
    split = separable_subset(branch, [1])
    assert split.separable
    assert format_qtype(QType.single(split.branch)) == "Z@{1} & (XX & ZZ)@{2,3}"

    after_second = infer(Program.of(3, "CNOT 3 2"), after_first)
    assert types_equal(after_second, QType.from_labels("ZII", "IZI", "IIX"))


def test_check_reports_diff():
    """Un type annoncé faux donne un diff avec + et -."""
    program = Program.of(2, "H 1; CNOT 1 2")
    verdict = check(program, zero_state(2), QType.from_labels("XX", "-ZZ"))
    assert not verdict
    assert any(line.startswith("+") for line in verdict.diff)
    assert any(line.startswith("-") for line in verdict.diff)


def test_size_mismatch_raises():
    """Type et programme doivent porter sur le même nombre de qubits."""
    with pytest.raises(PauliLengthError):
        infer(Program.of(2, "H 1"), zero_state(3))


def test_unknown_gate():
    """Un nom de porte inconnu est signalé."""
    with pytest.raises(UnknownGateError):
        infer(Program.of(1, "FOO 1"), zero_state(1))


# ============================================================================
# Clifford + T
# ============================================================================

def test_t_gate_on_x():
    """T : X -> (1/rt2)(X + Y), et deux T font un S : X -> Y."""
    once = infer(Program.of(1, "T 1"), QType.from_labels("X"))
    assert once.branches[0].terms[0] == parse_operator("(1/rt2)(X + Y)")

    twice = infer(Program.of(1, "T 1; T 1"), QType.from_labels("X"))
    assert twice.branches[0].terms[0] == A("Y")


@pytest.mark.timeout(30)
def test_toffoli_decomposition(corpus_file):
    """La décomposition Clifford+T de Toffoli envoie Z_3 sur sa forme additive."""
    source = load_source(corpus_file("toffoli"))
    result = run_inference(source.program, source.init, report=silent)
    assert types_equal(result.output, source.expect), f"obtenu {result.output}"
    # au plus 16 termes produits avant regroupement, 4 a la fin
    assert result.stats.max_summands_before_combine <= 16
    assert result.stats.max_summands <= result.stats.max_summands_before_combine

    images = semantics_of_program(source.program).images
    assert images[("Z", 1)] == A("ZII")
    assert images[("Z", 2)] == A("IZI")
    assert images[("X", 3)] == A("IIX")
    z3 = images[("Z", 3)]
    assert z3 == parse_operator("1/2(IIZ + ZIZ + IZZ - ZZZ)")
    assert len(z3.terms) == 4


def test_control_s_arrow():
    """Contrôle-S : X_1 -> 1/2(XI + YI + XZ - YZ), Z_1 et Z_2 invariants."""
    semantics = resolve_semantics("C1-S")
    assert semantics.arity == 2
    assert semantics.images[("X", 1)] == parse_operator("1/2(XI + YI + XZ - YZ)")
    assert semantics.images[("Z", 1)] == A("ZI")
    assert semantics.images[("Z", 2)] == A("IZ")


def test_summand_cap():
    """Un plafond de 1 terme est dépassé par T sur X, à la porte 1."""
    options = InferenceOptions(summand_cap=1)
    with pytest.raises(SummandCapExceeded) as error:
        run_inference(Program.of(1, "T 1"), QType.from_labels("X"), options, silent)
    assert error.value.gate_index == 1


# ============================================================================
# Portes contrôlées et borne T
# ============================================================================

def test_controlled_z_closed_form():
    """C^(k-1)Z = I - 2^-(k-1) (I - Z)^k ; k = 1 donne Z."""
    assert controlled_z_type(1) == A("Z")
    assert controlled_z_type(2) == parse_operator("1/2(II + IZ + ZI - ZZ)")
    for k in range(2, 5):
        assert controlled_z_type(k) == controlled_additive_type(A("Z"), k - 1), f"k = {k}"


def test_apply_gate_respects_qubit_order():
    """CNOT posé sur (1, 2) ou (2, 1) : contrôle et cible échangés."""
    cnot = builtin_semantics("CNOT")
    assert apply_gate(A("XI"), cnot, (1, 2)) == A("XX")
    assert apply_gate(A("XI"), cnot, (2, 1)) == A("XI")
    assert apply_gate(A("IX"), cnot, (2, 1)) == A("XX")
    with pytest.raises(AlgebraError):
        apply_gate(A("XI"), cnot, (1,))


@pytest.mark.parametrize("name,expected", [("H", "-Y"), ("S", "-X"), ("X", "-Y"), ("T", "(1/rt2)(Y - X)")])
def test_derive_y_action(name, expected):
    """Y = iXZ : l'image de Y se déduit de celles de X et Z."""
    assert derive_Y_action(builtin_semantics(name), 1) == parse_operator(expected)


def test_re_im_decompose():
    """S = 1/2(I + Z) + i 1/2(I - Z) ; X + Z n'est pas unitaire."""
    re_part, im_part = re_im_decompose(builtin_expansion("S"))
    assert re_part == parse_operator("1/2(I + Z)")
    assert im_part == parse_operator("1/2(I - Z)")
    with pytest.raises(InvalidAdditiveError):
        re_im_decompose(PauliExpansion.real(A("X") + A("Z")))


def test_controlled_arrow_type_matches_named_gate():
    """Contrôle de S construit à la main = porte C1-S."""
    re_part, im_part = re_im_decompose(builtin_expansion("S"))
    built = controlled_arrow_type(builtin_semantics("S"), re_part, im_part, 1)
    named = resolve_semantics("C1-S")
    for generator in named.generators():
        assert built.images[generator] == named.images[generator], f"{generator}"


def test_additive_type_of_cz():
    """CZ est hermitienne : son type additif est celui de contrôle-Z."""
    assert additive_type_of_gate(builtin_semantics("CZ")) == controlled_z_type(2)
    assert additive_type_of_gate(builtin_semantics("T")) is None


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_tcount_of_multi_controlled_z(k):
    """C^kZ demande au moins 2k - 2 portes T."""
    assert tcount_lower_bound(resolve_semantics(f"C{k}-Z")) == 2 * k - 2


@pytest.mark.parametrize("name,expected", [("CCZ", 2), ("T", 1), ("H", 0), ("CNOT", 0)])
def test_tcount_of_named_gates(name, expected):
    """Bornes des portes usuelles (alias CCZ = C2-Z)."""
    assert tcount_lower_bound(resolve_semantics(name)) == expected


# ============================================================================
# Programmes et options
# ============================================================================

def test_semantics_of_program():
    """H 1; CNOT 1 2 : X1 -> ZI, Z1 -> XX, X2 -> IX, Z2 -> ZZ."""
    semantics = semantics_of_program(Program.of(2, "H 1; CNOT 1 2"))
    assert semantics.images[("X", 1)] == A("ZI")
    assert semantics.images[("Z", 1)] == A("XX")
    assert semantics.images[("X", 2)] == A("IX")
    assert semantics.images[("Z", 2)] == A("ZZ")


def test_evolve_operator():
    """Évolution d'un seul opérateur ; les mesures sont refusées."""
    assert evolve_operator(A("IZ"), Program.of(2, "CNOT 1 2")) == A("ZZ")
    with pytest.raises(AlgebraError):
        evolve_operator(A("ZI"), Program.of(2, "H 1; MEAS 1"))


def test_defer_measurements():
    """Une mesure est repoussée jusqu'à la prochaine porte sur son qubit."""
    deferred = defer_measurements(Program.of(2, "MEAS 1; H 2; CNOT 1 2"))
    assert [str(s) for s in deferred] == ["H 2", "MEAS 1", "CNOT 1 2"]
    tail = defer_measurements(Program.of(1, "MEAS 1; H 1; MEAS 1"))
    assert isinstance(tail.statements[-1], Measure)


def test_trace_records_each_instruction():
    """La trace contient l'entrée puis un type par instruction."""
    program = Program.of(2, "H 1; CNOT 1 2")
    result = run_inference(program, zero_state(2), InferenceOptions(trace=True), silent)
    assert [step.instruction for step in result.trace] == ["INIT", "H 1", "CNOT 1 2"]
    assert types_equal(result.trace[-1].qtype, parse_type("XX & ZZ"))


def test_reporter_receives_progress(mocker):
    """Le moteur annonce le début et la fin de l'inférence."""
    reporter = mocker.Mock()
    run_inference(Program.of(1, "H 1"), zero_state(1), report=reporter)
    messages = [call.args[0] for call in reporter.call_args_list]
    assert messages[0].startswith("[INFO]")
    assert messages[-1].startswith("[OK]")


# ============================================================================
# Propriétés
# ============================================================================

@pytest.mark.parametrize("seed", range(20))
def test_inference_composes(seed):
    """infer(p1; p2) = infer(p2, infer(p1)), coupure au milieu du programme."""
    n = 1 + seed % 3
    program = random_clifford_t_program(n, 24, seed % 3, seed)
    middle = len(program.statements) // 2
    first = Program(n, program.statements[:middle])
    second = Program(n, program.statements[middle:])
    whole = infer(first.then(second), zero_state(n))
    assert types_equal(whole, infer(second, infer(first, zero_state(n)))), f"graine {seed}"


@pytest.mark.parametrize("seed", range(20))
def test_conjugation_preserves_commutation(seed):
    """Les images de X_j et Z_k anticommutent exactement quand j = k, avec ou sans T."""
    n = 1 + seed % 3
    semantics = semantics_of_program(random_clifford_t_program(n, 20, seed % 3, seed))
    for (a, j), left in semantics.images.items():
        for (b, k), right in semantics.images.items():
            anticommuting = a != b and j == k
            assert left.commutes_with(right) is not anticommuting, f"{a}{j}, {b}{k}"
