"""
Tests unitaires du langage de programmes (.qt) et des rapports.

╔══════════════════════════════════════════════════════════════════════════════╗
║                        STRATÉGIE DE TEST APPLIQUÉE                            ║
╚══════════════════════════════════════════════════════════════════════════════╝

   A. Analyse : déclarations, commentaires, portes composites (y compris
      appelées avant leur définition)
   B. Erreurs : ligne et colonne exactes, arité, qubits hors limites,
      définitions cycliques
   C. Impression : le texte canonique est relu à l'identique
   D. Rapports pydantic : conversion exacte des types et validation
"""

import pytest
from pydantic import ValidationError

from src.algebra import format_qtype, parse_type, types_equal
from src.errors import DslSyntaxError, InvalidAdditiveError, QubitIndexError, UnknownGateError
from src.frontend.parser import format_source, load_source, parse_program
from src.frontend.report import Report, qtype_from_model, qtype_to_model
from src.inference import GateApp, Measure, infer

BELL_FORWARD = """\
QUBITS 2
INIT ZI & IZ
BELL 1 2      # appel avant la definition
GATE BELL a b { H a; CNOT a b }
EXPECT XX & ZZ
"""


# ============================================================================
# A. Analyse
# ============================================================================

def test_parse_declarations_and_statements():
    """QUBITS, INIT, EXPECT et instructions séparées par ';'."""
    source = parse_program("QUBITS 2\nINIT ZI & IZ\nH 1; CNOT 1 2\nMEAS 2\nEXPECT XX & ZZ")
    assert source.n == 2
    assert format_qtype(source.init) == "ZI & IZ"
    assert format_qtype(source.expect) == "XX & ZZ"
    assert [str(s) for s in source.program] == ["H 1", "CNOT 1 2", "MEAS 2"]
    assert isinstance(source.program.statements[-1], Measure)


def test_comments_are_ignored():
    """# jusqu'à la fin de ligne, (* ... *) sur plusieurs lignes."""
    text = "(* en-tete\n sur deux lignes *)\nQUBITS 1  # un qubit\nH 1 # hadamard\n"
    source = parse_program(text)
    assert [str(s) for s in source.program] == ["H 1"]


def test_composite_gate_called_before_definition():
    """Une porte composite peut être utilisée avant sa définition."""
    source = parse_program(BELL_FORWARD)
    assert "BELL" in source.program.definitions
    expanded = source.program.expand()
    assert expanded.statements == (GateApp("H", (1,), 4), GateApp("CNOT", (1, 2), 4))
    assert types_equal(infer(source.program, source.init), source.expect)


def test_gate_names_are_case_insensitive_for_definitions():
    """Les définitions sont rangées par nom en majuscules."""
    source = parse_program("QUBITS 1\nGATE flip q { X q }\nflip 1")
    assert "FLIP" in source.program.definitions
    assert [str(g) for g in source.program.expand().gates()] == ["X 1"]


def test_load_source_uses_file_stem(corpus_file):
    """Le nom du programme est le nom du fichier."""
    source = load_source(corpus_file("ghz"))
    assert source.name == "ghz"
    assert len(source.program) == 3


# ============================================================================
# B. Erreurs
# ============================================================================

def test_arity_error_position():
    """CNOT avec un seul qubit : ligne 2, colonne de l'instruction."""
    with pytest.raises(DslSyntaxError) as error:
        parse_program("QUBITS 2\nH 1; CNOT 1\n")
    assert error.value.line == 2
    assert error.value.column == 6


@pytest.mark.parametrize(
    "text,line",
    [
        ("H 1\n", 1),
        ("QUBITS 2\nQUBITS 3\n", 2),
        ("QUBITS x\n", 1),
        ("QUBITS 2\nINIT\n", 2),
        ("QUBITS 2\nINIT XX & Q\n", 2),
        ("QUBITS 1\nMEAS\n", 2),
        ("QUBITS 1\nGATE F q { X q\n", 2),
        ("QUBITS 1\n(* jamais ferme\nH 1\n", 2),
    ],
    ids=[
        "qubits_manquant",
        "qubits_double",
        "qubits_non_entier",
        "init_vide",
        "init_invalide",
        "meas_sans_qubit",
        "gate_non_fermee",
        "commentaire_ouvert",
    ],
)
def test_syntax_errors_report_line(text, line):
    """Chaque erreur de syntaxe porte la ligne fautive."""
    with pytest.raises(DslSyntaxError) as error:
        parse_program(text)
    assert error.value.line == line, str(error.value)


def test_qubit_out_of_range():
    """Un indice hors de 1..n est refusé."""
    with pytest.raises(QubitIndexError):
        parse_program("QUBITS 2\nH 3\n")


def test_unknown_gate_mentions_position():
    """La position de l'appel figure dans le message."""
    with pytest.raises(UnknownGateError) as error:
        parse_program("QUBITS 1\nFOO 1\n")
    assert "ligne 2" in str(error.value)


def test_invalid_additive_declaration():
    """INIT X + Z : le carré vaut 2I, erreur à la ligne de la déclaration."""
    with pytest.raises(InvalidAdditiveError) as error:
        parse_program("QUBITS 1\nINIT X + Z\nH 1\n")
    assert "ligne 2" in str(error.value)


def test_cyclic_definitions_are_rejected():
    """A appelle B qui appelle A."""
    text = "QUBITS 1\nGATE A q { B q }\nGATE B q { A q }\nA 1\n"
    with pytest.raises(DslSyntaxError):
        parse_program(text)


def test_unknown_parameter_in_body():
    """Un paramètre absent de l'en-tête est refusé."""
    with pytest.raises(DslSyntaxError):
        parse_program("QUBITS 2\nGATE F a { CNOT a b }\n")


# ============================================================================
# C. Impression
# ============================================================================

@pytest.mark.parametrize("name", ["bell_measure", "deutsch", "steane_encoder", "injection"])
def test_format_source_is_stable(corpus_file, name):
    """format_source puis parse_program redonne le même texte canonique."""
    source = load_source(corpus_file(name))
    text = format_source(source)
    assert format_source(parse_program(text)) == text


def test_format_program_layout(corpus_file):
    """QUBITS en tête, définitions avant les instructions, EXPECT à la fin."""
    lines = format_source(load_source(corpus_file("bell_measure"))).splitlines()
    assert lines[0] == "QUBITS 2"
    assert lines[1] == "INIT ZI & IZ"
    assert lines[2] == "GATE BELL a b {"
    assert lines[-1] == "EXPECT ZI & IZ | -ZI & -IZ"


# ============================================================================
# D. Rapports
# ============================================================================

@pytest.mark.parametrize(
    "text",
    ["XXX & ZZI & IZZ", "ZI & (1/rt2)(IX + IY) | -ZI & (1/rt2)(IX - IY)", "(XX & ZZ)@{1,2} & Z@{3}"],
)
def test_qtype_model_is_exact(text):
    """Les coefficients sont transportés sous forme exacte (a, b, k)."""
    t = parse_type(text)
    model = qtype_to_model(t)
    assert model.text == format_qtype(t)
    assert format_qtype(qtype_from_model(model)) == format_qtype(t)


def test_report_json_round_trip():
    """Le rapport JSON se relit avec le même contenu."""
    report = Report(command="tbound", tbound=2, diagnostics=["[AVERTISSEMENT] test"])
    restored = Report.model_validate_json(report.to_json())
    assert restored == report


def test_report_rejects_unknown_verdict():
    """Seuls les verdicts connus sont acceptés."""
    with pytest.raises(ValidationError):
        Report(command="check", verdict="peut-etre")
