"""
Tests unitaires de la grammaire des types.

╔══════════════════════════════════════════════════════════════════════════════╗
║                        STRATÉGIE DE TEST APPLIQUÉE                            ║
╚══════════════════════════════════════════════════════════════════════════════╝

   A. Opérateurs additifs : produits réel/imaginaire, validité (m^2 = I)
      confrontée à l'oracle dense
   B. Forme normale : indépendance vis-à-vis de l'ordre des termes,
      idempotence, témoins de non-commutation et de dépendance
   C. Réduction, diagnostics de types inhabités ou invalides, intersection
      et simplification des unions
   D. Séparabilité : état GHZ avant et après mesure, accord avec le rang
      de Schmidt
   E. Syntaxe : impression, analyse, positions des erreurs

Les exemples sont petits (2 à 3 qubits) et vérifiés à la main.
"""

from itertools import permutations

import numpy as np
import pytest

from src.algebra import (
    AdditiveOperator,
    Branch,
    QType,
    format_qtype,
    intersect,
    is_valid_additive,
    lint_branch,
    normalize,
    parse_type,
    reduce_branch,
    separable_single,
    separable_subset,
    types_equal,
    union_simplify,
    validate_qtype,
)
from src.algebra.normal_form import check_terms, normalize_paulis
from src.algebra.syntax import format_operator, parse_arrow, parse_operator
from src.errors import (
    AlgebraError,
    DependentTermsError,
    DslSyntaxError,
    InvalidAdditiveError,
    NonCommutingTermsError,
    OutsideRingError,
    UnsupportedAnalysis,
)
from src.oracle.dense import matrix_of, schmidt_rank, stabilized_state
from src.oracle.fuzz import random_stabilizer_branch
from src.pauli import HALF, INV_SQRT2, ONE, PauliString

P = PauliString.from_label
A = AdditiveOperator.from_label


# ============================================================================
# A. Opérateurs additifs
# ============================================================================

def test_from_pauli_folds_sign_into_coefficient():
    """-XZ devient le terme XZ de coefficient -1."""
    m = A("-XZ")
    assert m.coefficient("XZ") == -ONE
    assert m.as_pauli() == P("-XZ")


def test_multiply_separates_imaginary_part():
    """X * Y = iZ : partie réelle nulle, partie imaginaire Z."""
    expansion = A("X").multiply(A("Y"))
    assert expansion.re.is_zero()
    assert expansion.im == A("Z")
    with pytest.raises(AlgebraError):
        A("X") @ A("Z")


def test_sum_terms_are_sorted_canonically():
    """Les mots sont rangés I < X < Y < Z, qubit 1 en tête."""
    m = parse_operator("1/2(YZ + XI - YI + XZ)")
    assert [p.word for p, _ in m] == ["XI", "XZ", "YI", "YZ"]
    assert m.coefficient("YI") == -HALF


VALIDITY_CASES = [
    ("(1/rt2)(X + Y)", True),
    ("1/2(IIZ + ZIZ + IZZ - ZZZ)", True),
    ("X + Z", False),
    ("1/2(XX + ZZ)", False),
]


@pytest.mark.parametrize("text,expected", VALIDITY_CASES)
def test_is_valid_additive(text, expected):
    """Un type additif est hermitien de carré I."""
    assert is_valid_additive(parse_operator(text)) is expected, f"{text}"


def random_operator(rng, n):
    """Somme de 1 à 4 mots aléatoires à coefficients dans {+-1, +-1/2, +-1/rt2}."""
    coefficients = [ONE, -ONE, HALF, -HALF, INV_SQRT2, -INV_SQRT2]
    terms = [
        (
            PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n))),
            coefficients[int(rng.integers(len(coefficients)))],
        )
        for _ in range(int(rng.integers(1, 5)))
    ]
    return AdditiveOperator.from_terms(n, terms)


def test_is_valid_additive_agrees_with_oracle(rng):
    """m^2 = I exactement ssi la matrice dense vérifie M^2 = I."""
    candidates = [parse_operator(text) for text, _ in VALIDITY_CASES]
    candidates += [random_operator(rng, int(rng.integers(1, 3))) for _ in range(200)]
    for m in candidates:
        matrix = matrix_of(m)
        expected = np.allclose(matrix @ matrix, np.eye(matrix.shape[0]))
        assert is_valid_additive(m) is bool(expected), str(m)


def test_additive_commutation():
    """(X+Y)/rt2 commute avec lui-même mais pas avec Z."""
    m = parse_operator("(1/rt2)(X + Y)")
    assert m.commutes_with(m)
    assert not m.commutes_with(A("Z"))


# ============================================================================
# B. Forme normale
# ============================================================================

@pytest.mark.parametrize("order", list(permutations(["XXI", "ZZI", "ZZZ"])))
def test_normal_form_is_order_independent(order):
    """Toutes les permutations de {XXI, ZZI, ZZZ} ont la même forme normale."""
    result = normalize_paulis([P(label) for label in order])
    assert [p.label for p in result] == ["XXI", "ZZI", "IIZ"], f"ordre {order}"


def test_normal_form_keeps_signs():
    """Le signe d'un générateur pivot est conservé."""
    result = normalize_paulis([P("-XXI"), P("ZZI"), P("ZZZ")])
    assert [p.label for p in result] == ["-XXI", "ZZI", "IIZ"]


@pytest.mark.parametrize("seed", range(20))
def test_normalize_is_idempotent_and_order_free(seed):
    """normalize(normalize(b)) = normalize(b), quel que soit l'ordre des termes."""
    branch = random_stabilizer_branch(1 + seed % 5, seed)
    normal = normalize(branch)
    assert normalize(normal) == normal
    shuffled = list(branch.paulis())
    np.random.default_rng(seed).shuffle(shuffled)
    assert normalize(Branch.from_paulis(shuffled)) == normal


def test_check_terms_witnesses():
    """Les erreurs portent un témoin exploitable."""
    with pytest.raises(NonCommutingTermsError) as noncommuting:
        check_terms([P("XI"), P("IZ"), P("ZI")])
    assert noncommuting.value.witness == (0, 2)

    with pytest.raises(DependentTermsError) as dependent:
        check_terms([P("ZI"), P("IZ"), P("ZZ")])
    assert dependent.value.witness == [0, 1, 2]


def test_normalize_rejects_additive_branch():
    """Aucune forme normale n'est définie pour une branche additive."""
    branch = Branch(1, (parse_operator("(1/rt2)(X + Y)"),))
    with pytest.raises(UnsupportedAnalysis):
        normalize(branch)


def test_types_equal_up_to_generator_choice():
    """Deux présentations du même groupe sont égales ; un signe change tout."""
    left = QType.from_labels("XXI", "ZZI", "IIZ")
    assert types_equal(left, QType.from_labels("ZZZ", "XXI", "ZZI"))
    assert not types_equal(left, QType.from_labels("XXI", "ZZI", "-IIZ"))


def test_types_equal_ignores_branch_order():
    """L'union est comparée comme un ensemble de branches."""
    up = Branch.from_labels(["ZI", "IZ"])
    down = Branch.from_labels(["-ZI", "-IZ"])
    assert types_equal(QType.of(up, down), QType.of(down, up))


# ============================================================================
# C. Réduction, intersection, unions
# ============================================================================

def test_reduce_branch_drops_redundant_terms():
    """ZZ est engendré par ZI et IZ ; -ZZ rend la branche vide."""
    reduced = reduce_branch(Branch.from_labels(["ZI", "IZ", "ZZ"]))
    assert reduced is not None
    assert [p.label for p in reduced.paulis()] == ["ZI", "IZ"]
    assert reduce_branch(Branch.from_labels(["ZI", "IZ", "-ZZ"])) is None
    assert reduce_branch(Branch.from_labels(["XI", "ZI"])) is None


def test_lint_branch_reports_uninhabited_types():
    """Les diagnostics signalent paires non commutantes et carrés invalides."""
    diagnostics = lint_branch(Branch.from_labels(["XI", "ZI"]))
    assert len(diagnostics) == 1
    assert "ne commutent pas" in diagnostics[0]

    invalid = Branch(2, (A("XI") + A("ZI"),))
    assert any("carre different de I" in d for d in lint_branch(invalid))
    assert lint_branch(Branch.from_labels(["XX", "ZZ"])) == []


def test_parse_type_rejects_invalid_additive():
    """X + Y et 1/2(XX + ZZ) ne sont pas des types : erreur avec le carré en témoin."""
    with pytest.raises(InvalidAdditiveError) as error:
        parse_type("X + Y")
    assert "type additif" in str(error.value)
    assert error.value.witness is not None
    with pytest.raises(InvalidAdditiveError):
        parse_type("ZZ & 1/2(XX + ZZ)")


def test_validate_qtype_reports_uninhabited_branches(mocker):
    """X & Z est lu mais signalé ; les types habités passent sans diagnostic."""
    reporter = mocker.Mock()
    diagnostics = validate_qtype(parse_type("X & Z"), reporter)
    assert len(diagnostics) == 1
    reporter.assert_called_once()
    assert reporter.call_args.args[0].startswith("[AVERTISSEMENT] Type inhabite")

    union = validate_qtype(parse_type("ZI & IZ | XI & ZI"))
    assert len(union) == 1 and union[0].startswith("branche 2")
    assert "contradictoires" in validate_qtype(parse_type("ZI & IZ & -ZZ"))[0]
    assert validate_qtype(parse_type("XX & ZZ")) == []


def test_validate_qtype_rejects_invalid_terms():
    """Un terme de carré différent de I construit à la main est une erreur."""
    with pytest.raises(InvalidAdditiveError):
        validate_qtype(QType.single(Branch(2, (A("XI") + A("ZI"),))))


def test_intersect_merges_branches():
    """(ZI) & (IZ) = ZI & IZ ; ZI & -ZI est inhabité."""
    result = intersect(QType.from_labels("ZI"), QType.from_labels("IZ"))
    assert types_equal(result, QType.from_labels("ZI", "IZ"))
    with pytest.raises(AlgebraError):
        intersect(QType.from_labels("ZI"), QType.from_labels("-ZI"))


def test_union_simplify_absorbs_subtypes():
    """ZI & IZ est un sous-type de ZI : l'union se réduit à ZI."""
    both = Branch.from_labels(["ZI", "IZ"])
    result = union_simplify(QType.of(both, Branch.from_labels(["IZ", "ZI"])))
    assert len(result.branches) == 1

    absorbed = union_simplify(QType.of(both, Branch.from_labels(["ZI"])))
    assert format_qtype(absorbed) == "ZI"


# ============================================================================
# D. Séparabilité
# ============================================================================

def test_ghz_is_not_separable():
    """L'état GHZ n'a aucun qubit séparable."""
    ghz = Branch.from_labels(["XXX", "ZZI", "IZZ"])
    result = separable_subset(ghz, [1])
    assert not result
    assert "seulement 0" in result.reason
    assert not separable_single(ghz, 1)


def test_measured_ghz_factorizes():
    """Après mesure du qubit 1, chaque qubit est séparable."""
    measured = Branch.from_labels(["ZII", "IZI", "IIZ"])
    result = separable_subset(measured, [1])
    assert result.separable
    assert format_qtype(QType.single(result.branch)) == "Z@{1} & (ZI & IZ)@{2,3}"
    assert all(separable_single(measured, k) for k in (1, 2, 3))


def test_partial_separability():
    """Bell sur (1, 2) puis |0> sur 3 : séparable selon {3} et {1, 2}."""
    branch = Branch.from_labels(["XXI", "ZZI", "IIZ"])
    assert separable_subset(branch, [3]).separable
    assert separable_subset(branch, [1, 2]).separable
    assert not separable_subset(branch, [2]).separable
    whole = separable_subset(Branch.from_labels(["XX", "ZZ"]), [1, 2])
    assert whole.separable and whole.branch == Branch.from_labels(["XX", "ZZ"])


SEPARABILITY_BRANCHES = [
    Branch.zero_state(3),
    Branch.from_labels(["XXI", "ZZI", "IIZ"]),
    Branch.from_labels(["XXX", "ZZI", "IZZ"]),
    *(random_stabilizer_branch(3, seed) for seed in range(10)),
]


@pytest.mark.parametrize("qubits", [[1], [2], [3], [1, 2], [1, 3], [2, 3]])
@pytest.mark.parametrize("branch", SEPARABILITY_BRANCHES, ids=str)
def test_separability_matches_schmidt_rank(branch, qubits):
    """Séparable selon K ssi le rang de Schmidt de l'état stabilisé vaut 1."""
    rank = schmidt_rank(stabilized_state(branch), qubits)
    assert separable_subset(branch, qubits).separable is (rank == 1), f"rang {rank}"


def test_separability_of_additive_branch_is_unsupported():
    """La séparabilité d'une branche additive n'est pas décidée."""
    branch = Branch(2, (parse_operator("(1/rt2)(XI + YI)"), A("IZ")))
    with pytest.raises(UnsupportedAnalysis):
        separable_subset(branch, [1])


# ============================================================================
# E. Syntaxe
# ============================================================================

@pytest.mark.parametrize(
    "text",
    [
        "XXI & ZZI & IIZ",
        "ZI & IZ | -ZI & -IZ",
        "rt2/2(XI + YI) & IX",
        "(XX & ZZ)@{1,2} & Z@{3}",
    ],
)
def test_format_is_stable(text):
    """Les formes imprimées sont relues à l'identique."""
    assert format_qtype(parse_type(text)) == text


def test_parse_coefficient_forms():
    """(1/rt2)(...) et rt2/2(...) désignent le même coefficient."""
    first = parse_operator("(1/rt2)(X + Y)")
    second = parse_operator("rt2/2(X + Y)")
    assert first == second
    assert first.coefficient("X") == INV_SQRT2
    assert format_operator(parse_operator("1/2(IIZ + ZIZ + IZZ - ZZZ)")) == (
        "1/2(IIZ + IZZ + ZIZ - ZZZ)"
    )


def test_parse_union_and_arrow():
    """| sépare les branches ; -> sépare source et cible."""
    t = parse_type("ZI & IZ | -ZI & -IZ")
    assert len(t.branches) == 2
    source, target = parse_arrow("ZI -> ZZ")
    assert format_qtype(source) == "ZI"
    assert format_qtype(target) == "ZZ"


def test_parse_error_positions():
    """Les erreurs de syntaxe donnent ligne et colonne."""
    with pytest.raises(DslSyntaxError) as error:
        parse_type("XX & Q")
    assert error.value.column == 6
    assert error.value.line == 1

    with pytest.raises(DslSyntaxError):
        parse_type("XX & Z")


def test_parse_outside_ring():
    """1/3 n'appartient pas à l'anneau des coefficients."""
    with pytest.raises(OutsideRingError):
        parse_type("1/3(X + Z)")
