"""
Tests unitaires de l'algèbre de Pauli et de l'anneau des coefficients.

╔══════════════════════════════════════════════════════════════════════════════╗
║                        STRATÉGIE DE TEST APPLIQUÉE                            ║
╚══════════════════════════════════════════════════════════════════════════════╝

   1. Produits de lettres avec phase exacte (table XY = iZ, etc.)
   2. Commutation par comptage des positions anticommutantes, associativité
      et carrés des chaînes hermitiennes
   3. Forme réduite de RingCoeff : égalité structurelle = égalité de valeur
   4. Élimination symplectique : témoins de dépendance, appartenance signée

Toutes les valeurs attendues sont calculées à la main.
"""

from itertools import product

import pytest

from src.errors import PauliLengthError, QubitIndexError
from src.pauli import (
    HALF,
    INV_SQRT2,
    ONE,
    ZERO,
    PauliString,
    RingCoeff,
    commutes,
    dependency_witness,
    in_group,
    independent,
    mul,
    subgroup_supported_on,
    tensor,
)
from src.pauli.ring import min_sqrt2_exponent


P = PauliString.from_label


# ============================================================================
# PauliString
# ============================================================================

@pytest.mark.parametrize(
    "left,right,expected",
    [
        ("X", "Y", "iZ"),
        ("Y", "X", "-iZ"),
        ("Z", "X", "iY"),
        ("X", "Z", "-iY"),
        ("Y", "Z", "iX"),
        ("Y", "Y", "I"),
        ("XZ", "ZX", "Y" + "Y"),
    ],
)
def test_product_phases(left, right, expected):
    """Le produit lettre à lettre suit la table de multiplication de Pauli."""
    result = mul(P(left), P(right))
    assert result.label == expected, f"{left}*{right} = {result.label}, attendu {expected}"


def test_from_label_phases_and_word():
    """Les préfixes -, i, -i sont lus comme exposants de i."""
    p = P("-iXZ")
    assert p.phase == 3
    assert p.word == "XZ"
    assert P("+ZI").label == "ZI"
    assert P("-YI").sign == -1


def test_from_label_rejects_invalid_letter():
    """Une lettre hors de {I, X, Y, Z} est refusée."""
    with pytest.raises(ValueError):
        P("XQZ")


def test_single_and_support():
    """Une lettre seule sur le qubit 2 (1-based) a pour support (2,)."""
    p = PauliString.single(3, 2, "Y")
    assert p.word == "IYI"
    assert p.support == (2,)
    assert p.letter(2) == "Y"
    with pytest.raises(QubitIndexError):
        PauliString.single(3, 4, "X")


@pytest.mark.parametrize(
    "left,right,expected",
    [("XX", "ZZ", True), ("XI", "ZI", False), ("XYZ", "ZYX", True), ("XIZ", "YIZ", False)],
)
def test_commutation(left, right, expected):
    """Deux chaînes commutent ssi le nombre d'anticommutations est pair."""
    assert commutes(P(left), P(right)) is expected
    assert P(left).commutes_with(P(right)) is expected


def test_length_mismatch_raises():
    """Multiplier des chaînes de longueurs différentes est une erreur."""
    with pytest.raises(PauliLengthError):
        mul(P("XX"), P("X"))


def test_tensor_concatenates_and_multiplies_phases():
    """Le produit tensoriel place le premier facteur sur les premiers qubits."""
    result = tensor(P("-X"), P("iZY"))
    assert result.n == 3
    assert result.label == "-iXZY"


def test_restrict_and_embed_are_inverse():
    """Restreindre puis replonger sur les mêmes qubits redonne le mot."""
    p = P("-XIZ")
    local = p.restrict([1, 3])
    assert local.label == "-XZ"
    assert local.embed([1, 3], 3) == p


# ============================================================================
# Propriétés du groupe de Pauli
# ============================================================================

TWO_QUBIT_WORDS = ["".join(letters) for letters in product("IXYZ", repeat=2)]


def random_pauli(rng, n):
    return PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))


def test_mul_is_associative(rng):
    """p(qr) = (pq)r sur 200 triplets aléatoires de 4 qubits, phases comprises."""
    for _ in range(200):
        p, q, r = (random_pauli(rng, 4) for _ in range(3))
        assert mul(p, mul(q, r)) == mul(mul(p, q), r), f"{p} {q} {r}"


def test_commutes_matches_products_exhaustively():
    """Sur 2 qubits, commutes(p, q) ssi pq = qp, pour les 256 couples."""
    for left, right in product(TWO_QUBIT_WORDS, repeat=2):
        p, q = P(left), P(right)
        assert commutes(p, q) is (mul(p, q) == mul(q, p)), f"{left} {right}"


@pytest.mark.parametrize("sign", ["", "-"])
@pytest.mark.parametrize("word", TWO_QUBIT_WORDS)
def test_hermitian_strings_square_to_identity(word, sign):
    """Une chaîne de signe +-1 vérifie p^2 = I."""
    assert mul(P(sign + word), P(sign + word)).label == "II"


# ============================================================================
# RingCoeff
# ============================================================================

def test_ring_reduced_form():
    """La forme canonique divise a et b par 2 tant que possible."""
    assert RingCoeff(2, 2, 1).to_triple() == (1, 1, 0)
    assert RingCoeff(0, 0, 5) == ZERO
    assert RingCoeff(4, 0, 3) == HALF


def test_ring_products():
    """(1/rt2)^2 = 1/2 et 1/2 + 1/2 = 1, de façon exacte."""
    assert INV_SQRT2 * INV_SQRT2 == HALF
    assert HALF + HALF == ONE
    assert INV_SQRT2.scale_sqrt2() == ONE
    assert ONE.halve(2) == RingCoeff.dyadic(1, 2)


@pytest.mark.parametrize(
    "value,expected",
    [
        (HALF, RingCoeff(2)),
        (INV_SQRT2, RingCoeff.sqrt2()),
        (RingCoeff(1, 1, 0), RingCoeff(-1, 1, 0)),
        (RingCoeff(3), None),
        (ZERO, None),
    ],
)
def test_try_inverse(value, expected):
    """L'inverse existe ssi la norme a^2 - 2b^2 est une puissance de 2 signée."""
    assert value.try_inverse() == expected, f"inverse de {value!r}"


def test_signum_with_opposite_signs():
    """1 - rt2 < 0 et 3 - 2rt2 > 0."""
    assert RingCoeff(1, -1, 0).signum() == -1
    assert RingCoeff(3, -2, 0).signum() == 1
    assert float(INV_SQRT2) == pytest.approx(0.7071067811865476)


@pytest.mark.parametrize("value,expected", [(ONE, 0), (HALF, 2), (INV_SQRT2, 1), (RingCoeff(1, 1, 0), None)])
def test_min_sqrt2_exponent(value, expected):
    """Exposant minimal s tel que 2^(s/2) c soit entier."""
    assert min_sqrt2_exponent(value) == expected


def test_ring_str():
    """Affichage compact des coefficients."""
    assert str(HALF) == "1/2"
    assert str(INV_SQRT2) == "rt2/2"


# ============================================================================
# Élimination symplectique
# ============================================================================

def test_dependency_witness():
    """XI . IZ . XZ = I : les trois indices forment le témoin."""
    paulis = [P("XI"), P("IZ"), P("XZ")]
    assert dependency_witness(paulis) == [0, 1, 2]
    assert not independent(paulis)
    assert independent([P("XX"), P("ZZ")])


@pytest.mark.parametrize("label,expected", [("ZZ", 1), ("-ZZ", -1), ("YY", -1), ("XZ", 0), ("II", 1)])
def test_in_group_signed(label, expected):
    """Appartenance signée au groupe <XX, ZZ> (YY = -XX.ZZ)."""
    assert in_group(P(label), [P("XX"), P("ZZ")]) == expected


def test_subgroup_supported_on():
    """Le sous-groupe de <XXI, ZZI, IIZ> porté par le qubit 3 est <IIZ>."""
    generators = [P("XXI"), P("ZZI"), P("IIZ")]
    assert subgroup_supported_on(generators, [3]) == [P("IIZ")]
    assert len(subgroup_supported_on(generators, [1, 2])) == 2
    assert subgroup_supported_on(generators, [1]) == []
