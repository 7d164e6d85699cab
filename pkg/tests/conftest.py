"""
Configuration pytest et fixtures partagées.

Ce fichier définit les fixtures réutilisées par tous les modules de tests :
chemins du projet, code de Steane, fichiers du corpus et générateur
aléatoire reproductible.

FIXTURES DÉFINIES:

   1. project_root / data_dir / corpus_dir (scope="session"):
      Chemins absolus vers la racine, data/ et data/corpus/.

   2. steane (scope="session"):
      Code de Steane [[7,1,3]] chargé depuis data/codes/steane.code.

   3. corpus_file (scope="session"):
      Fonction qui renvoie le chemin d'un exemple du corpus par son nom.

   4. rng (scope="function"):
      numpy.random.Generator initialisé avec une graine fixe.

CONFIGURATION PYTHONPATH:

   sys.path.insert(0, str(root_dir))

   Permet d'importer ``config`` et ``src.*`` depuis les tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Ajout du répertoire racine au PYTHONPATH pour permettre les imports
root_dir = Path(__file__).parent.parent
sys.path.insert(0, str(root_dir))


@pytest.fixture(scope="session")
def project_root():
    """Retourne le chemin racine du projet."""
    return Path(__file__).parent.parent


@pytest.fixture(scope="session")
def data_dir(project_root):
    """Retourne le chemin vers le répertoire data/."""
    return project_root / "data"


@pytest.fixture(scope="session")
def corpus_dir(data_dir):
    """Répertoire des exemples .qt."""
    return data_dir / "corpus"


@pytest.fixture(scope="session")
def corpus_file(corpus_dir):
    """
    Retourne une fonction ``nom -> chemin`` vers un exemple du corpus.

    Échoue immédiatement si l'exemple n'existe pas, pour éviter les faux
    positifs sur une faute de frappe.
    """

    def _path(name: str) -> Path:
        path = corpus_dir / f"{name}.qt"
        assert path.exists(), f"Exemple absent du corpus : {path}"
        return path

    return _path


@pytest.fixture(scope="session")
def steane():
    """Code de Steane chargé depuis le fichier de code livré."""
    from src.qecc.codes import steane_code

    return steane_code()


@pytest.fixture
def rng():
    """Générateur numpy reproductible (graine 2024)."""
    return np.random.default_rng(2024)


# ============================================================================
# Hooks pytest
# ============================================================================

def pytest_configure(config):
    """Enregistre les markers personnalisés."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "unit: marks tests as unit tests"
    )


def pytest_collection_modifyitems(config, items):
    """
    Ajoute automatiquement les markers selon le module de test.

    Les tests de la ligne de commande et du corpus sont des tests
    d'intégration ; tous les autres sont unitaires.
    """
    for item in items:
        if "test_cli" in item.nodeid or "test_corpus" in item.nodeid:
            item.add_marker(pytest.mark.integration)
        else:
            item.add_marker(pytest.mark.unit)

        if "performance" in item.nodeid:
            item.add_marker(pytest.mark.slow)
