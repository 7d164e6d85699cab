"""Configuration centralisee du verificateur de types quantiques.

Ce fichier contient les chemins, les limites de l'inference et les tolerances
numeriques de l'oracle. Les chemins sont relatifs a la racine du projet
pour permettre le clonage et l'utilisation sur differentes machines.
"""

from pathlib import Path
from typing import Final

# =============================================================================
# CHEMINS DE BASE
# =============================================================================

# Racine du projet (ou se trouve ce fichier config.py)
ROOT_DIR: Final[Path] = Path(__file__).resolve().parent

# Repertoire des donnees livrees
DATA_DIR: Final[Path] = ROOT_DIR / "data"

# Programmes d'exemple (.qt) et definitions de codes correcteurs (.code)
CORPUS_DIR: Final[Path] = DATA_DIR / "corpus"
CODES_DIR: Final[Path] = DATA_DIR / "codes"
STEANE_CODE_PATH: Final[Path] = CODES_DIR / "steane.code"

# =============================================================================
# INFERENCE SYMBOLIQUE
# =============================================================================

# Nombre maximal de termes (avant regroupement) produits par une porte
SUMMAND_CAP: Final[int] = 65_536

# Conserver les branches de probabilite nulle apres une mesure
KEEP_IMPOSSIBLE_BRANCHES: Final[bool] = False

# =============================================================================
# ORACLE NUMERIQUE
# =============================================================================

# Tolerances (egalite numerique, suppression des coefficients negligeables)
EQ_TOL: Final[float] = 1e-9
DROP_TOL: Final[float] = 1e-12
UNITARY_TOL: Final[float] = 1e-10

# Taille maximale des matrices denses
ORACLE_MAX_QUBITS: Final[int] = 5
ORACLE_CODE_MAX_QUBITS: Final[int] = 7

# Recherche d'un element exact (a + b*rt2)/2^k proche d'un flottant
EXACTIFY_MAX_K: Final[int] = 8

# =============================================================================
# RAPPORTS ET LIGNE DE COMMANDE
# =============================================================================

JSON_SCHEMA_VERSION: Final[str] = "1.0"

# Codes de sortie de la CLI
EXIT_OK: Final[int] = 0
EXIT_CHECK_FAILED: Final[int] = 1
EXIT_USAGE: Final[int] = 2
EXIT_UNSUPPORTED: Final[int] = 3
