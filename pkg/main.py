"""Point d'entree principal du verificateur de types.

Exemples :
    python main.py check data/corpus/deutsch.qt
    python main.py separable "XXI & ZZI & IIZ" --qubits 1,2
    python main.py --json tbound data/corpus/ccz.qt
"""

import sys

from src.frontend.cli import cli_run


def main() -> None:
    """Lance la sous-commande demandee et sort avec son code."""
    code, _ = cli_run(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
