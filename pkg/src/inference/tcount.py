"""Borne inferieure sur le nombre de portes T.

Apres t portes T, tout coefficient des images des generateurs s'ecrit
c / 2^(s/2) avec s <= t : le plus grand exposant minimal s observe borne
donc le nombre de T de toute realisation Clifford+T sans ancilla.
"""

from __future__ import annotations

from src.errors import OutsideRingError
from src.inference.gates import GateSemantics
from src.pauli.ring import min_sqrt2_exponent


def tcount_lower_bound(g: GateSemantics) -> int:
    """Maximum, sur les images des generateurs, de l'exposant minimal de rt2.

    Raises:
        OutsideRingError: Un coefficient n'a pas la forme c / 2^(s/2).
    """
    bound = 0
    for generator, image in g.images.items():
        for _, c in image:
            s = min_sqrt2_exponent(c)
            if s is None:
                raise OutsideRingError(
                    f"{g.name} : coefficient {c} de l'image de {generator} "
                    "hors de la forme c/2^(s/2)"
                )
            bound = max(bound, s)
    return bound


__all__ = ["tcount_lower_bound"]
