"""Anneau exact des coefficients (a + b*rt2) / 2^k.

Tous les coefficients produits par l'evolution Clifford+T vivent dans cet
anneau ; la forme canonique (jamais a et b pairs simultanement si k > 0)
rend l'egalite structurelle equivalente a l'egalite des valeurs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final

SQRT2: Final[float] = math.sqrt(2.0)


@dataclass(frozen=True, slots=True, eq=True)
class RingCoeff:
    """Element (a + b*rt2) / 2^k, toujours reduit.

    Attributes:
        a: Partie entiere du numerateur.
        b: Coefficient de rt2 au numerateur.
        k: Exposant du denominateur (>= 0).
    """

    a: int = 0
    b: int = 0
    k: int = 0

    def __post_init__(self) -> None:
        a, b, k = self.a, self.b, self.k
        if k < 0:
            # 2^-k au numerateur
            a, b, k = a << -k, b << -k, 0
        if a == 0 and b == 0:
            k = 0
        while k > 0 and a % 2 == 0 and b % 2 == 0:
            a, b, k = a // 2, b // 2, k - 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "k", k)

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, value: int | RingCoeff) -> RingCoeff:
        if isinstance(value, RingCoeff):
            return value
        return cls(int(value), 0, 0)

    @classmethod
    def sqrt2(cls) -> RingCoeff:
        return cls(0, 1, 0)

    @classmethod
    def inv_sqrt2(cls) -> RingCoeff:
        return cls(0, 1, 1)

    @classmethod
    def half(cls) -> RingCoeff:
        return cls(1, 0, 1)

    @classmethod
    def dyadic(cls, numerator: int, exponent: int) -> RingCoeff:
        """Construit numerator / 2^exponent."""
        return cls(numerator, 0, exponent)

    @classmethod
    def approximate(
        cls, value: float, *, tol: float = 1e-9, max_k: int = 8
    ) -> RingCoeff | None:
        """Cherche l'element de l'anneau le plus simple a ``tol`` pres de ``value``.

        Args:
            value: Valeur flottante a exactifier.
            tol: Ecart maximal accepte.
            max_k: Exposant de denominateur maximal explore.

        Returns:
            RingCoeff | None: Element trouve, ou None si aucun ne convient.
        """
        if abs(value) <= tol:
            return cls()
        for k in range(max_k + 1):
            scale = 1 << k
            target = value * scale
            bound = scale + 2
            for magnitude in range(bound + 1):
                for b in ((magnitude, -magnitude) if magnitude else (0,)):
                    a = round(target - b * SQRT2)
                    if abs(a + b * SQRT2 - target) <= tol * scale:
                        return cls(a, b, k)
        return None

    # ------------------------------------------------------------------
    # Arithmetique
    # ------------------------------------------------------------------

    def _aligned(self, other: RingCoeff) -> tuple[int, int, int, int, int]:
        k = max(self.k, other.k)
        s, o = k - self.k, k - other.k
        return self.a << s, self.b << s, other.a << o, other.b << o, k

    def __add__(self, other: int | RingCoeff) -> RingCoeff:
        other = RingCoeff.of(other)
        a1, b1, a2, b2, k = self._aligned(other)
        return RingCoeff(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __sub__(self, other: int | RingCoeff) -> RingCoeff:
        return self + (-RingCoeff.of(other))

    def __rsub__(self, other: int | RingCoeff) -> RingCoeff:
        return RingCoeff.of(other) - self

    def __neg__(self) -> RingCoeff:
        return RingCoeff(-self.a, -self.b, self.k)

    def __mul__(self, other: int | RingCoeff) -> RingCoeff:
        other = RingCoeff.of(other)
        a = self.a * other.a + 2 * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return RingCoeff(a, b, self.k + other.k)

    __rmul__ = __mul__

    def scale_inv_sqrt2(self) -> RingCoeff:
        """Multiplie par 1/rt2 = rt2/2 (reste dans l'anneau)."""
        return RingCoeff(2 * self.b, self.a, self.k + 1)

    def scale_sqrt2(self) -> RingCoeff:
        return RingCoeff(2 * self.b, self.a, self.k)

    def halve(self, times: int = 1) -> RingCoeff:
        return RingCoeff(self.a, self.b, self.k + times)

    def conjugate(self) -> RingCoeff:
        """Conjugaison rt2 -> -rt2."""
        return RingCoeff(self.a, -self.b, self.k)

    def try_inverse(self) -> RingCoeff | None:
        """Inverse dans l'anneau, si la norme a^2 - 2b^2 est +-2^m.

        Returns:
            RingCoeff | None: Inverse exact, ou None s'il sort de l'anneau.
        """
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            return None
        magnitude = abs(norm)
        if magnitude & (magnitude - 1):
            return None
        exponent = magnitude.bit_length() - 1
        sign = 1 if norm > 0 else -1
        # 1/(a + b rt2) = (a - b rt2) / norm, multiplie par 2^k
        return RingCoeff(sign * self.a << self.k, -sign * self.b << self.k, exponent)

    # ------------------------------------------------------------------
    # Predicats et conversions
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0 and self.k == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.k == 0

    def signum(self) -> int:
        """Signe exact de a + b*rt2 (-1, 0 ou 1)."""
        if self.is_zero():
            return 0
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb or sa
        if sb == 0:
            return sa
        # signes opposes : comparer a^2 et 2 b^2
        if self.a * self.a > 2 * self.b * self.b:
            return sa
        return sb

    def __abs__(self) -> RingCoeff:
        return -self if self.signum() < 0 else self

    def __float__(self) -> float:
        return (self.a + self.b * SQRT2) / (1 << self.k)

    def to_triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.k)

    def __str__(self) -> str:
        if self.b == 0:
            numerator = str(self.a)
        elif self.a == 0:
            if self.b == 1:
                numerator = "rt2"
            elif self.b == -1:
                numerator = "-rt2"
            else:
                numerator = f"{self.b}rt2"
        else:
            if self.b == 1:
                tail = "+rt2"
            elif self.b == -1:
                tail = "-rt2"
            else:
                tail = f"{self.b:+d}rt2"
            numerator = f"({self.a}{tail})"
        if self.k == 0:
            return numerator
        return f"{numerator}/{1 << self.k}"

    def __repr__(self) -> str:
        return f"RingCoeff({self.a}, {self.b}, {self.k})"


ZERO: Final[RingCoeff] = RingCoeff()
ONE: Final[RingCoeff] = RingCoeff(1)
HALF: Final[RingCoeff] = RingCoeff(1, 0, 1)
INV_SQRT2: Final[RingCoeff] = RingCoeff(0, 1, 1)


def add(x: RingCoeff, y: RingCoeff) -> RingCoeff:
    return x + y


def mul(x: RingCoeff, y: RingCoeff) -> RingCoeff:
    return x * y


def neg(x: RingCoeff) -> RingCoeff:
    return -x


def invsqrt2_scale(x: RingCoeff) -> RingCoeff:
    return x.scale_inv_sqrt2()


def min_sqrt2_exponent(c: RingCoeff) -> int | None:
    """Plus petit s >= 0 tel que 2^(s/2) * c soit entier.

    Returns:
        int | None: Exposant minimal, ou None si c n'a pas la forme m / 2^(s/2).
    """
    if c.is_zero():
        return 0
    if c.b == 0:
        # a / 2^k avec a impair si k > 0
        return 2 * c.k
    if c.a == 0:
        # b*rt2 / 2^k = b / 2^(k - 1/2)
        return max(2 * c.k - 1, 1)
    return None


__all__ = [
    "RingCoeff",
    "ZERO",
    "ONE",
    "HALF",
    "INV_SQRT2",
    "SQRT2",
    "add",
    "mul",
    "neg",
    "invsqrt2_scale",
    "min_sqrt2_exponent",
]
