"""
Exact quantum dimensions a + b*sqrt(2k).

Values live in Q(sqrt(2k)) with both parts kept as Fractions. When 2k is a
perfect square the radical part is folded into the rational part, so equality
of canonical forms is plain structural equality.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Mapping, Tuple, Union

from labels import Label, NonDiag, Diag, check_rank, enumerate_simples, validate_label

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def _square_root(radicand: int):
    """Integer square root of the radicand, or None when it is not a square."""
    root = math.isqrt(radicand)
    return root if root * root == radicand else None


@total_ordering
class QDim:
    """Exact element a + b*sqrt(radicand), radicand = 2k."""

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a: Rational = 0, b: Rational = 0, radicand: int = 2):
        if radicand < 1:
            raise ValueError(f"Radicand must be positive, got {radicand}")
        a, b = Fraction(a), Fraction(b)
        root = _square_root(radicand)
        if root is not None and b:
            a, b = a + b * root, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("QDim is immutable")

    @classmethod
    def zero(cls, k: int) -> "QDim":
        return cls(0, 0, 2 * k)

    @classmethod
    def one(cls, k: int) -> "QDim":
        return cls(1, 0, 2 * k)

    @classmethod
    def sqrt_radicand(cls, k: int) -> "QDim":
        """sqrt(2k), folded when 2k is a square."""
        return cls(0, 1, 2 * k)

    def _coerce(self, other) -> "QDim":
        if isinstance(other, QDim):
            if other.radicand != self.radicand:
                raise ValueError(f"Cannot combine sqrt({self.radicand}) and sqrt({other.radicand}) values")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QDim(other, 0, self.radicand)
        return NotImplemented

    def __add__(self, other) -> "QDim":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QDim(self.a + other.a, self.b + other.b, self.radicand)

    __radd__ = __add__

    def __sub__(self, other) -> "QDim":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QDim(self.a - other.a, self.b - other.b, self.radicand)

    def __mul__(self, other) -> "QDim":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # (a + b r)(c + d r) = (ac + R bd) + (ad + bc) r, r = sqrt(R)
        a = self.a * other.a + self.radicand * self.b * other.b
        b = self.a * other.b + self.b * other.a
        return QDim(a, b, self.radicand)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, QDim) and other.radicand != self.radicand:
            # Across radicands only rational values can be equal
            return not self.b and not other.b and self.a == other.a
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.a, self.b) == (other.a, other.b)

    def __hash__(self) -> int:
        # Rational values hash like the int or Fraction they equal
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.radicand))

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(R)."""
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == 0 and b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # Opposite signs: compare a^2 with b^2 R
        if a > 0:
            return 1 if a * a > b * b * self.radicand else (0 if a * a == b * b * self.radicand else -1)
        return 1 if b * b * self.radicand > a * a else (0 if a * a == b * b * self.radicand else -1)

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def is_nonnegative(self) -> bool:
        return self.a >= 0 and self.b >= 0

    def approx(self) -> float:
        """Float rendering for human-readable output only."""
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def as_triple(self) -> Tuple[str, str, int]:
        """(a, b, radicand) with a and b as exact rational strings."""
        return (str(self.a), str(self.b), self.radicand)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        radical = f"sqrt({self.radicand})" if self.b == 1 else f"{self.b}*sqrt({self.radicand})"
        return radical if not self.a else f"{self.a} + {radical}"

    def __repr__(self) -> str:
        return f"QDim({self.a}, {self.b}, radicand={self.radicand})"


def qdim(k: int, x: Label) -> QDim:
    """Quantum dimension of a simple: NonDiag 2, Diag 1, Twist sqrt(2k)."""
    validate_label(k, x)
    if isinstance(x, NonDiag):
        return QDim(2, 0, 2 * k)
    if isinstance(x, Diag):
        return QDim.one(k)
    return QDim.sqrt_radicand(k)


def qdim_vector(k: int, vector: Union[Mapping[Label, int], Iterable[Tuple[Label, int]]]) -> QDim:
    """Linear extension of qdim to a multiplicity map or (label, mult) pairs."""
    items = vector.items() if isinstance(vector, Mapping) else vector
    total = QDim.zero(k)
    for label, mult in items:
        total = total + qdim(k, label) * int(mult)
    return total


def global_dimension(k: int) -> QDim:
    """Sum of squared quantum dimensions over all simples."""
    check_rank(k)
    total = QDim.zero(k)
    for x in enumerate_simples(k):
        d = qdim(k, x)
        total = total + d * d
    logger.debug(f"Global dimension for k={k}: {total}")
    return total
