"""
Exact dyadic rationals: numerator / 2**exponent.

Every probability produced by a selection scheme has a power-of-two
denominator, so sums and products stay in this class. Comparisons against
arbitrary rationals (11/68 and friends) go through fractions.Fraction, which
cross-multiplies integers.
"""

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "DyadicRational"]


class DyadicRational:
    __slots__ = ("_num", "_exp")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if exponent < 0:
            raise ValueError("exponent must be non-negative")
        numerator = int(numerator)
        if numerator == 0:
            exponent = 0
        else:
            # canonical form: odd numerator or exponent zero
            shift = min((numerator & -numerator).bit_length() - 1, exponent)
            numerator >>= shift
            exponent -= shift
        self._num = numerator
        self._exp = exponent

    @classmethod
    def from_value(cls, value: Number) -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        f = Fraction(value)
        den = f.denominator
        if den & (den - 1):
            raise ValueError(f"{f} is not dyadic")
        return cls(f.numerator, den.bit_length() - 1)

    @classmethod
    def power_of_half(cls, k: int) -> "DyadicRational":
        return cls(1, k)

    @property
    def numerator(self) -> int:
        return self._num

    @property
    def exponent(self) -> int:
        return self._exp

    def to_fraction(self) -> Fraction:
        return Fraction(self._num, 1 << self._exp)

    # ========== Arithmetic ==========

    def _align(self, other: "DyadicRational") -> tuple[int, int, int]:
        exp = max(self._exp, other._exp)
        return self._num << (exp - self._exp), other._num << (exp - other._exp), exp

    def __add__(self, other):
        if isinstance(other, int):
            other = DyadicRational(other)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, exp = self._align(other)
        return DyadicRational(a + b, exp)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = DyadicRational(other)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, exp = self._align(other)
        return DyadicRational(a - b, exp)

    def __rsub__(self, other):
        if isinstance(other, int):
            return DyadicRational(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            other = DyadicRational(other)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return DyadicRational(self._num * other._num, self._exp + other._exp)

    __rmul__ = __mul__

    def __neg__(self):
        return DyadicRational(-self._num, self._exp)

    # ========== Comparison ==========

    def _cmp_key(self, other) -> tuple[Fraction, Fraction]:
        if isinstance(other, DyadicRational):
            return self.to_fraction(), other.to_fraction()
        if isinstance(other, (int, Rational)):
            return self.to_fraction(), Fraction(other)
        raise TypeError(f"cannot compare DyadicRational with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return self._num == other._num and self._exp == other._exp
        if isinstance(other, (int, Rational)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __lt__(self, other):
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        a, b = self._cmp_key(other)
        return a >= b

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __floor__(self) -> int:
        return self._num >> self._exp

    def __bool__(self) -> bool:
        return self._num != 0

    def __str__(self) -> str:
        if self._exp == 0:
            return str(self._num)
        return f"{self._num}/{1 << self._exp}"

    def __repr__(self) -> str:
        return f"DyadicRational({self._num}, {self._exp})"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
HALF = DyadicRational(1, 1)
