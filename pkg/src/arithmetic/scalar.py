"""
Scalars used as Cartan entries: exact field elements or float approximations.

``Scalar`` is either an :class:`AlgScalar` (exact) or an :class:`Approx`.
Any operation that touches an ``Approx`` yields an ``Approx``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Tuple, Union

from src.arithmetic.alg_scalar import ONE, SQRT2, SQRT3, ZERO, AlgScalar
from src.utils.errors import ApproxData, DivisionByZero, InfiniteLabel, ParseError, ValidationError

Label = Union[int, float]
INF = math.inf

# exact entries -2cos(pi/m) and products 4cos^2(pi/m)
EXACT_LABELS = (2, 3, 4, 6)
_COS_ENTRIES = {2: ZERO, 3: -ONE, 4: -SQRT2, 6: -SQRT3}
_COS_PRODUCTS = {2: 0, 3: 1, 4: 2, 6: 3}


class Approx:
    """Floating-point scalar without any exactness claim."""

    __slots__ = ("value",)

    def __init__(self, value) -> None:
        self.value = float(value)

    @property
    def is_exact(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"Approx({self.value!r})"

    def __str__(self) -> str:
        return f"~{self.value:.12g}"

    def __float__(self) -> float:
        return self.value

    @staticmethod
    def _value(other) -> Optional[float]:
        if isinstance(other, Approx):
            return other.value
        if isinstance(other, (int, Fraction, AlgScalar)):
            return float(other)
        if isinstance(other, float):
            return other
        return None

    def __add__(self, other):
        v = self._value(other)
        return NotImplemented if v is None else Approx(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._value(other)
        return NotImplemented if v is None else Approx(self.value - v)

    def __rsub__(self, other):
        v = self._value(other)
        return NotImplemented if v is None else Approx(v - self.value)

    def __mul__(self, other):
        v = self._value(other)
        return NotImplemented if v is None else Approx(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._value(other)
        if v is None:
            return NotImplemented
        if v == 0.0:
            raise DivisionByZero("division of approximate value by zero")
        return Approx(self.value / v)

    def __rtruediv__(self, other):
        v = self._value(other)
        if v is None:
            return NotImplemented
        if self.value == 0.0:
            raise DivisionByZero("division by approximate zero")
        return Approx(v / self.value)

    def __pow__(self, n: int):
        return Approx(self.value ** n)

    def __neg__(self) -> Approx:
        return Approx(-self.value)

    def __abs__(self) -> Approx:
        return Approx(abs(self.value))

    def __eq__(self, other) -> bool:
        v = self._value(other)
        return NotImplemented if v is None else self.value == v

    def __hash__(self) -> int:
        return hash(("approx", self.value))

    def __lt__(self, other) -> bool:
        v = self._value(other)
        return NotImplemented if v is None else self.value < v

    def __le__(self, other) -> bool:
        v = self._value(other)
        return NotImplemented if v is None else self.value <= v

    def __gt__(self, other) -> bool:
        v = self._value(other)
        return NotImplemented if v is None else self.value > v

    def __ge__(self, other) -> bool:
        v = self._value(other)
        return NotImplemented if v is None else self.value >= v

    def is_zero(self) -> bool:
        return self.value == 0.0

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def sqrt(self) -> Approx:
        return Approx(math.sqrt(self.value))

    def is_integer(self) -> Tuple[bool, Optional[int]]:
        raise ApproxData(f"integrality of approximate value {self.value!r} is undecidable")


Scalar = Union[AlgScalar, Approx]


def exact(x) -> AlgScalar:
    """Coerce ints and fractions; refuse approximate data."""
    if isinstance(x, Approx):
        raise ApproxData("exact value required")
    return AlgScalar.coerce(x)


def is_exact(x) -> bool:
    return not isinstance(x, Approx)


def scalar_sqrt(x: Scalar) -> Scalar:
    """Square root, exact when the field contains it."""
    if isinstance(x, Approx):
        return x.sqrt()
    root = AlgScalar.coerce(x).sqrt()
    if root is None:
        return Approx(math.sqrt(float(x)))
    return root


def parse_label(raw) -> Label:
    if isinstance(raw, str):
        if raw.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        try:
            raw = int(raw)
        except ValueError:
            raise ParseError(f"label must be an integer or 'inf', got {raw!r}") from None
    if raw == INF:
        return INF
    if isinstance(raw, float) and raw.is_integer():
        raw = int(raw)
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise ValidationError(f"label must be an integer or 'inf', got {raw!r}")
    return raw


def label_to_json(m: Label):
    return "inf" if m == INF else int(m)


def make_cos_entry(m: Label) -> Scalar:
    """Canonical Cartan entry -2cos(pi/m) for a finite label m >= 2."""
    if m == INF:
        raise InfiniteLabel("label inf has no canonical entry; supply the parameter")
    if not isinstance(m, int) or m < 2:
        raise ValidationError(f"label must be >= 2, got {m!r}")
    if m in _COS_ENTRIES:
        return _COS_ENTRIES[m]
    return Approx(-2.0 * math.cos(math.pi / m))


def cos_product(m: Label) -> Scalar:
    """The edge product 4cos^2(pi/m)."""
    if m == INF:
        raise InfiniteLabel("label inf has a free edge product")
    if m in _COS_PRODUCTS:
        return AlgScalar(_COS_PRODUCTS[m])
    return Approx(4.0 * math.cos(math.pi / m) ** 2)
