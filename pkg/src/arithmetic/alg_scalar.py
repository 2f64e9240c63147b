"""
Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

An element a + b*sqrt2 + c*sqrt3 + d*sqrt6 is stored as four integer
numerators over one positive common denominator, always reduced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce, total_ordering
from typing import Optional, Tuple, Union

from src.utils.errors import DivisionByZero

Rational = Union[int, Fraction]

_RADICANDS = (2, 3, 6)


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"exact coordinate expected, got {type(x).__name__}")
    return Fraction(x)


def rational_sqrt(q: Rational) -> Optional[Fraction]:
    """Square root of a non-negative rational when it is rational."""
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@total_ordering
class AlgScalar:
    __slots__ = ("_num", "_den")

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0) -> None:
        coords = [_as_fraction(x) for x in (a, b, c, d)]
        den = reduce(math.lcm, (x.denominator for x in coords), 1)
        nums = tuple(x.numerator * (den // x.denominator) for x in coords)
        self._num, self._den = self._reduce(nums, den)

    @staticmethod
    def _reduce(nums: Tuple[int, ...], den: int) -> Tuple[Tuple[int, ...], int]:
        g = reduce(math.gcd, nums, den)
        if g > 1:
            nums = tuple(n // g for n in nums)
            den //= g
        return nums, den

    @classmethod
    def _from_raw(cls, nums: Tuple[int, ...], den: int) -> AlgScalar:
        obj = cls.__new__(cls)
        if den < 0:
            nums, den = tuple(-n for n in nums), -den
        obj._num, obj._den = cls._reduce(nums, den)
        return obj

    @classmethod
    def coerce(cls, x) -> AlgScalar:
        if isinstance(x, AlgScalar):
            return x
        return cls(x)

    # coordinates

    @property
    def a(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._num[1], self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._num[2], self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._num[3], self._den)

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.d

    @property
    def is_exact(self) -> bool:
        return True

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def is_integer(self) -> Tuple[bool, Optional[int]]:
        """Return ``(True, value)`` when the element is a rational integer."""
        if self.is_rational() and self._den == 1:
            return True, self._num[0]
        return False, None

    def __repr__(self) -> str:
        return f"AlgScalar({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        terms = []
        for coeff, unit in zip(self.coords, ("", "√2", "√3", "√6")):
            if coeff == 0:
                continue
            if unit and abs(coeff) == 1:
                text = unit
            else:
                text = f"{abs(coeff)}{unit}"
            sign = "-" if coeff < 0 else "+"
            terms.append((sign, text))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in terms[1:]:
            out += f"{sign}{text}"
        return out

    # comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = AlgScalar(other)
        if isinstance(other, AlgScalar):
            return self._num == other._num and self._den == other._den
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._num[0], self._den))
        return hash((self._num, self._den))

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = AlgScalar(other)
        if not isinstance(other, AlgScalar):
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic

    def __neg__(self) -> AlgScalar:
        return AlgScalar._from_raw(tuple(-n for n in self._num), self._den)

    def __pos__(self) -> AlgScalar:
        return self

    def __abs__(self) -> AlgScalar:
        return -self if self.sign() < 0 else self

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgScalar(other)
        if not isinstance(other, AlgScalar):
            return NotImplemented
        nums = tuple(x * other._den + y * self._den for x, y in zip(self._num, other._num))
        return AlgScalar._from_raw(nums, self._den * other._den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgScalar(other)
        if not isinstance(other, AlgScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgScalar(other)
        if not isinstance(other, AlgScalar):
            return NotImplemented
        a1, b1, c1, d1 = self._num
        a2, b2, c2, d2 = other._num
        nums = (
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )
        return AlgScalar._from_raw(nums, self._den * other._den)

    __rmul__ = __mul__

    def conj2(self) -> AlgScalar:
        """Galois conjugate sending sqrt2 to -sqrt2."""
        a, b, c, d = self._num
        return AlgScalar._from_raw((a, -b, c, -d), self._den)

    def conj3(self) -> AlgScalar:
        """Galois conjugate sending sqrt3 to -sqrt3."""
        a, b, c, d = self._num
        return AlgScalar._from_raw((a, b, -c, -d), self._den)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        y = self * self.conj2()
        return (y * y.conj3()).a

    def inverse(self) -> AlgScalar:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return AlgScalar(Fraction(self._den, self._num[0]))
        x2 = self.conj2()
        y = self * x2
        y3 = y.conj3()
        z = (y * y3).a
        return (x2 * y3) * AlgScalar(1 / z)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgScalar(other)
        if not isinstance(other, AlgScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgScalar(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> AlgScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # sign and approximation

    def sign(self) -> int:
        """Exact sign by interval refinement of the three square roots."""
        if self.is_zero():
            return 0
        n0, n1, n2, n3 = self._num
        if not (n1 or n2 or n3):
            return 1 if n0 > 0 else -1
        k = 32
        while True:
            scale = 1 << k
            lo, hi = n0 * scale, n0 * scale
            for coeff, r in zip((n1, n2, n3), _RADICANDS):
                if coeff == 0:
                    continue
                root_lo = math.isqrt(r << (2 * k))
                root_hi = root_lo + 1
                if coeff > 0:
                    lo += coeff * root_lo
                    hi += coeff * root_hi
                else:
                    lo += coeff * root_hi
                    hi += coeff * root_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            k *= 2

    def __float__(self) -> float:
        total = self._num[0]
        value = float(Fraction(total, self._den))
        for coeff, r in zip(self._num[1:], _RADICANDS):
            if coeff:
                value += float(Fraction(coeff, self._den)) * math.sqrt(r)
        return value

    def floor(self) -> int:
        """Exact floor."""
        m = math.floor(float(self))
        while self < m:
            m -= 1
        while self >= m + 1:
            m += 1
        return m

    def ceil(self) -> int:
        return -((-self).floor())

    # square roots

    def sqrt(self) -> Optional[AlgScalar]:
        """Non-negative square root inside the field, or None."""
        s = self.sign()
        if s < 0:
            return None
        if s == 0:
            return ZERO
        if self.is_rational():
            return _rational_field_sqrt(self.a)
        u = AlgScalar(self.a, self.b)
        v = AlgScalar(self.c, self.d)
        candidates = []
        if v.is_zero():
            p = _sqrt_in_q2(u)
            if p is not None:
                candidates.append(p)
            q = _sqrt_in_q2(u / 3)
            if q is not None:
                candidates.append(q * SQRT3)
        else:
            w = _sqrt_in_q2(u * u - 3 * v * v)
            if w is not None:
                for half in ((u + w) / 2, (u - w) / 2):
                    p = _sqrt_in_q2(half)
                    if p is None or p.is_zero():
                        continue
                    candidates.append(p + (v / (2 * p)) * SQRT3)
        for root in candidates:
            if root * root == self:
                return root if root.sign() >= 0 else -root
        return None


def _rational_field_sqrt(q: Fraction) -> Optional[AlgScalar]:
    exact = rational_sqrt(q)
    if exact is not None:
        return AlgScalar(exact)
    for r, unit in ((2, (0, 1, 0, 0)), (3, (0, 0, 1, 0)), (6, (0, 0, 0, 1))):
        s = rational_sqrt(q / r)
        if s is not None:
            return AlgScalar(*(s * x for x in unit))
    return None


def _sqrt_in_q2(x: AlgScalar) -> Optional[AlgScalar]:
    """Square root inside Q(sqrt2) of an element of Q(sqrt2)."""
    if x.sign() < 0:
        return None
    e, f = x.a, x.b
    if f == 0:
        s = rational_sqrt(e)
        if s is not None:
            return AlgScalar(s)
        s = rational_sqrt(e / 2)
        return AlgScalar(0, s) if s is not None else None
    disc = rational_sqrt(e * e - 2 * f * f)
    if disc is None:
        return None
    for g2 in ((e + disc) / 2, (e - disc) / 2):
        g = rational_sqrt(g2)
        if not g:
            continue
        root = AlgScalar(g, f / (2 * g))
        if root * root == x:
            return root if root.sign() >= 0 else -root
    return None


ZERO = AlgScalar(0)
ONE = AlgScalar(1)
SQRT2 = AlgScalar(0, 1)
SQRT3 = AlgScalar(0, 0, 1)
SQRT6 = AlgScalar(0, 0, 0, 1)
