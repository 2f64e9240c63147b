"""
Test module for exact field arithmetic, approximate scalars and exact linear algebra.
"""

import math
from fractions import Fraction

import pytest

from src.arithmetic import (
    INF,
    ONE,
    SQRT2,
    SQRT3,
    SQRT6,
    ZERO,
    AlgScalar,
    Approx,
    cos_product,
    exact,
    make_cos_entry,
    parse_label,
    scalar_sqrt,
)
from src.arithmetic import linalg
from src.arithmetic.intervals import certified_pivot_signs, label_entry_interval
from src.utils.errors import (
    ApproxData,
    DivisionByZero,
    InfiniteLabel,
    Inconclusive,
    ParseError,
    RankDeficient,
    ValidationError,
)


def test_basis_multiplication():
    """Test products of the basis radicals."""
    assert SQRT2 * SQRT3 == SQRT6
    assert SQRT6 * SQRT6 == 6
    assert SQRT2 * SQRT6 == 2 * SQRT3


def test_conjugate_product_and_inverse():
    """Test the conjugate product and the field inverse."""
    assert (1 + SQRT2) * (1 - SQRT2) == -1
    assert SQRT2.inverse() == AlgScalar(0, Fraction(1, 2))
    x = AlgScalar(3, -1, 2, Fraction(1, 5))
    assert x * x.inverse() == ONE
    assert x / x == ONE


def test_inverse_of_zero():
    """Test that zero has no inverse."""
    with pytest.raises(DivisionByZero):
        ZERO.inverse()
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_exact_sign():
    """Test exact sign decisions, including close cancellations."""
    assert ZERO.sign() == 0
    assert (5 - 2 * SQRT6).sign() == 1
    assert (2 * SQRT6 - 5).sign() == -1
    assert make_cos_entry(3).sign() == -1
    assert (SQRT2 + SQRT3 - SQRT6 - Fraction(1, 10**6)).sign() == 1
    assert AlgScalar(99, -70).sign() == 1


def test_ordering_and_floor():
    """Test comparisons with ints and exact floor / ceil."""
    assert SQRT2 < Fraction(3, 2)
    assert SQRT3 > SQRT2
    assert (2 + SQRT2).floor() == 3
    assert (2 + SQRT2).ceil() == 4
    assert (-SQRT2).floor() == -2
    assert AlgScalar(4).floor() == 4


def test_is_integer():
    """Test integrality on cosine products and radicals."""
    assert cos_product(4).is_integer() == (True, 2)
    assert SQRT2.is_integer() == (False, None)
    assert AlgScalar(Fraction(7, 2)).is_integer() == (False, None)
    with pytest.raises(ApproxData):
        cos_product(5).is_integer()


def test_square_roots_in_field():
    """Test square roots that stay inside the field."""
    assert AlgScalar(2).sqrt() == SQRT2
    assert AlgScalar(6).sqrt() == SQRT6
    assert AlgScalar(Fraction(9, 4)).sqrt() == AlgScalar(Fraction(3, 2))
    assert (3 + 2 * SQRT2).sqrt() == 1 + SQRT2
    assert (5 + 2 * SQRT6).sqrt() == SQRT2 + SQRT3
    assert AlgScalar(-1).sqrt() is None
    assert (2 + SQRT2).sqrt() is None
    assert AlgScalar(5).sqrt() is None


def test_scalar_sqrt_falls_back_to_approx():
    """Test that missing roots become approximations."""
    root = scalar_sqrt(AlgScalar(5))
    assert isinstance(root, Approx)
    assert math.isclose(root.value, math.sqrt(5))


def test_make_cos_entry():
    """Test the canonical cosine entries."""
    assert make_cos_entry(2) == ZERO
    assert make_cos_entry(3) == -ONE
    assert make_cos_entry(4) == -SQRT2
    assert make_cos_entry(6) == -SQRT3
    entry = make_cos_entry(5)
    assert isinstance(entry, Approx)
    assert math.isclose(entry.value, -1.6180339887498949)
    with pytest.raises(InfiniteLabel):
        make_cos_entry(INF)


def test_approx_contaminates():
    """Test that any operation with an Approx stays approximate."""
    x = SQRT2 * Approx(2.0)
    assert isinstance(x, Approx)
    assert math.isclose(x.value, 2 * math.sqrt(2))
    assert isinstance(ONE + Approx(0.5), Approx)
    with pytest.raises(ApproxData):
        exact(Approx(1.0))


def test_parse_label():
    """Test label parsing."""
    assert parse_label("inf") == INF
    assert parse_label(3) == 3
    assert parse_label(4.0) == 4
    assert parse_label(" 6 ") == 6
    with pytest.raises(ValidationError):
        parse_label(2.5)
    with pytest.raises(ParseError, match="seven"):
        parse_label("seven")


def test_float_and_hash():
    """Test float conversion and hashing of rational elements."""
    assert math.isclose(float(1 + SQRT2), 1 + math.sqrt(2))
    assert hash(AlgScalar(3)) == hash(Fraction(3))
    assert {AlgScalar(1, 1): "a"}[1 + SQRT2] == "a"


def test_determinant_and_inverse():
    """Test exact determinant and inverse of a cosine matrix."""
    M = [[2, -1, 0], [-1, 2, -SQRT2], [0, -SQRT2, 2]]
    assert linalg.determinant(M) == 2
    inv = linalg.inverse(M)
    prod = linalg.matmul(M, inv)
    for i in range(3):
        for j in range(3):
            assert prod[i, j] == (1 if i == j else 0)


def test_rank_and_nullspace():
    """Test rank and kernel of the affine A2-tilde cosine matrix."""
    M = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert linalg.rank(M) == 2
    kernel = linalg.nullspace(M)
    assert len(kernel) == 1
    v = kernel[0]
    assert v[0] == v[1] == v[2]
    with pytest.raises(RankDeficient):
        linalg.require_rank(M, 3)
    with pytest.raises(DivisionByZero):
        linalg.inverse(M)


def test_leading_pivot_signs():
    """Test the pivot signs used for classification."""
    assert linalg.leading_pivot_signs([[2, -1], [-1, 2]]) == [1, 1]
    assert linalg.leading_pivot_signs([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) == [1, 1, 0]
    assert linalg.leading_pivot_signs([[2, -2], [-2, 2]]) == [1, 0]
    assert linalg.leading_pivot_signs([[2, -3], [-3, 2]]) == [1, -1]


def test_certified_pivot_signs():
    """Test interval pivots on a heptagonal dihedral block."""
    signs = certified_pivot_signs(lambda: [[2, label_entry_interval(7)], [label_entry_interval(7), 2]])
    assert signs == [1, 1]


def test_certified_pivot_signs_exhausted():
    """Test that an exactly singular interval matrix is reported as undecided."""
    with pytest.raises(Inconclusive):
        certified_pivot_signs(
            lambda: [[2, label_entry_interval(INF)], [label_entry_interval(INF), 2]], max_bits=128
        )
