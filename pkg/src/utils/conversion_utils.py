"""
Utility functions for converting scalars, matrices and reports to JSON.
"""

import json
import math
from enum import Enum
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from src.arithmetic.alg_scalar import AlgScalar
from src.arithmetic.scalar import Approx, label_to_json
from src.utils.errors import ParseError


class ConversionUtils:
    """
    Utility class for converting exact and approximate values to JSON-ready data.
    """

    @staticmethod
    def rational_to_json(q: Fraction):
        """Integers stay numbers; other rationals become "p/q" strings."""
        q = Fraction(q)
        return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    @staticmethod
    def rational_from_json(raw) -> Fraction:
        if isinstance(raw, bool):
            raise ParseError(f"not a rational: {raw!r}")
        if isinstance(raw, float):
            if not raw.is_integer():
                raise ParseError(f"exact entries must be integers or 'p/q' strings, got {raw!r}")
            raw = int(raw)
        try:
            return Fraction(raw)
        except (TypeError, ValueError) as e:
            raise ParseError(f"not a rational: {raw!r}") from e

    @staticmethod
    def scalar_to_json(x) -> Any:
        """
        Encode a scalar.

        Rational values as a number or "p/q", other exact values as the
        coordinate list [a, b, c, d], approximate ones as {"approx": float}.
        """
        if isinstance(x, Approx):
            return {"approx": x.value}
        x = AlgScalar.coerce(x)
        if x.is_rational():
            return ConversionUtils.rational_to_json(x.a)
        return [ConversionUtils.rational_to_json(c) for c in x.coords]

    @staticmethod
    def scalar_from_json(raw) -> Any:
        if isinstance(raw, dict):
            if "approx" not in raw:
                raise ParseError(f"unknown scalar object {raw!r}")
            return Approx(raw["approx"])
        if isinstance(raw, list):
            if len(raw) != 4:
                raise ParseError(f"field element needs 4 coordinates, got {raw!r}")
            return AlgScalar(*(ConversionUtils.rational_from_json(c) for c in raw))
        return AlgScalar(ConversionUtils.rational_from_json(raw))

    @staticmethod
    def convert_to_serializable(obj):
        """Recursively convert arrays, scalars, enums and tuples."""
        if isinstance(obj, (AlgScalar, Approx)):
            return ConversionUtils.scalar_to_json(obj)
        if isinstance(obj, Fraction):
            return ConversionUtils.rational_to_json(obj)
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, float) and math.isinf(obj):
            return label_to_json(obj)
        if isinstance(obj, np.ndarray):
            return [ConversionUtils.convert_to_serializable(x) for x in obj.tolist()]
        if isinstance(obj, (np.integer,)):
            return int(obj)
        if isinstance(obj, (np.floating,)):
            return float(obj)
        if isinstance(obj, dict):
            return {str(k): ConversionUtils.convert_to_serializable(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [ConversionUtils.convert_to_serializable(item) for item in obj]
        if isinstance(obj, (set, frozenset)):
            return sorted(ConversionUtils.convert_to_serializable(item) for item in obj)
        return obj

    @staticmethod
    def dumps(obj) -> str:
        """Deterministic JSON text."""
        return json.dumps(ConversionUtils.convert_to_serializable(obj), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def load_json(path: str) -> Dict[str, Any]:
        try:
            with open(path, "r") as f:
                return json.load(f)
        except FileNotFoundError:
            raise ParseError(f"Input file not found at: {path}")
        except json.JSONDecodeError as e:
            raise ParseError(f"Error parsing JSON file: {str(e)}")
