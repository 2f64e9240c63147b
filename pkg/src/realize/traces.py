"""
Traces of random words in the generators.

At an integral point every element of the group is conjugate into
integer matrices, so all traces are integers. The probe is a necessary
check only.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.realize.realization import VinbergRealization

logger = logging.getLogger(__name__)

TRACE_EPS = 1.0e-6


@dataclass(frozen=True)
class WordTrace:
    word: Tuple[str, ...]
    trace: float

    @property
    def distance_to_integer(self) -> float:
        return abs(self.trace - round(self.trace))

    def to_record(self) -> dict:
        return {"word": "".join(f"[{s}]" for s in self.word), "trace": self.trace}


def random_words(index: Sequence[str], count: int, max_len: int, rng: np.random.Generator) -> List[Tuple[str, ...]]:
    """Words of length 1..max_len with no letter repeated twice in a row."""
    words = []
    for _ in range(count):
        length = int(rng.integers(1, max_len + 1))
        word: List[str] = []
        while len(word) < length:
            s = index[int(rng.integers(len(index)))]
            if word and word[-1] == s:
                continue
            word.append(s)
        words.append(tuple(word))
    return words


def word_trace(R: VinbergRealization, word: Sequence[str]) -> float:
    return float(np.trace(R.word_matrix(word)))


def word_traces(R: VinbergRealization, count: int = 200, max_len: int = 8, seed: int = 42) -> List[WordTrace]:
    """Traces of ``count`` seeded random words."""
    if len(R.index) < 2:
        words = [tuple(R.index)] * count
    else:
        words = random_words(R.index, count, max_len, np.random.default_rng(seed))
    return [WordTrace(w, word_trace(R, w)) for w in words]


def traces_integral(traces: Sequence[WordTrace], tol: float = TRACE_EPS) -> Tuple[bool, Optional[WordTrace]]:
    """Whether all traces are integers within tol, and the worst word."""
    if not traces:
        return True, None
    worst = max(traces, key=lambda t: t.distance_to_integer)
    ok = worst.distance_to_integer <= tol
    if not ok:
        logger.info("trace of %s is %.9g, off an integer by %.2e", worst.word, worst.trace, worst.distance_to_integer)
    return ok, worst
