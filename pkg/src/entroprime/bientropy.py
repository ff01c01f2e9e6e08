"""BiEntropy: a power-of-two weighted average of per-derivative Shannon entropies.

The score is 0 for perfectly ordered strings (00, 11, any 2^m-periodic
repetition) and reaches 1 only for the width-2 strings 01 and 10.  Raising
each per-level entropy to a power t > 1 sharpens the distinction between
near-maximal disorder and everything else (P10 means t=10).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bitstring import BitString, derivative_value, encode_binary


def shannon(p: float) -> float:
    """Binary Shannon entropy with 0*log2(0) == 0."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"proportion {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


@dataclass(frozen=True, slots=True)
class EntropyLevel:
    k: int
    p: float
    h: float           # entropy term actually weighted (already raised to t)
    weight: int


@dataclass(frozen=True, slots=True)
class EntropyProfile:
    """Per-level terms plus the weighted score in [0, 1]."""

    per_level: tuple[EntropyLevel, ...]
    normalizer: int
    score: float


def _level_proportions(value: int, width: int):
    """Ones proportion of levels 0..width-2 (the last level is unused)."""
    v, w = value, width
    for _ in range(width - 1):
        yield v.bit_count() / w
        v = derivative_value(v, w)
        w -= 1


def _check_args(width: int, t: int) -> None:
    if width < 2:
        raise ValueError("width underflow: need at least 2 bits")
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"entropy exponent must be an integer >= 1, got {t}")


def bien(s: BitString, t: int = 1) -> float:
    """Weighted entropy score of a bit string, in [0, 1]."""
    _check_args(s.width, t)
    total = 0.0
    for k, p in enumerate(_level_proportions(s.value, s.width)):
        total += shannon(p) ** t * (1 << k)
    return total / ((1 << (s.width - 1)) - 1)


def bien_profile(s: BitString, t: int = 1) -> EntropyProfile:
    """Like bien() but keeps every level's proportion, term and weight."""
    _check_args(s.width, t)
    levels = []
    total = 0.0
    for k, p in enumerate(_level_proportions(s.value, s.width)):
        h = shannon(p) ** t
        w = 1 << k
        total += h * w
        levels.append(EntropyLevel(k, p, h, w))
    norm = (1 << (s.width - 1)) - 1
    return EntropyProfile(tuple(levels), norm, total / norm)


def bien_of_integer(x: int, width: int, t: int = 1) -> float:
    """bien of the zero-padded width-bit expansion of x."""
    return bien(encode_binary(x, width), t)
