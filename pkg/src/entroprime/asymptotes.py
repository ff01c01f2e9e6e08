"""Convergent series bounding the counts of Fermat and Mersenne primes,
plus the periodicity algebra that makes repeated-block numbers composite.

Series terms are 1/ln(argument) evaluated in log form, so term values stay
finite long after the argument itself leaves floating-point range; the
argument is kept exact as a Python integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bientropy import bien_of_integer
from .primality import ResourceCapError, is_prime_trial

_LN2 = math.log(2.0)

# exponents n of the five known prime values of 2^n + 1
FERMAT_PRIME_EXPONENTS = (1, 2, 4, 8, 16)
KNOWN_FERMAT_PRIMES = tuple((1 << n) + 1 for n in FERMAT_PRIME_EXPONENTS)

# exponents p of the 51 known prime values of 2^p - 1 (October 2019 census)
MERSENNE_PRIME_EXPONENTS = (
    2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127, 521, 607, 1279, 2203,
    2281, 3217, 4253, 4423, 9689, 9941, 11213, 19937, 21701, 23209, 44497,
    86243, 110503, 132049, 216091, 756839, 859433, 1257787, 1398269,
    2976221, 3021377, 6972593, 13466917, 20996011, 24036583, 25964951,
    30402457, 32582657, 37156667, 42643801, 43112609, 57885161, 74207281,
    77232917, 82589933,
)

PERIODIC_COMPOSITE_CAP = 1 << 24
DEFAULT_SPLIT_WIDTHS = (4, 6, 8)


@dataclass(frozen=True)
class AsymptoteRow:
    """One series term with its running sum and the known-prime count."""

    n: int
    argument: int            # exact integer inside the logarithm
    argument_exponent: int   # its bit-scale: argument = 2^e +- 1
    term: float
    partial_sum: float
    actual_count: int
    ratio: float | None      # d'Alembert term ratio, None for the first row


def fermat_term(n: int) -> float:
    """1 / ln(2^(2n) + 1) via 2n*ln2 + log1p(2^-2n)."""
    if n < 1:
        raise ValueError(f"term index must be >= 1, got {n}")
    tail = math.log1p(2.0 ** (-2 * n)) if 2 * n < 1074 else 0.0
    return 1.0 / (2 * n * _LN2 + tail)


def fermat_sum(terms: int) -> tuple[AsymptoteRow, ...]:
    """Rows n = 1..terms of the possible-Fermat-prime series."""
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    rows = []
    partial = 0.0
    prev = None
    for n in range(1, terms + 1):
        term = fermat_term(n)
        partial += term
        actual = sum(1 for e in FERMAT_PRIME_EXPONENTS if e <= n)
        ratio = None if prev is None else term / prev
        rows.append(AsymptoteRow(n, (1 << (2 * n)) + 1, 2 * n, term, partial, actual, ratio))
        prev = term
    return tuple(rows)


def mersenne_term(bit_length: int) -> float:
    """1 / ln(2^m - 1) via m*ln2 + log1p(-2^-m)."""
    if bit_length < 2:
        raise ValueError(f"bit length must be >= 2, got {bit_length}")
    tail = math.log1p(-(2.0 ** (-bit_length))) if bit_length < 1074 else 0.0
    return 1.0 / (bit_length * _LN2 + tail)


def mersenne_sum(terms: int) -> tuple[AsymptoteRow, ...]:
    """Rows for bit lengths m = 2..terms+1 of the possible-Mersenne series.

    The degenerate arguments 2^0 - 1 and 2^1 - 1 have no logarithm worth
    taking and are skipped, so row n covers bit length n + 1.
    """
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    rows = []
    partial = 0.0
    prev = None
    for n in range(1, terms + 1):
        m = n + 1
        term = mersenne_term(m)
        partial += term
        actual = sum(1 for e in MERSENNE_PRIME_EXPONENTS if e <= m)
        ratio = None if prev is None else term / prev
        rows.append(AsymptoteRow(n, (1 << m) - 1, m, term, partial, actual, ratio))
        prev = term
    return tuple(rows)


def not_prime_probability(bits: int) -> tuple[dict[str, Fraction], Fraction]:
    """Chance a uniform string is composite via an all-ones or vanished level.

    Exactly one half for every width: the all-ones string, the all-zero
    string, and 2^(k-1) strings whose first vanishing derivative is level
    k, for k up to the last level the score uses.
    """
    if bits < 3:
        raise ValueError(f"need at least 3 bits, got {bits}")
    denom = 1 << bits
    breakdown: dict[str, Fraction] = {
        "all-ones": Fraction(1, denom),
        "level-0-zero": Fraction(1, denom),
    }
    for k in range(1, bits - 1):
        breakdown[f"level-{k}-zero"] = Fraction(1 << k, denom)
    total = sum(breakdown.values(), Fraction(0))
    return breakdown, total


def split_width(x: int, widths: Iterable[int] = DEFAULT_SPLIT_WIDTHS) -> int | None:
    """Smallest allowed even width whose halves repeat, else None.

    Blocks of value 0 or 1 do not count: value 0 only pads, and block
    value 1 gives the 2^n + 1 family, which can be prime.
    """
    for w in sorted(set(widths)):
        if w < 2 or w % 2:
            raise ValueError(f"split widths must be even and >= 2, got {w}")
        if x >= (1 << w):
            continue
        half = w // 2
        a, b = x >> half, x & ((1 << half) - 1)
        if a == b and a >= 2:
            return w
    return None


@dataclass(frozen=True)
class PeriodicComposite:
    width: int
    binary: str
    decimal: int
    bien: float


def periodic_composites(limit: int,
                        widths: Iterable[int] = DEFAULT_SPLIT_WIDTHS
                        ) -> tuple[PeriodicComposite, ...]:
    """Every x < limit that splits into two equal halves at an allowed width,
    listed at the smallest width where the split appears."""
    if limit > PERIODIC_COMPOSITE_CAP:
        raise ResourceCapError(f"limit {limit} exceeds cap {PERIODIC_COMPOSITE_CAP}")
    widths = tuple(widths)
    out = []
    for x in range(2, limit):
        w = split_width(x, widths)
        if w is not None:
            out.append(PeriodicComposite(w, format(x, f"0{w}b"), x, bien_of_integer(x, w)))
    return tuple(out)


def is_n_periodic(x: int, half_width: int) -> bool:
    """True when the low half is the bitwise complement of the high half."""
    if half_width < 1:
        raise ValueError(f"half width must be >= 1, got {half_width}")
    if not 0 <= x < (1 << (2 * half_width)):
        raise ValueError(f"width overflow: {x} does not fit in {2 * half_width} bits")
    mask = (1 << half_width) - 1
    return (x & mask) == ((x >> half_width) ^ mask)


def digits_in_base(x: int, base: int) -> tuple[int, ...]:
    """Most-significant-first digits of x, no leading zeros."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if x < 0:
        raise ValueError("negative values have no expansion here")
    if x == 0:
        return (0,)
    digits = []
    while x:
        digits.append(x % base)
        x //= base
    return tuple(reversed(digits))


def is_periodic_in_base(x: int, base: int) -> bool:
    """True when the base-`base` expansion is two identical halves."""
    if x < base:
        return False
    digits = digits_in_base(x, base)
    n = len(digits)
    if n % 2:
        return False
    return digits[: n // 2] == digits[n // 2 :]


def verify_composites(entries: Sequence[PeriodicComposite]) -> bool:
    """Trial-division check that every listed value is composite."""
    return all(not is_prime_trial(e.decimal) for e in entries)
