"""Prime generation, exact trial-division testing and classification flags."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.special import expi

# prime count below 2^32; reproduced by segmented_prime_count (slow test)
PI_2_32 = 203280221

DEFAULT_SIEVE_CAP = 1 << 26

KLASS_PRIME = "prime"
KLASS_ODD_COMPOSITE = "odd-composite"
KLASS_EVEN_OR_UNIT = "even-or-unit"   # evens (including 0) plus the unit 1

FLAG_MERSENNE = "mersenne-prime"
FLAG_FERMAT = "fermat-prime"
FLAG_TWIN = "twin-prime"
FLAG_SIX = "divisible-by-six"


class ResourceCapError(RuntimeError):
    """Raised when a scan would exceed its configured size cap."""


@dataclass(frozen=True)
class PrimeTable:
    """Primality flags and prefix prime counts for [0, limit)."""

    limit: int
    flags: np.ndarray
    cumulative: np.ndarray

    def is_prime(self, x: int) -> bool:
        if not 0 <= x < self.limit:
            raise ValueError(f"{x} outside table range [0, {self.limit})")
        return bool(self.flags[x])

    def pi(self, x: int) -> int:
        """Count of primes <= x."""
        if not 0 <= x < self.limit:
            raise ValueError(f"{x} outside table range [0, {self.limit})")
        return int(self.cumulative[x])

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags)


def sieve(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> PrimeTable:
    """Eratosthenes over [0, limit)."""
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > cap:
        raise ResourceCapError(f"sieve limit {limit} exceeds cap {cap}")
    flags = np.ones(limit, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    cumulative = np.cumsum(flags)
    flags.setflags(write=False)
    cumulative.setflags(write=False)
    return PrimeTable(limit, flags, cumulative)


def is_prime_trial(x: int) -> bool:
    """Exact primality by trial division with 6k+-1 stepping."""
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    if x % 3 == 0:
        return x == 3
    d = 5
    while d * d <= x:
        if x % d == 0 or x % (d + 2) == 0:
            return False
        d += 6
    return True


def segmented_prime_count(limit: int, segment_bytes: int = 1 << 24) -> int:
    """Count primes <= limit with an odds-only segmented sieve.

    Memory stays bounded by segment_bytes regardless of limit, so this
    covers ranges far beyond the plain sieve cap (it verifies PI_2_32).
    """
    if limit < 2:
        return 0
    base = sieve(math.isqrt(limit) + 1, cap=1 << 32)
    base_odd = [int(p) for p in base.primes() if p > 2]
    count = 1  # the prime 2
    span = 2 * segment_bytes
    low = 3
    while low <= limit:
        high = min(low + span, limit + 1)  # exclusive
        size = (high - low + 1) // 2
        mask = np.ones(size, dtype=bool)
        for p in base_odd:
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= high:
                continue
            mask[(start - low) // 2 :: p] = False
        count += int(mask.sum())
        low = high
    return count


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


@dataclass(frozen=True)
class NumberRecord:
    """A natural with its scores and primality classification."""

    x: int
    bien: float
    trien: float | None
    klass: str
    flags: frozenset[str] = field(default_factory=frozenset)

    @property
    def is_prime(self) -> bool:
        return self.klass == KLASS_PRIME

    @property
    def tribien(self) -> float | None:
        return None if self.trien is None else self.bien + self.trien


def classify(x: int, table: PrimeTable) -> tuple[str, frozenset[str]]:
    """Class and flags of x; needs headroom of 2 in the table for twins."""
    if x < 0 or x + 2 >= table.limit:
        raise ValueError(f"{x} (+2 twin margin) outside table range [0, {table.limit})")
    flags = set()
    if x % 6 == 0:
        flags.add(FLAG_SIX)
    if table.flags[x]:
        klass = KLASS_PRIME
        if _is_power_of_two(x + 1):
            flags.add(FLAG_MERSENNE)
        if x >= 3 and _is_power_of_two(x - 1) and _is_power_of_two((x - 1).bit_length() - 1):
            flags.add(FLAG_FERMAT)
        if (x >= 2 and table.flags[x - 2]) or table.flags[x + 2]:
            flags.add(FLAG_TWIN)
    elif x % 2 == 1 and x > 1:
        klass = KLASS_ODD_COMPOSITE
    else:
        klass = KLASS_EVEN_OR_UNIT
    return klass, frozenset(flags)


def pi_of(x: int, table: PrimeTable) -> int:
    """Number of primes <= x."""
    return table.pi(x)


def li_of(x: float) -> float:
    """Offset logarithmic integral: integral of dt/ln t from 2 to x."""
    if x < 2:
        raise ValueError(f"li domain starts at 2, got {x}")
    return float(expi(math.log(x)) - expi(math.log(2.0)))


def li_values(xs: Iterable[float]) -> np.ndarray:
    """Vectorized li_of."""
    arr = np.asarray(list(xs) if not isinstance(xs, np.ndarray) else xs, dtype=float)
    if (arr < 2).any():
        raise ValueError("li domain starts at 2")
    return expi(np.log(arr)) - expi(math.log(2.0))


def derivative_count(bits: int) -> int:
    """Total bits across all derivatives of a width-`bits` string."""
    if bits < 2:
        raise ValueError(f"need at least 2 bits, got {bits}")
    return (bits * bits - bits) // 2
