"""Fixed-width binary expansions and their XOR derivatives.

A width-n string has n-1 derivatives; taking a derivative shortens the
string by one bit.  Width is always explicit: 5 encoded at 8 bits is
00000101, and the leading zeros matter to every entropy downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_WIDTH = 64


@dataclass(frozen=True, slots=True)
class BitString:
    """An immutable bit string, most-significant bit first."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(f"width {self.width} outside [1, {MAX_WIDTH}]")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __len__(self) -> int:
        return self.width

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.width - 1 - i)) & 1 for i in range(self.width))

    @property
    def ones(self) -> int:
        return self.value.bit_count()

    def complement(self) -> "BitString":
        return BitString(self.value ^ ((1 << self.width) - 1), self.width)

    def __xor__(self, other: "BitString") -> "BitString":
        if self.width != other.width:
            raise ValueError("XOR requires equal widths")
        return BitString(self.value ^ other.value, self.width)

    def derivative(self) -> "BitString":
        return binary_derivative(self)


def encode_binary(x: int, width: int) -> BitString:
    """Encode a natural as a zero-padded, MSB-first bit string."""
    if width < 2:
        raise ValueError(f"width {width} below minimum of 2")
    if width > MAX_WIDTH:
        raise ValueError(f"width {width} above cap of {MAX_WIDTH}")
    if x < 0:
        raise ValueError("negative values cannot be encoded")
    if x >= (1 << width):
        raise ValueError(f"width overflow: {x} needs more than {width} bits")
    return BitString(x, width)


def binary_derivative(s: BitString) -> BitString:
    """XOR adjacent bit pairs; the result is one bit shorter."""
    if s.width < 2:
        raise ValueError("width underflow: derivative needs at least 2 bits")
    return BitString(derivative_value(s.value, s.width), s.width - 1)


def derivative_value(value: int, width: int) -> int:
    # bit i of the result is bit_i XOR bit_{i+1} of the input (MSB-first)
    return (value >> 1) ^ (value & ((1 << (width - 1)) - 1))


@dataclass(frozen=True, slots=True)
class DerivativeChain:
    """All derivative levels of a string; level 0 is the input itself."""

    levels: tuple[BitString, ...]

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[BitString]:
        return iter(self.levels)

    def level(self, k: int) -> BitString:
        return self.levels[k]

    def first_zero_level(self) -> int | None:
        """Smallest k >= 1 whose level is all-zero, or None."""
        for k, lvl in enumerate(self.levels):
            if k >= 1 and lvl.value == 0:
                return k
        return None


def derivative_chain(s: BitString) -> DerivativeChain:
    """Levels 0..n-1 with widths n, n-1, ..., 1."""
    if s.width < 2:
        raise ValueError("width underflow: chain needs at least 2 bits")
    levels = [s]
    v, w = s.value, s.width
    while w > 1:
        v = derivative_value(v, w)
        w -= 1
        levels.append(BitString(v, w))
    return DerivativeChain(tuple(levels))


def is_periodic(s: BitString) -> bool:
    """True when some derivative level k >= 1 vanishes.

    Any string built as 2 or more copies of a power-of-two sized block
    satisfies this.  On finite strings the converse fails: short levels
    can vanish by truncation alone (e.g. 10000111 dies at level 5), so
    this predicate is coarser than block repetition.
    """
    if s.width < 2:
        raise ValueError("width underflow: periodicity needs at least 2 bits")
    v, w = s.value, s.width
    while w > 1:
        v = derivative_value(v, w)
        w -= 1
        if v == 0:
            return True
    return False


def ones_proportion(s: BitString) -> float:
    """Fraction of 1 bits."""
    if s.width < 1:
        raise ValueError("empty string")
    return s.value.bit_count() / s.width
