"""TriEntropy: the base-3 analogue of BiEntropy.

Derivatives use the pairwise trinary difference PTD(a,b,c) =
(|a-b| + |b-c| + |a-c|) mod 3 over overlapping triples, so each level is
two trits shorter than the one above and the chain stops at width 3.
Level proportions are weighted by symbol priors: the input string uses
equiprobable priors (1/3, 1/3, 1/3); derivative levels use the PTD output
distribution (1/9, 4/9, 4/9).  A derivative that collapses to all zeros
keeps feeding zeros downward but would still carry nonzero weighted
entropy, so it and every later level are forced to contribute nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .bientropy import EntropyLevel, EntropyProfile, shannon
from .bitstring import encode_binary
from . import bientropy

INPUT_PRIORS = (1 / 3, 1 / 3, 1 / 3)
DERIVATIVE_PRIORS = (1 / 9, 4 / 9, 4 / 9)

MAX_TRIT_WIDTH = 40


def ptd(a: int, b: int, c: int) -> int:
    """Pairwise trinary difference of a trit triple; order-independent."""
    for v in (a, b, c):
        if v not in (0, 1, 2):
            raise ValueError(f"not a trit: {v}")
    return (abs(a - b) + abs(b - c) + abs(a - c)) % 3


# exhaustive table; ptd() itself stays the reference formula
_PTD = tuple(tuple(tuple(ptd(a, b, c) for c in range(3)) for b in range(3)) for a in range(3))


@dataclass(frozen=True, slots=True)
class TritString:
    """An immutable trit string, most-significant trit first."""

    trits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.trits:
            raise ValueError("empty trit string")
        if len(self.trits) > MAX_TRIT_WIDTH:
            raise ValueError(f"width {len(self.trits)} above cap of {MAX_TRIT_WIDTH}")
        if any(t not in (0, 1, 2) for t in self.trits):
            raise ValueError("trits must be 0, 1 or 2")

    @classmethod
    def from_text(cls, text: str) -> "TritString":
        return cls(tuple(int(ch) for ch in text))

    def __str__(self) -> str:
        return "".join(str(t) for t in self.trits)

    def __len__(self) -> int:
        return len(self.trits)

    @property
    def width(self) -> int:
        return len(self.trits)

    def value(self) -> int:
        v = 0
        for t in self.trits:
            v = 3 * v + t
        return v

    def counts(self) -> tuple[int, int, int]:
        return (self.trits.count(0), self.trits.count(1), self.trits.count(2))

    def swap12(self) -> "TritString":
        return TritString(tuple((0, 2, 1)[t] for t in self.trits))

    def derivative(self) -> "TritString":
        return trinary_derivative(self)


def encode_trinary(x: int, width: int) -> TritString:
    """Encode a natural as a zero-padded, most-significant-first trit string."""
    if width < 1:
        raise ValueError(f"width {width} below minimum of 1")
    if width > MAX_TRIT_WIDTH:
        raise ValueError(f"width {width} above cap of {MAX_TRIT_WIDTH}")
    if x < 0:
        raise ValueError("negative values cannot be encoded")
    digits = []
    v = x
    for _ in range(width):
        digits.append(v % 3)
        v //= 3
    if v:
        raise ValueError(f"width overflow: {x} needs more than {width} trits")
    return TritString(tuple(reversed(digits)))


def trinary_derivative(s: TritString) -> TritString:
    """PTD over consecutive overlapping triples; two trits shorter."""
    tr = s.trits
    if len(tr) < 3:
        raise ValueError("width underflow: derivative needs at least 3 trits")
    table = _PTD
    return TritString(tuple(table[tr[i]][tr[i + 1]][tr[i + 2]] for i in range(len(tr) - 2)))


@dataclass(frozen=True, slots=True)
class TriDerivativeChain:
    """Levels 0..(n-3)/2 with widths n, n-2, ..., 3.

    zeroed_from is the first level index whose trits are all zero; that
    level and everything after it contribute nothing to the score.
    """

    levels: tuple[TritString, ...]
    zeroed_from: int | None

    def __len__(self) -> int:
        return len(self.levels)

    def __iter__(self) -> Iterator[TritString]:
        return iter(self.levels)

    def level(self, k: int) -> TritString:
        return self.levels[k]


def _check_trien_width(width: int) -> None:
    if width < 3:
        raise ValueError("width underflow: need at least 3 trits")
    if width % 2 == 0:
        raise ValueError(f"width must be odd, got {width}")


def tri_derivative_chain(s: TritString) -> TriDerivativeChain:
    _check_trien_width(s.width)
    levels = [s]
    zeroed_from = None
    level = s
    k = 0
    while level.width > 3:
        level = trinary_derivative(level)
        k += 1
        levels.append(level)
        if zeroed_from is None and not any(level.trits):
            zeroed_from = k
    return TriDerivativeChain(tuple(levels), zeroed_from)


def prior_weighted_p(counts: Sequence[int], priors: Sequence[float]) -> float:
    """Sum of per-symbol frequency times prior probability."""
    if len(counts) != 3 or len(priors) != 3:
        raise ValueError("need exactly 3 counts and 3 priors")
    total = sum(counts)
    if total < 1:
        raise ValueError("empty string: all symbol counts are zero")
    if any(c < 0 for c in counts):
        raise ValueError("negative symbol count")
    if abs(sum(priors) - 1.0) > 1e-9:
        raise ValueError(f"priors must sum to 1, got {sum(priors)}")
    return (counts[0] * priors[0] + counts[1] * priors[1] + counts[2] * priors[2]) / total


def trien_profile(s: TritString) -> EntropyProfile:
    """Per-level proportions, entropy terms and 3^k weights."""
    chain = tri_derivative_chain(s)
    big_k = (s.width - 3) // 2
    levels = []
    total = 0.0
    for k, level in enumerate(chain.levels):
        priors = INPUT_PRIORS if k == 0 else DERIVATIVE_PRIORS
        p = prior_weighted_p(level.counts(), priors)
        suppressed = chain.zeroed_from is not None and k >= chain.zeroed_from
        h = 0.0 if suppressed else shannon(p)
        w = 3 ** k
        total += h * w
        levels.append(EntropyLevel(k, p, h, w))
    norm = (3 ** (big_k + 1) - 1) // 2
    return EntropyProfile(tuple(levels), norm, total / norm)


def trien(s: TritString) -> float:
    """Weighted entropy score of a trit string, in (0, 1].

    The level-0 term is constant (equiprobable priors force p = 1/3), so
    the score never reaches 0; at width 9 a constant string scores
    H(1/3)/40 ~= 0.0230.
    """
    _check_trien_width(s.width)
    big_k = (s.width - 3) // 2
    total = shannon(1 / 3)
    level = s
    for k in range(1, big_k + 1):
        level = trinary_derivative(level)
        if not any(level.trits):
            break
        p = prior_weighted_p(level.counts(), DERIVATIVE_PRIORS)
        total += shannon(p) * 3 ** k
    return total / ((3 ** (big_k + 1) - 1) // 2)


def tribien(x: int, bin_width: int, tri_width: int, t: int = 1) -> float:
    """Sum of the binary and trinary scores of x, in [0, 2]."""
    b = bientropy.bien(encode_binary(x, bin_width), t)
    return b + trien(encode_trinary(x, tri_width))
