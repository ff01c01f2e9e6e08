"""Ranked prime-density experiments over entropy-scored populations.

Everything here ranks a population of naturals by one of the entropy
scores, accumulates primes along the ranked order and compares the result
with the natural-order density through curve fits, Monte Carlo sampling
and segment grids.  Ties are always broken by ascending value so reruns
are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import chi2

from .bientropy import bien_of_integer
from .primality import (
    FLAG_FERMAT,
    FLAG_MERSENNE,
    FLAG_SIX,
    FLAG_TWIN,
    KLASS_EVEN_OR_UNIT,
    KLASS_ODD_COMPOSITE,
    KLASS_PRIME,
    PI_2_32,
    NumberRecord,
    PrimeTable,
    ResourceCapError,
    classify,
    is_prime_trial,
    li_values,
    sieve,
)
from .rng import ALGORITHM as RNG_ALGORITHM
from .rng import uniform32_stream
from .trientropy import encode_trinary, trien

DEFAULT_SEED = 2
DEFAULT_SAMPLES = 10_000

BAND_THRESHOLDS = (0.15, 0.25, 0.5, 1.0)
BAND_NAMES = ("white", "yellow", "orange", "red")

TRIDENSITY_CAP = 3 ** 9
TRIDENSITY_HARD_CAP = 3 ** 11
CUBICS_CAP = 16_384
CUBICS_HARD_CAP = 65_536


# ---------------------------------------------------------------- records

def min_trit_width(x_max: int) -> int:
    """Smallest odd trit width that can encode x_max."""
    width = 3
    while 3 ** width <= x_max:
        width += 2
    return width


def build_records(
    xs: Iterable[int],
    *,
    bits: int,
    trit_width: int | None = None,
    t: int = 1,
    table: PrimeTable,
) -> tuple[NumberRecord, ...]:
    """Score and classify a population (leading-zero padded at fixed widths)."""
    out = []
    for x in xs:
        klass, flags = classify(x, table)
        tri = trien(encode_trinary(x, trit_width)) if trit_width else None
        out.append(NumberRecord(x, bien_of_integer(x, bits, t), tri, klass, flags))
    return tuple(out)


def record_score(record: NumberRecord, score_kind: str) -> float:
    if score_kind == "bien":
        return record.bien
    if score_kind == "trien":
        if record.trien is None:
            raise ValueError(f"record {record.x} has no trinary score")
        return record.trien
    if score_kind == "tribien":
        v = record.tribien
        if v is None:
            raise ValueError(f"record {record.x} has no trinary score")
        return v
    raise ValueError(f"unknown score kind {score_kind!r}")


@dataclass(frozen=True)
class RankedTable:
    """Records sorted ascending by (score, x) with prefix prime counts."""

    entries: tuple[NumberRecord, ...]
    score_kind: str
    scores: tuple[float, ...]
    cumulative_primes: np.ndarray

    def __len__(self) -> int:
        return len(self.entries)

    def segment_boundaries(self, segment_size: int) -> tuple[float, ...]:
        """Highest score inside each consecutive segment."""
        n = len(self.entries)
        if segment_size < 1 or n % segment_size:
            raise ValueError(f"segment size {segment_size} does not divide {n}")
        return tuple(self.scores[i * segment_size - 1] for i in range(1, n // segment_size + 1))


def rank_records(records: Sequence[NumberRecord], score_kind: str = "bien") -> RankedTable:
    order = sorted(records, key=lambda r: (record_score(r, score_kind), r.x))
    scores = tuple(record_score(r, score_kind) for r in order)
    cum = np.cumsum([1 if r.is_prime else 0 for r in order])
    cum.setflags(write=False)
    return RankedTable(tuple(order), score_kind, scores, cum)


def rank(
    population: Iterable[int],
    score_kind: str = "bien",
    *,
    bits: int,
    trit_width: int | None = None,
    t: int = 1,
    table: PrimeTable,
) -> RankedTable:
    """Score, classify and sort a population in one step."""
    if score_kind in ("trien", "tribien") and trit_width is None:
        raise ValueError(f"{score_kind} ranking needs trit_width")
    records = build_records(population, bits=bits, trit_width=trit_width, t=t, table=table)
    return rank_records(records, score_kind)


def q(ranked: RankedTable, y: int, i: int) -> int:
    """Primes inside the i-th (1-based) ranked interval of size y."""
    n = len(ranked)
    if y < 1 or n % y:
        raise ValueError(f"interval size {y} does not divide population of {n}")
    if not 1 <= i <= n // y:
        raise ValueError(f"interval index {i} outside [1, {n // y}]")
    hi = ranked.cumulative_primes[i * y - 1]
    lo = ranked.cumulative_primes[(i - 1) * y - 1] if i > 1 else 0
    return int(hi - lo)


# ------------------------------------------------------------- flat tables

@dataclass(frozen=True)
class BandStat:
    name: str
    lower: float
    upper: float
    count: int
    primes: int
    proportion: float


def score_band(value: float, thresholds: Sequence[float] = BAND_THRESHOLDS,
               names: Sequence[str] = BAND_NAMES) -> str:
    for name, hi in zip(names, thresholds):
        if value < hi:
            return name
    return names[-1]


def banded_proportions(records: Sequence[NumberRecord],
                       thresholds: Sequence[float] = BAND_THRESHOLDS,
                       names: Sequence[str] = BAND_NAMES) -> tuple[BandStat, ...]:
    """Population and prime counts per half-open score band [lo, hi)."""
    if len(thresholds) != len(names):
        raise ValueError("one name per threshold")
    out = []
    lo = 0.0
    for name, hi in zip(names, thresholds):
        members = [r for r in records if lo <= r.bien < hi]
        primes = sum(1 for r in members if r.is_prime)
        prop = primes / len(members) if members else 0.0
        out.append(BandStat(name, lo, hi, len(members), primes, prop))
        lo = hi
    return tuple(out)


@dataclass(frozen=True)
class ClassStat:
    name: str
    mean: float
    stddev: float
    n: int


def _stats(values: Sequence[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    sd = float(arr.std(ddof=1)) if len(arr) > 1 else 0.0
    return float(arr.mean()), sd


def class_means(records: Sequence[NumberRecord]) -> tuple[ClassStat, ...]:
    """Mean/stddev of the binary score per classification class.

    The non-prime row follows the published reference convention of
    leaving the two constant strings (0 and the all-ones value) out of
    the average while still reporting the full class size as N.  The odd
    row covers every odd non-prime, which includes 1.
    """
    top = max(r.x for r in records)
    prime = [r.bien for r in records if r.is_prime]
    nonprime_avg = [r.bien for r in records if not r.is_prime and r.x not in (0, top)]
    nonprime_n = sum(1 for r in records if not r.is_prime)
    odd = [r.bien for r in records if not r.is_prime and r.x % 2 == 1]
    mersenne = [r.bien for r in records if FLAG_MERSENNE in r.flags]
    twin = [r.bien for r in records if FLAG_TWIN in r.flags]
    rows = []
    for name, values, n in (
        ("prime", prime, len(prime)),
        ("not-prime", nonprime_avg, nonprime_n),
        ("odd", odd, len(odd)),
        ("mersenne", mersenne, len(mersenne)),
        ("twin", twin, len(twin)),
    ):
        mean, sd = _stats(values)
        rows.append(ClassStat(name, mean, sd, n))
    return tuple(rows)


# ----------------------------------------------------------------- fitting

@dataclass(frozen=True)
class FitResult:
    """Least-squares fit with residual statistics.

    coefficients run from the highest degree down to the constant term;
    through-origin fits carry an explicit 0.0 constant.
    """

    kind: str
    coefficients: tuple[float, ...]
    residuals: np.ndarray
    error_mean: float
    error_stddev: float

    def predict(self, x):
        return np.polyval(self.coefficients, x)


def _lstsq_scaled(design: np.ndarray, y: np.ndarray) -> np.ndarray:
    # column scaling keeps the near-singular intercept column alive
    norms = np.linalg.norm(design, axis=0)
    coef, *_ = np.linalg.lstsq(design / norms, y, rcond=None)
    return coef / norms


def _polyfit(series: Sequence[float], degree: int, through_origin: bool, kind: str) -> FitResult:
    y = np.asarray(series, dtype=float)
    n = len(y)
    needed = degree + (0 if through_origin else 1) + 1
    if n < needed:
        raise ValueError(f"degenerate input: {kind} fit needs at least {needed} points, got {n}")
    i = np.arange(1, n + 1, dtype=float)
    cols = [i ** d for d in range(degree, 0, -1)]
    if not through_origin:
        cols.append(np.ones_like(i))
    coef = _lstsq_scaled(np.column_stack(cols), y)
    coefficients = tuple(coef) + ((0.0,) if through_origin else ())
    residuals = y - np.polyval(coefficients, i)
    mean, sd = _stats(residuals)
    return FitResult(kind, coefficients, residuals, mean, sd)


def fit_quadratic(series: Sequence[float], through_origin: bool = True) -> FitResult:
    kind = "quadratic-through-origin" if through_origin else "quadratic"
    return _polyfit(series, 2, through_origin, kind)


def fit_cubic(series: Sequence[float], through_origin: bool = True) -> FitResult:
    kind = "cubic-through-origin" if through_origin else "cubic"
    return _polyfit(series, 3, through_origin, kind)


def adjusted_log_curve(x_max: int, pi_x: int, table: PrimeTable, mode: str = "scale") -> FitResult:
    """x/ln(x) adjusted to hit pi_x at x_max, with residuals against pi(x).

    mode "scale" multiplies the curve (the default construction); mode
    "shift" adds a constant instead.  Both pin curve(x_max) == pi_x.
    """
    if x_max < 2:
        raise ValueError(f"x_max must be >= 2, got {x_max}")
    xs = np.arange(2, x_max + 1, dtype=float)
    shape = xs / np.log(xs)
    if mode == "scale":
        s = pi_x * math.log(x_max) / x_max
        curve = s * shape
        coefficients = (s, 0.0)
    elif mode == "shift":
        c = pi_x - x_max / math.log(x_max)
        curve = shape + c
        coefficients = (1.0, c)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    actual = np.array([table.pi(int(x)) for x in xs], dtype=float)
    residuals = actual - curve
    mean, sd = _stats(residuals)
    return FitResult(f"adjusted-log-{mode}", coefficients, residuals, mean, sd)


@dataclass(frozen=True)
class DensityFitReport:
    """One full ranked run: quadratic fit plus adjusted-log comparisons."""

    ranked: RankedTable
    quadratic: FitResult
    log_scale: FitResult
    log_shift: FitResult
    prime_score_total: float


def density_fit_report(table: PrimeTable, *, limit: int = 256, bits: int = 8,
                       t: int = 1) -> DensityFitReport:
    ranked = rank(range(limit), "bien", bits=bits, t=t, table=table)
    quad = fit_quadratic(ranked.cumulative_primes, through_origin=True)
    pi_x = table.pi(limit)
    total = sum(r.bien for r in ranked.entries if r.is_prime)
    return DensityFitReport(
        ranked,
        quad,
        adjusted_log_curve(limit, pi_x, table, "scale"),
        adjusted_log_curve(limit, pi_x, table, "shift"),
        total,
    )


# ------------------------------------------------------------- Monte Carlo

def _trial_classify(x: int) -> tuple[str, frozenset[str]]:
    """classify() without a table; exact trial division throughout."""
    flags = set()
    if x % 6 == 0:
        flags.add(FLAG_SIX)
    if is_prime_trial(x):
        klass = KLASS_PRIME
        if (x + 1) & x == 0:
            flags.add(FLAG_MERSENNE)
        e = (x - 1).bit_length() - 1
        if x >= 3 and x - 1 == 1 << e and e & (e - 1) == 0:
            flags.add(FLAG_FERMAT)
        if (x >= 2 and is_prime_trial(x - 2)) or is_prime_trial(x + 2):
            flags.add(FLAG_TWIN)
    elif x % 2 == 1 and x > 1:
        klass = KLASS_ODD_COMPOSITE
    else:
        klass = KLASS_EVEN_OR_UNIT
    return klass, frozenset(flags)


@dataclass(frozen=True)
class McReport:
    """Deterministic Monte Carlo run summary; same seed, same bytes."""

    seed: int
    samples: int
    bits: int
    power: int
    rng: str
    primes_found: int
    primes_expected: float
    ranked: RankedTable
    natural_cumulative: np.ndarray
    delta_series: np.ndarray        # natural minus ranked, index = rank (0..samples)
    theoretical_delta: np.ndarray   # linear minus density-curve expectation, same indexing
    error_mean: float               # of delta - theoretical^2/2 over ranks 1..samples
    error_stddev: float


@dataclass(frozen=True)
class TheoreticalDelta:
    delta: np.ndarray
    half_square: np.ndarray


def _pi_at_power(bits: int) -> int:
    if bits == 32:
        return PI_2_32
    if bits > 26:
        raise ValueError("prime count only tabulated for bits == 32 or bits <= 26")
    return sieve((1 << bits) + 1).pi(1 << bits)


def _theory_series(samples: int, bits: int) -> np.ndarray:
    span = float(1 << bits)
    pi_span = _pi_at_power(bits)
    ranks = np.arange(samples + 1, dtype=float)
    linear = ranks * (pi_span / span)
    xs = np.maximum(ranks / samples * span, 2.0)
    density = samples * li_values(xs) / span
    delta = linear - density
    delta[0] = 0.0
    return delta


def theoretical_delta(mc: "McReport") -> TheoreticalDelta:
    """Expected linear-vs-density gap per rank, raw and as delta^2/2."""
    delta = _theory_series(mc.samples, mc.bits)
    return TheoreticalDelta(delta, delta ** 2 / 2.0)


def monte_carlo(samples: int, *, bits: int = 32, t: int = 10,
                seed: int = DEFAULT_SEED) -> McReport:
    """Sample uniform `bits`-wide integers, score, rank and diff densities."""
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if not 2 <= bits <= 32:
        raise ValueError(f"bits must be in [2, 32], got {bits}")
    values = [v >> (32 - bits) for v in uniform32_stream(seed, samples)]
    known: dict[int, tuple[str, frozenset[str]]] = {}
    records = []
    for x in values:
        if x not in known:
            known[x] = _trial_classify(x)
        klass, flags = known[x]
        records.append(NumberRecord(x, bien_of_integer(x, bits, t), None, klass, flags))
    ranked = rank_records(records, "bien")
    by_value = sorted(records, key=lambda r: r.x)
    natural = np.cumsum([1 if r.is_prime else 0 for r in by_value])
    found = int(natural[-1])

    pad = lambda arr: np.concatenate([[0.0], np.asarray(arr, dtype=float)])
    natural_cum = pad(natural)
    ranked_cum = pad(ranked.cumulative_primes)
    delta = natural_cum - ranked_cum
    theory = _theory_series(samples, bits)
    err = delta[1:] - (theory[1:] ** 2) / 2.0
    mean, sd = _stats(err)
    for arr in (natural_cum, delta, theory):
        arr.setflags(write=False)
    expected = samples * _pi_at_power(bits) / float(1 << bits)
    return McReport(seed, samples, bits, t, RNG_ALGORITHM, found, expected,
                    ranked, natural_cum, delta, theory, mean, sd)


# ------------------------------------------------------ trinary density run

@dataclass(frozen=True)
class TriDensityResult:
    """Exhaustive trinary-score run with both cubic comparisons."""

    ranked: RankedTable
    cum_fit: FitResult        # cubic through origin on the ranked cumulative
    delta_series: np.ndarray  # natural cumulative minus ranked cumulative
    delta_fit: FitResult      # cubic with intercept on the delta series


def trientropy_density(limit: int = TRIDENSITY_CAP, *, trit_width: int | None = None,
                       table: PrimeTable | None = None, slow: bool = False) -> TriDensityResult:
    cap = TRIDENSITY_HARD_CAP if slow else TRIDENSITY_CAP
    if limit > cap:
        raise ResourceCapError(f"limit {limit} exceeds cap {cap}")
    if limit < 8:
        raise ValueError("population too small for a cubic comparison")
    if trit_width is None:
        trit_width = min_trit_width(limit - 1)
    if table is None:
        table = sieve(limit + 10)
    bits = max(2, (limit - 1).bit_length())
    ranked = rank(range(limit), "trien", bits=bits, trit_width=trit_width, table=table)
    cum_fit = fit_cubic(ranked.cumulative_primes, through_origin=True)
    natural = np.array([table.pi(x) for x in range(limit)], dtype=float)
    delta = natural - ranked.cumulative_primes
    delta.setflags(write=False)
    delta_fit = fit_cubic(delta, through_origin=False)
    return TriDensityResult(ranked, cum_fit, delta, delta_fit)


# ---------------------------------------------------------- interaction grid

@dataclass(frozen=True)
class TriangleStats:
    primes_above: int
    primes_diagonal: int
    primes_below: int
    six_above: int
    six_diagonal: int
    six_below: int


@dataclass(frozen=True)
class CollisionCell:
    bi_segment: int
    tri_segment: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class InteractionGrid:
    """16x16 joint segmentation by binary-score rank and trinary-score rank."""

    segments: int
    cells: tuple[tuple[tuple[int, ...], ...], ...]   # cells[b][t] -> members
    prime_counts: np.ndarray
    six_counts: np.ndarray
    collisions: tuple[CollisionCell, ...]
    triangles: TriangleStats
    chi_square_stat: float
    chi_square_p: float

    def cell(self, bi_segment: int, tri_segment: int) -> tuple[int, ...]:
        return self.cells[bi_segment][tri_segment]


def interaction_grid(limit: int = 256, *, bits: int = 8, trit_width: int = 9,
                     t: int = 1, segments: int = 16,
                     table: PrimeTable | None = None) -> InteractionGrid:
    if limit % segments:
        raise ValueError(f"{segments} segments do not divide population of {limit}")
    if table is None:
        table = sieve(limit + 10)
    records = build_records(range(limit), bits=bits, trit_width=trit_width, t=t, table=table)
    seg_size = limit // segments
    bi_rank = rank_records(records, "bien")
    tri_rank = rank_records(records, "trien")
    bi_seg = {r.x: i // seg_size for i, r in enumerate(bi_rank.entries)}
    tri_seg = {r.x: i // seg_size for i, r in enumerate(tri_rank.entries)}

    members: list[list[list[int]]] = [[[] for _ in range(segments)] for _ in range(segments)]
    primes = np.zeros((segments, segments), dtype=int)
    sixes = np.zeros((segments, segments), dtype=int)
    nonprime_cells = np.zeros(segments * segments, dtype=float)
    tri_stats = [0] * 6
    for r in records:
        b, s = bi_seg[r.x], tri_seg[r.x]
        members[b][s].append(r.x)
        is_six = FLAG_SIX in r.flags and r.x > 0
        if r.is_prime:
            primes[b][s] += 1
            tri_stats[0 if s > b else 1 if s == b else 2] += 1
        else:
            nonprime_cells[b * segments + s] += 1
        if is_six:
            sixes[b][s] += 1
            tri_stats[3 if s > b else 4 if s == b else 5] += 1

    collisions = tuple(
        CollisionCell(b, s, tuple(members[b][s]))
        for b in range(segments) for s in range(segments)
        if primes[b][s] and sixes[b][s]
    )
    expected = nonprime_cells.sum() / (segments * segments)
    stat = float(((nonprime_cells - expected) ** 2 / expected).sum())
    p = float(chi2.sf(stat, segments * segments - 1))
    primes.setflags(write=False)
    sixes.setflags(write=False)
    return InteractionGrid(
        segments,
        tuple(tuple(tuple(cell) for cell in row) for row in members),
        primes,
        sixes,
        collisions,
        TriangleStats(*tri_stats),
        stat,
        p,
    )


# ------------------------------------------------------------ figure-1 grid

@dataclass(frozen=True)
class GridCell:
    x: int
    colour: str
    is_prime: bool


@dataclass(frozen=True)
class NibbleGrid:
    """16x16 layout: rows by high nibble, columns by low nibble, both
    ordered by their own 4-bit score."""

    nibble_order: tuple[int, ...]
    cells: tuple[tuple[GridCell, ...], ...]


def figure_grid(table: PrimeTable | None = None, *, t: int = 1) -> NibbleGrid:
    """The 256-cell colour grid: value = high_nibble*16 + low_nibble."""
    if table is None:
        table = sieve(260)
    nib_score = [bien_of_integer(v, 4, t) for v in range(16)]
    order = tuple(sorted(range(16), key=lambda v: (nib_score[v], v)))
    rows = []
    for r in order:
        row = []
        for c in order:
            x = r * 16 + c
            row.append(GridCell(x, score_band(bien_of_integer(x, 8, t)), bool(table.flags[x])))
        rows.append(tuple(row))
    return NibbleGrid(order, tuple(rows))


# ------------------------------------------------------------ tribien cubics

@dataclass(frozen=True)
class CubicCheckpoint:
    x_max: int
    bits: int
    trit_width: int
    fit: FitResult
    fitted_end: float
    pi_x: int
    relative_error: float


def tribien_cubics(checkpoints: Sequence[int], *, t: int = 1,
                   table: PrimeTable | None = None,
                   slow: bool = False) -> tuple[CubicCheckpoint, ...]:
    """Per checkpoint X: rank [0, X) by combined score, fit a cubic through
    the cumulative prime curve and compare its endpoint with pi(X)."""
    if list(checkpoints) != sorted(checkpoints):
        raise ValueError("checkpoints must be sorted ascending")
    cap = CUBICS_HARD_CAP if slow else CUBICS_CAP
    if checkpoints and checkpoints[-1] > cap:
        raise ResourceCapError(f"checkpoint {checkpoints[-1]} exceeds cap {cap}")
    if table is None:
        table = sieve((checkpoints[-1] if checkpoints else 256) + 10)
    out = []
    for x_max in checkpoints:
        bits = max(2, (x_max - 1).bit_length())
        width = min_trit_width(x_max - 1)
        ranked = rank(range(x_max), "tribien", bits=bits, trit_width=width, t=t, table=table)
        fit = fit_cubic(ranked.cumulative_primes, through_origin=True)
        end = float(fit.predict(x_max))
        pi_x = table.pi(x_max - 1)
        out.append(CubicCheckpoint(x_max, bits, width, fit, end, pi_x,
                                   (end - pi_x) / pi_x if pi_x else math.inf))
    return tuple(out)


# ----------------------------------------------------------------- von Koch

def von_koch_curve(x: float, *, log_inside_root: bool = False) -> float:
    """Classical error-bound shape: sqrt(x)*ln(x), or sqrt(x*ln x) under the flag."""
    if x < 2:
        raise ValueError(f"domain starts at 2, got {x}")
    if log_inside_root:
        return math.sqrt(x * math.log(x))
    return math.sqrt(x) * math.log(x)
