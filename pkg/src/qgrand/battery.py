"""Statistical randomness battery over raw byte streams.

Tests: byte frequency, non-overlapping 5-permutation, and GF(2) binary rank
for 31x31 and 32x32 matrices.  Every test reduces to a chi-square statistic
whose p-value is the left tail P(X <= statistic), so statistics far above
expectation give p near 1 and far below give p near 0; both extremes are
suspect.  Results with p outside [0.001, 0.999] are flagged.

Input framing: 32-bit words are 4 consecutive bytes, first byte most
significant.  All tests are pure functions of their input bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Mapping, Sequence

import numpy as np

SUSPECT_LOW = 0.001
SUSPECT_HIGH = 0.999

# auto-sized runs refuse to shrink below these (keeps expected cell counts sane)
MIN_MATRICES = 2000
MIN_TUPLES = 1200

_FACTORIALS_4 = (24, 6, 2, 1)


class NonConvergence(RuntimeError):
    """Iteration cap hit in the incomplete gamma evaluation; an internal bug,
    not a property of the input."""


class InsufficientInput(ValueError):
    def __init__(self, needed: int, got: int):
        super().__init__(f"need {needed} input bytes, got {got}")
        self.needed = needed
        self.got = got


@dataclass(frozen=True)
class TestResult:
    test_name: str
    statistic: float
    degrees_of_freedom: int
    p_value: float
    categories: list[tuple[str, int, float]]  # (label, observed, expected)

    @property
    def suspect(self) -> bool:
        return not SUSPECT_LOW <= self.p_value <= SUSPECT_HIGH


_ITMAX = 600
_EPS = 1e-15


def chisq_cdf(statistic: float, df: int) -> float:
    """Left-tail chi-square probability P(X <= statistic) for df degrees of
    freedom, i.e. the regularized lower incomplete gamma P(df/2, statistic/2).

    Series expansion below the a+1 crossover, Lentz continued fraction above;
    absolute error below 1e-6 across the supported range.
    """
    if statistic < 0:
        raise ValueError(f"statistic {statistic} < 0")
    if df < 1:
        raise ValueError(f"df {df} < 1")
    a = df / 2.0
    x = statistic / 2.0
    if x == 0.0:
        return 0.0
    log_prefix = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1.0:
        term = 1.0 / a
        total = term
        denom = a
        for _ in range(_ITMAX):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * _EPS:
                return min(1.0, total * math.exp(log_prefix))
        raise NonConvergence(f"series stalled at a={a}, x={x}")
    # Lentz's method for the upper-tail continued fraction Q(a, x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return max(0.0, 1.0 - math.exp(log_prefix) * h)
    raise NonConvergence(f"continued fraction stalled at a={a}, x={x}")


@dataclass(frozen=True)
class BitMatrix:
    """An r x c matrix over GF(2); row i is the integer row_bits[i], with bit
    (cols-1-j) holding column j (leftmost column is the most significant bit)."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("BitMatrix needs rows, cols >= 1")
        if len(self.row_bits) != self.rows:
            raise ValueError(f"expected {self.rows} row values, got {len(self.row_bits)}")

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[int]]) -> "BitMatrix":
        rows = len(grid)
        cols = len(grid[0])
        bits = []
        for row in grid:
            value = 0
            for cell in row:
                value = (value << 1) | (1 if cell else 0)
            bits.append(value)
        return cls(rows, cols, tuple(bits))

    def bit(self, i: int, j: int) -> int:
        return (self.row_bits[i] >> (self.cols - 1 - j)) & 1

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.cols):
            value = 0
            for i in range(self.rows):
                value = (value << 1) | self.bit(i, j)
            cols.append(value)
        return BitMatrix(self.cols, self.rows, tuple(cols))


def _rank_of_int_rows(rows) -> int:
    # Gaussian elimination with whole rows XORed as integers; each row is
    # reduced against the pivot held for its current leading bit.
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        row = int(row)
        while row:
            lead = row.bit_length() - 1
            pivot = pivots.get(lead)
            if pivot is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= pivot
    return rank


def gf2_rank(m: BitMatrix) -> int:
    """Rank of the matrix over GF(2)."""
    return _rank_of_int_rows(m.row_bits)


def rank_class_probabilities(n: int) -> tuple[float, float, float, float]:
    """P(rank = n), P(n-1), P(n-2), and P(rank <= n-3) for a uniform random
    n x n bit matrix, via the standard product formula."""
    if n < 10:
        raise ValueError(f"n={n} too small, need n >= 10")

    def prob(r: int) -> float:
        result = 2.0 ** (r * (2 * n - r) - n * n)
        for i in range(r):
            result *= (1.0 - 2.0 ** (i - n)) ** 2 / (1.0 - 2.0 ** (i - r))
        return result

    full = prob(n)
    full_m1 = prob(n - 1)
    full_m2 = prob(n - 2)
    return full, full_m1, full_m2, 1.0 - full - full_m1 - full_m2


def _chi_square(observed: Sequence[float], expected: Sequence[float]) -> float:
    return float(sum((o - e) ** 2 / e for o, e in zip(observed, expected)))


def _words(data: bytes, count: int) -> np.ndarray:
    return np.frombuffer(data, dtype=">u4", count=count)


def binary_rank_test(data: bytes, size: int = 32, n_matrices: int = 40000) -> TestResult:
    """Rank-class chi-square over n_matrices GF(2) matrices built from the
    input words: 32x32 uses all 32 bits of 32 consecutive words, 31x31 the
    31 most significant bits of 31 words.  df = 3."""
    if size not in (31, 32):
        raise ValueError(f"size must be 31 or 32, got {size}")
    if n_matrices < 1:
        raise ValueError("n_matrices must be >= 1")
    needed = n_matrices * size * 4
    if len(data) < needed:
        raise InsufficientInput(needed, len(data))
    words = _words(data, n_matrices * size).reshape(n_matrices, size)
    if size == 31:
        words = words >> 1
    counts = [0, 0, 0, 0]
    for block in words.tolist():
        deficit = size - _rank_of_int_rows(block)
        counts[min(deficit, 3)] += 1
    probs = rank_class_probabilities(size)
    expected = [p * n_matrices for p in probs]
    statistic = _chi_square(counts, expected)
    labels = ("full", "full-1", "full-2", "rest")
    return TestResult(
        test_name=f"rank_{size}x{size}",
        statistic=statistic,
        degrees_of_freedom=3,
        p_value=chisq_cdf(statistic, 3),
        categories=list(zip(labels, counts, expected)),
    )


def permutation_index(values: Sequence[int]) -> int:
    """Lehmer index (0..119) of the ordering of a 5-tuple; on ties the
    earlier element counts as smaller."""
    index = 0
    for i in range(4):
        smaller_later = sum(1 for j in range(i + 1, 5) if values[j] < values[i])
        index += smaller_later * _FACTORIALS_4[i]
    return index


def permutation_test(data: bytes, n_tuples: int = 1_000_000) -> TestResult:
    """Chi-square of the ordering classes of disjoint 5-tuples of words
    against the uniform 120-way expectation.  df = 119.

    Non-overlapping variant: tuples are disjoint, so the classes are
    independent and the plain chi-square applies without covariance
    corrections."""
    if n_tuples < 1:
        raise ValueError("n_tuples must be >= 1")
    needed = n_tuples * 5 * 4
    if len(data) < needed:
        raise InsufficientInput(needed, len(data))
    words = _words(data, n_tuples * 5).reshape(n_tuples, 5)
    # strict j>i comparisons encode the earlier-is-smaller tie rule
    smaller = words[:, :, None] > words[:, None, :]
    later = np.triu(np.ones((5, 5), dtype=bool), k=1)
    lehmer = (smaller & later).sum(axis=2)
    indices = lehmer[:, 0] * 24 + lehmer[:, 1] * 6 + lehmer[:, 2] * 2 + lehmer[:, 3]
    counts = np.bincount(indices, minlength=120)
    expected = [n_tuples / 120.0] * 120
    statistic = _chi_square(counts.tolist(), expected)
    return TestResult(
        test_name="perm5",
        statistic=statistic,
        degrees_of_freedom=119,
        p_value=chisq_cdf(statistic, 119),
        categories=[(str(i), int(counts[i]), expected[i]) for i in range(120)],
    )


def frequency_test(data: bytes) -> TestResult:
    """Chi-square over the 256 byte-value counts.  df = 255."""
    if len(data) < 25600:
        raise InsufficientInput(25600, len(data))
    counts = np.bincount(np.frombuffer(data, dtype=np.uint8), minlength=256)
    expected = [len(data) / 256.0] * 256
    statistic = _chi_square(counts.tolist(), expected)
    return TestResult(
        test_name="frequency",
        statistic=statistic,
        degrees_of_freedom=255,
        p_value=chisq_cdf(statistic, 255),
        categories=[(f"0x{i:02x}", int(counts[i]), expected[i]) for i in range(256)],
    )


@dataclass(frozen=True)
class BatteryEntry:
    source: str
    test_name: str
    result: TestResult | None = None
    error: InsufficientInput | None = None


def run_battery(
    sources: Mapping[str, bytes],
    sink: IO[str] | None = None,
    n_matrices: int | None = None,
    n_tuples: int | None = None,
) -> list[BatteryEntry]:
    """Run all tests on each named byte source.

    When a count is None it is auto-sized: the Diehard-style default, shrunk
    to what the input supports, but never below MIN_MATRICES / MIN_TUPLES
    (shorter inputs get an insufficient-input row instead of a junk
    statistic).  Explicit counts are honored strictly.  If `sink` is given,
    the rendered report and the machine-readable lines are written to it.
    """
    entries: list[BatteryEntry] = []
    for name, data in sources.items():
        plan = [
            ("frequency", lambda d: frequency_test(d)),
            ("perm5", lambda d: permutation_test(d, _fit_tuples(d, n_tuples))),
            ("rank_31x31", lambda d: binary_rank_test(d, 31, _fit_matrices(d, 31, n_matrices))),
            ("rank_32x32", lambda d: binary_rank_test(d, 32, _fit_matrices(d, 32, n_matrices))),
        ]
        for test_name, runner in plan:
            try:
                entries.append(BatteryEntry(name, test_name, result=runner(data)))
            except InsufficientInput as exc:
                entries.append(BatteryEntry(name, test_name, error=exc))
    if sink is not None:
        sink.write(render_report(entries))
        sink.write("\n")
        sink.write(render_machine(entries))
    return entries


def _fit_tuples(data: bytes, requested: int | None) -> int:
    if requested is not None:
        return requested
    fit = min(1_000_000, len(data) // 20)
    return fit if fit >= MIN_TUPLES else MIN_TUPLES


def _fit_matrices(data: bytes, size: int, requested: int | None) -> int:
    if requested is not None:
        return requested
    fit = min(40000, len(data) // (4 * size))
    return fit if fit >= MIN_MATRICES else MIN_MATRICES


def render_report(entries: Sequence[BatteryEntry]) -> str:
    """Plain-text table, one row per test, one p-value column per source."""
    sources = list(dict.fromkeys(e.source for e in entries))
    tests = list(dict.fromkeys(e.test_name for e in entries))
    by_key = {(e.source, e.test_name): e for e in entries}
    header = ["Test Name"] + [f"{s} (p-value)" for s in sources]
    rows = [header]
    for test in tests:
        row = [test]
        for source in sources:
            entry = by_key.get((source, test))
            if entry is None:
                row.append("-")
            elif entry.error is not None:
                row.append(f"insufficient input (need {entry.error.needed}, got {entry.error.got})")
            else:
                r = entry.result
                flag = "  [suspect]" if r.suspect else ""
                row.append(f"{r.p_value:.6f}  chi2({r.degrees_of_freedom}) = {r.statistic:.3f}{flag}")
        rows.append(row)
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if idx == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_machine(entries: Sequence[BatteryEntry]) -> str:
    """Line-oriented form: test<TAB>source<TAB>statistic<TAB>df<TAB>p."""
    lines = []
    for e in entries:
        if e.result is not None:
            r = e.result
            lines.append(
                f"{r.test_name}\t{e.source}\t{r.statistic:.6f}\t{r.degrees_of_freedom}\t{r.p_value:.6f}"
            )
        else:
            lines.append(
                f"{e.test_name}\t{e.source}\tNA\tNA\tinsufficient:need={e.error.needed},got={e.error.got}"
            )
    return "\n".join(lines) + ("\n" if lines else "")
