"""Pivot selection strategies.

Candidates are the unit entries of the active region when any exist, and
otherwise the entries of minimal nonzero magnitude. Metric strategies score
each candidate from the row and column metrics of its position; the smallest
score wins and ties go to the earliest candidate in row-major order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .exactmat import ExactMatrix, MetricKind, vec_metric

BASES = ("sgj", "first", "max", "metric")
FAMILIES = ("R", "C", "plus", "times", "timesx")

# +_2 compares sqrt(R) + sqrt(C); these are held as fixed-point integers with
# this many fractional bits and compared with a relative tolerance.
_SQRT_FRAC_BITS = 52
_PLUS2_EPS_DENOM = 10**12  # relative tolerance 1e-12


@dataclass(frozen=True)
class PivotStrategy:
    base: str = "metric"
    family: str | None = "times"
    k: MetricKind | None = MetricKind.ONE

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"unknown base rule {self.base!r}")
        if self.base == "metric":
            if self.family not in FAMILIES or self.k is None:
                raise ValueError("metric strategies need a family and a metric k")
            object.__setattr__(self, "k", MetricKind.parse(self.k))
        elif self.family is not None or self.k is not None:
            raise ValueError(f"base rule {self.base!r} takes no family or k")

    @classmethod
    def sgj(cls) -> "PivotStrategy":
        return cls("sgj", None, None)

    @classmethod
    def first_nonzero(cls) -> "PivotStrategy":
        return cls("first", None, None)

    @classmethod
    def max_magnitude(cls) -> "PivotStrategy":
        return cls("max", None, None)

    @classmethod
    def markowitz(cls) -> "PivotStrategy":
        return cls("metric", "timesx", MetricKind.ZERO)

    @classmethod
    def metric(cls, family: str, k) -> "PivotStrategy":
        return cls("metric", family, MetricKind.parse(k))

    @classmethod
    def parse(cls, text: str) -> "PivotStrategy":
        """Parse ``sgj``, ``first``, ``max``, ``markowitz`` or ``FAMILY:K``."""
        text = text.strip()
        name, _, k = text.partition(":")
        if name in ("sgj", "first", "max"):
            if k:
                raise ValueError(f"strategy {name!r} takes no metric")
            return cls(name, None, None)
        if name == "markowitz":
            if k:
                raise ValueError("markowitz is fixed to k=0")
            return cls.markowitz()
        if name in FAMILIES:
            if not k:
                raise ValueError(f"strategy {name!r} needs a metric, e.g. {name}:1")
            return cls.metric(name, k)
        raise ValueError(f"unknown strategy {text!r}")

    def __str__(self) -> str:
        if self.base != "metric":
            return self.base
        return f"{self.family}:{self.k}"


@dataclass(frozen=True)
class PivotChoice:
    row: int
    col: int
    value: int
    score: object = None

    @property
    def pos(self) -> tuple[int, int]:
        return self.row, self.col


@dataclass(frozen=True)
class PivotMetrics:
    R: int
    C: int
    R_excl: int
    C_excl: int


def _rows(M):
    return M.rows if isinstance(M, ExactMatrix) else M


def _excluded(total: int, v: int, k: MetricKind) -> int:
    if k is MetricKind.ZERO:
        return total - 1
    if k is MetricKind.ONE:
        return total - abs(v)
    return total - v * v  # k = 2


def _max_excluding(values, skip: int) -> int:
    best = 0
    for idx, x in enumerate(values):
        if idx != skip and x:
            x = abs(x)
            if x > best:
                best = x
    return best


def pivot_metrics(M, pos: tuple[int, int], k, r0: int = 0, c0: int = 0) -> PivotMetrics:
    """|v|^R, |v|^C and their pivot-excluding variants for the entry at ``pos``.

    Metrics are taken over the active region a[r0:, c0:]; k=2 values are
    squared sums.
    """
    a = _rows(M)
    s, t = pos
    v = a[s][t]
    if not v:
        raise ValueError(f"entry at {pos} is zero and cannot be a pivot")
    k = MetricKind.parse(k)
    row = a[s][c0:]
    col = [a[i][t] for i in range(r0, len(a))]
    R = vec_metric(row, k)
    C = vec_metric(col, k)
    if k is MetricKind.INF:
        Rx = _max_excluding(row, t - c0)
        Cx = _max_excluding(col, s - r0)
    else:
        Rx = _excluded(R, v, k)
        Cx = _excluded(C, v, k)
    return PivotMetrics(R, C, Rx, Cx)


def _fixed_sqrt(x: int) -> int:
    return math.isqrt(x << (2 * _SQRT_FRAC_BITS))


def _plus2_less(a: int, b: int) -> bool:
    """a < b beyond the relative tolerance (both fixed-point sqrt sums)."""
    return (b - a) * _PLUS2_EPS_DENOM > max(a, b)


def candidate_positions(M, r0: int = 0, c0: int = 0, scan=None) -> list[tuple[int, int]]:
    """Unit positions if any, else positions of minimal nonzero magnitude."""
    if scan is None:
        scan = kernels.scan_region(_rows(M), r0, c0)
    return scan[3]


def select_pivot(M, strategy: PivotStrategy, r0: int = 0, c0: int = 0, scan=None) -> PivotChoice | None:
    """Choose a pivot in a[r0:, c0:]; None when the region is zero.

    ``scan`` may pass a precomputed ``kernels.scan_region`` result for the
    same region.
    """
    a = _rows(M)
    if scan is None:
        scan = kernels.scan_region(a, r0, c0)
    max_abs, nnz, min_abs, positions = scan
    if not nnz:
        return None
    base = strategy.base
    if base == "first":
        for i in range(r0, len(a)):
            row = a[i]
            for j in range(c0, len(row)):
                if row[j]:
                    return PivotChoice(i, j, row[j])
    if base == "max":
        for i in range(r0, len(a)):
            row = a[i]
            for j in range(c0, len(row)):
                if abs(row[j]) == max_abs:
                    return PivotChoice(i, j, row[j], max_abs)
    if base == "sgj" or len(positions) == 1:
        i, j = positions[0]
        return PivotChoice(i, j, a[i][j], min_abs)
    return _best_by_metric(a, strategy, r0, c0, positions)


def _best_by_metric(a, strategy: PivotStrategy, r0: int, c0: int, positions) -> PivotChoice:
    fam = strategy.family
    k = strategy.k
    rowm, colm = kernels.line_metrics(a, r0, c0, int(k))
    need_excl = fam == "timesx"
    best = None
    best_score = None
    for i, j in positions:
        v = a[i][j]
        R = rowm[i - r0]
        C = colm[j - c0]
        if need_excl:
            if k is MetricKind.INF:
                R = _max_excluding(a[i][c0:], j - c0)
                C = _max_excluding([a[ii][j] for ii in range(r0, len(a))], i - r0)
            else:
                R = _excluded(R, v, k)
                C = _excluded(C, v, k)
            score = R * C
        elif fam == "R":
            score = R
        elif fam == "C":
            score = C
        elif fam == "times":
            score = R * C
        elif k is MetricKind.TWO:  # plus with square roots
            score = _fixed_sqrt(R) + _fixed_sqrt(C)
            if best is None or _plus2_less(score, best_score):
                best, best_score = (i, j), score
            continue
        else:
            score = R + C
        if best is None or score < best_score:
            best, best_score = (i, j), score
    i, j = best
    return PivotChoice(i, j, a[i][j], best_score)
