"""Exact integer matrices, vector metrics and elementary operations.

Entries are Python ints, so arithmetic never rounds or overflows; the
``word_size_bits`` accounting elsewhere only observes growth.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from . import kernels


class MetricKind(IntEnum):
    """The exponent k of the vector metric |c|_k; INF is the max-norm."""

    ZERO = 0
    ONE = 1
    TWO = 2
    INF = kernels.INF

    @classmethod
    def parse(cls, text) -> "MetricKind":
        if isinstance(text, MetricKind):
            return text
        key = str(text).strip().lower()
        table = {"0": cls.ZERO, "1": cls.ONE, "2": cls.TWO, "inf": cls.INF, "oo": cls.INF, "-1": cls.INF}
        try:
            return table[key]
        except KeyError:
            raise ValueError(f"metric must be one of 0, 1, 2, inf; got {text!r}") from None

    def __str__(self) -> str:
        return "inf" if self is MetricKind.INF else str(int(self))


def bit_length(v: int) -> int:
    return abs(v).bit_length()


def vec_metric(v: Sequence[int], k) -> int:
    """|v|_k as an exact integer.

    k=0 counts nonzeros, k=1 sums magnitudes, k=inf takes the largest
    magnitude. For k=2 the squared norm is returned; it orders vectors the
    same way the norm does and stays integral.
    """
    if not len(v):
        raise ValueError("vec_metric needs a non-empty vector")
    k = MetricKind.parse(k)
    if k is MetricKind.ZERO:
        return sum(1 for x in v if x)
    if k is MetricKind.ONE:
        return sum(abs(x) for x in v)
    if k is MetricKind.TWO:
        return sum(x * x for x in v)
    return max(abs(x) for x in v)


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    return operator.index(x)


class ExactMatrix:
    """Dense row-major matrix of Python ints with at least one row and column."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        data = [[_as_int(x) for x in r] for r in rows]
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be at least 1x1")
        width = len(data[0])
        for r in data:
            if len(r) != width:
                raise ValueError("all rows must have the same length")
        self.rows = data

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def diagonal(cls, m: int, n: int, diag: Sequence[int]) -> "ExactMatrix":
        if len(diag) > min(m, n):
            raise ValueError("diagonal longer than min(m, n)")
        M = cls.zeros(m, n)
        for i, d in enumerate(diag):
            M.rows[i][i] = d
        return M

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, pos):
        i, j = pos
        return self.rows[i][j]

    def __setitem__(self, pos, value):
        i, j = pos
        self.rows[i][j] = _as_int(value)

    def __eq__(self, other):
        if isinstance(other, ExactMatrix):
            return self.rows == other.rows
        if isinstance(other, list):
            return self.rows == other
        return NotImplemented

    def __repr__(self):
        return f"ExactMatrix({self.rows!r})"

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix(matmul(self.rows, as_rows(other)))

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows)

    def tolist(self) -> list[list[int]]:
        return [r[:] for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(transpose(self.rows))

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def row(self, i: int) -> list[int]:
        return self.rows[i][:]

    def col(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]

    def nnz(self) -> int:
        return sum(1 for r in self.rows for x in r if x)

    def density(self) -> float:
        m, n = self.shape
        return self.nnz() / (m * n)

    def max_abs(self) -> int:
        return max(abs(x) for r in self.rows for x in r)

    def max_bits(self) -> int:
        return self.max_abs().bit_length()

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Row i of the result is row row_perm[i]; likewise for columns."""
        return ExactMatrix([[self.rows[i][j] for j in col_perm] for i in row_perm])


def as_rows(A) -> list[list[int]]:
    """Fresh list-of-rows copy of an ExactMatrix or nested sequence."""
    if isinstance(A, ExactMatrix):
        return A.tolist()
    return [[_as_int(x) for x in r] for r in A]


def transpose(rows: list[list[int]]) -> list[list[int]]:
    return [list(c) for c in zip(*rows)]


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {len(A)}x{len(A[0])} @ {len(B)}x{len(B[0])}")
    Bt = transpose(B)
    return [[sum(x * y for x, y in zip(r, c)) for c in Bt] for r in A]


def identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def row_l1(M, i: int) -> int:
    """Sum of absolute values of row i."""
    rows = M.rows if isinstance(M, ExactMatrix) else M
    if not 0 <= i < len(rows):
        raise IndexError(f"row index {i} out of range for {len(rows)} rows")
    return sum(abs(x) for x in rows[i])


# -- sparse form ------------------------------------------------------------


@dataclass
class SparseMatrix:
    """Coordinate form: ``entries`` maps (row, col) to a nonzero value."""

    nrows: int
    ncols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.nrows < 1 or self.ncols < 1:
            raise ValueError("matrix dimensions must be at least 1x1")
        for (i, j), v in list(self.entries.items()):
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
            if not v:
                del self.entries[(i, j)]

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[tuple[int, int, int]]):
        entries = {}
        for i, j, v in triplets:
            if (i, j) in entries:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            entries[(i, j)] = _as_int(v)
        return cls(nrows, ncols, entries)

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(i, j, v) for (i, j), v in sorted(self.entries.items())]

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def density(self) -> float:
        return self.nnz / (self.nrows * self.ncols)


def to_dense(S: SparseMatrix) -> ExactMatrix:
    M = ExactMatrix.zeros(S.nrows, S.ncols)
    for (i, j), v in S.entries.items():
        M.rows[i][j] = v
    return M


def to_sparse(M: ExactMatrix, threshold: float | None = None) -> SparseMatrix | None:
    """Coordinate form of M.

    With ``threshold`` set, returns None when M is denser than the threshold,
    signalling that the dense form should be kept.
    """
    S = SparseMatrix(M.nrows, M.ncols, {(i, j): v for i, r in enumerate(M.rows) for j, v in enumerate(r) if v})
    if threshold is not None and S.density() > threshold:
        return None
    return S


# -- elementary operations with transform accumulation ------------------------


class Workspace:
    """A working matrix plus optional accumulators P, Q and Q^-1.

    Invariant while transforms are attached: P @ A_original @ Q == a and
    Q @ Qinv == I. Row operations act on ``a`` and P; column operations act on
    ``a``, Q (on the right) and Qinv (inverse operation on the left).
    """

    def __init__(self, A, transforms: bool = False):
        self.a = as_rows(A)
        self.m = len(self.a)
        self.n = len(self.a[0]) if self.a else 0
        if transforms:
            self.P = identity_rows(self.m)
            self.Q = identity_rows(self.n)
            self.Qinv = identity_rows(self.n)
        else:
            self.P = self.Q = self.Qinv = None

    @property
    def transforms(self) -> bool:
        return self.P is not None

    # row operations; ``start`` skips columns known to be zero in both rows
    def row_negate(self, i: int, start: int = 0) -> None:
        r = self.a[i]
        r[start:] = [-x for x in r[start:]]
        if self.P is not None:
            self.P[i] = [-x for x in self.P[i]]

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.P is not None:
            self.P[i], self.P[j] = self.P[j], self.P[i]

    def row_addmul(self, i: int, j: int, q: int, start: int = 0) -> None:
        """row_i += q * row_j."""
        if i == j:
            raise ValueError("row_addmul needs distinct rows")
        if not q:
            return
        kernels.axpy(self.a[i], self.a[j], q, start)
        if self.P is not None:
            kernels.axpy(self.P[i], self.P[j], q, 0)

    # column operations; ``start`` skips rows known to be zero in both columns
    def col_negate(self, j: int, start: int = 0) -> None:
        for r in self.a[start:]:
            r[j] = -r[j]
        if self.Q is not None:
            for r in self.Q:
                r[j] = -r[j]
            self.Qinv[j] = [-x for x in self.Qinv[j]]

    def col_swap(self, j: int, k: int, start: int = 0) -> None:
        if j == k:
            return
        for r in self.a[start:]:
            r[j], r[k] = r[k], r[j]
        if self.Q is not None:
            for r in self.Q:
                r[j], r[k] = r[k], r[j]
            Qi = self.Qinv
            Qi[j], Qi[k] = Qi[k], Qi[j]

    def col_addmul(self, j: int, k: int, q: int, start: int = 0) -> None:
        """col_j += q * col_k."""
        if j == k:
            raise ValueError("col_addmul needs distinct columns")
        if not q:
            return
        for r in self.a[start:]:
            c = r[k]
            if c:
                r[j] += q * c
        if self.Q is not None:
            for r in self.Q:
                c = r[k]
                if c:
                    r[j] += q * c
            # inverse op on the left: row_k(Qinv) -= q * row_j(Qinv)
            kernels.axpy(self.Qinv[k], self.Qinv[j], -q, 0)

    def col_addmul_vector(self, t: int, qvec: list[int], start_row: int = 0, start_col: int = 0) -> None:
        """col_j += qvec[j] * col_t for every j at once (qvec[t] must be 0).

        These operations commute, so they are applied as one rank-1 update.
        """
        for r in self.a[start_row:]:
            c = r[t]
            if c:
                kernels.axpy(r, qvec, c, start_col)
        if self.Q is not None:
            for r in self.Q:
                c = r[t]
                if c:
                    kernels.axpy(r, qvec, c, 0)
            Qi = self.Qinv
            row_t = Qi[t]
            for j, q in enumerate(qvec):
                if q:
                    kernels.axpy(row_t, Qi[j], -q, 0)

    def matrix(self) -> ExactMatrix:
        return ExactMatrix(self.a)


def elem_row_op(ws: Workspace, op: tuple) -> Workspace:
    """Apply ("negate", i), ("swap", i, j) or ("add", i, j, q): row_i += q*row_j."""
    kind = op[0]
    if kind == "negate":
        ws.row_negate(op[1])
    elif kind == "swap":
        ws.row_swap(op[1], op[2])
    elif kind == "add":
        ws.row_addmul(op[1], op[2], op[3])
    else:
        raise ValueError(f"unknown row operation {kind!r}")
    return ws


def elem_col_op(ws: Workspace, op: tuple) -> Workspace:
    """Column mirror of :func:`elem_row_op`; ("add", j, k, q) is col_j += q*col_k."""
    kind = op[0]
    if kind == "negate":
        ws.col_negate(op[1])
    elif kind == "swap":
        ws.col_swap(op[1], op[2])
    elif kind == "add":
        ws.col_addmul(op[1], op[2], op[3])
    else:
        raise ValueError(f"unknown column operation {kind!r}")
    return ws
