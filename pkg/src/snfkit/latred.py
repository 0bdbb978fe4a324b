"""Row lattice reduction.

Two reducers: a cheap pairwise heuristic that adds or subtracts one row from
another whenever that shrinks its L1 norm, and MLLL, an LLL variant that
accepts linearly dependent input and turns dependencies into zero vectors.
Both preserve the integer row lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .exactmat import ExactMatrix, Workspace, as_rows, identity_rows, transpose

DEFAULT_DELTA = Fraction(3, 4)


def _l1(v) -> int:
    return sum(x if x >= 0 else -x for x in v)


def pairwise_sweep(rows: list, mirror: list | None = None, start: int = 0) -> int:
    """Pairwise L1 reduction of ``rows`` in place; returns the number of sweeps.

    Ordered pairs are visited in (target, source) lexicographic order and the
    sweep repeats until nothing changes. ``mirror`` rows receive the same
    operations (for transform accumulation). Entries before ``start`` must be
    zero in every row; they are skipped by the updates.
    """
    norms = [_l1(r) for r in rows]
    passes = 0
    changed = True
    while changed:
        changed = False
        passes += 1
        for i, r in enumerate(rows):
            for j, s in enumerate(rows):
                if i == j or not norms[j] or not norms[i]:
                    continue
                plus, minus = kernels.l1_pair(r, s)
                if plus < norms[i]:
                    q, norms[i] = 1, plus
                elif minus < norms[i]:
                    q, norms[i] = -1, minus
                else:
                    continue
                kernels.axpy(r, s, q, start)
                if mirror is not None:
                    kernels.axpy(mirror[i], mirror[j], q, 0)
                changed = True
    return passes


@dataclass
class ReduceOutcome:
    rows: list[list[int]]
    dependent_rows_removed: int
    passes: int
    # with transforms: U @ input == rows followed by the removed zero rows
    transform: list[list[int]] | None = None

    @property
    def matrix(self) -> ExactMatrix | None:
        return ExactMatrix(self.rows) if self.rows else None


def pairwise_row_reduce(M, transform: bool = False) -> ReduceOutcome:
    """Reduce rows pairwise to a fixpoint, dropping rows that become zero.

    Rows that are zero on input are dropped too, but only rows that turn
    zero during reduction count as dependent.
    """
    rows = as_rows(M)
    U = identity_rows(len(rows)) if transform else None
    zero_before = sum(1 for r in rows if not any(r))
    passes = pairwise_sweep(rows, U)
    keep = [i for i, r in enumerate(rows) if any(r)]
    drop = [i for i in range(len(rows)) if not any(rows[i])]
    out_T = [U[i] for i in keep + drop] if transform else None
    return ReduceOutcome([rows[i] for i in keep], len(drop) - zero_before, passes, out_T)


@dataclass
class MlllResult:
    basis: list[list[int]]
    dependencies: int
    # T @ input == basis followed by `dependencies` zero rows (rows of T for
    # the zero part span the left kernel); Tinv is its inverse
    transform: list[list[int]] | None = None
    transform_inv: list[list[int]] | None = None
    swaps: int = 0

    @property
    def rank(self) -> int:
        return len(self.basis)


def mlll(M, delta=DEFAULT_DELTA, transform: bool = False, inverse: bool = False) -> MlllResult:
    """LLL reduction of the row lattice of M, tolerating dependent rows.

    Gram-Schmidt data is kept in exact rationals. Zero input rows count as
    dependencies.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must satisfy 1/4 < delta < 1")
    src = as_rows(M)
    m = len(src)
    track = transform or inverse
    b, U, W = [], [], []  # vectors, their transform rows, inverse columns
    kernel_U, kernel_W = [], []
    eye = identity_rows(m)
    for i, r in enumerate(src):
        if any(r):
            b.append(r)
            U.append(eye[i])
            W.append(list(eye[i]))
        else:
            kernel_U.append(eye[i])
            kernel_W.append(list(eye[i]))
    deps = len(kernel_U)

    bstar: list = []
    B: list = []
    mu: list = []

    def gs_row(i):
        v = [Fraction(x) for x in b[i]]
        row_mu = [Fraction(0)] * i
        for j in range(i):
            if B[j]:
                c = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / B[j]
                row_mu[j] = c
                if c:
                    v = [x - c * y for x, y in zip(v, bstar[j])]
        bs = v
        return row_mu, bs, sum(x * x for x in bs)

    def set_gs(i):
        row_mu, bs, Bi = gs_row(i)
        del mu[i:], bstar[i:], B[i:]
        mu.append(row_mu)
        bstar.append(bs)
        B.append(Bi)

    swaps = 0
    if b:
        set_gs(0)
    k = 1
    while k < len(b):
        set_gs(k)
        bk = b[k]
        for j in range(k - 1, -1, -1):
            c = mu[k][j]
            if abs(c) > Fraction(1, 2):
                q = round(c)
                kernels.axpy(bk, b[j], -q, 0)
                if track:
                    kernels.axpy(U[k], U[j], -q, 0)
                    kernels.axpy(W[j], W[k], q, 0)
                for t in range(j):
                    mu[k][t] -= q * mu[j][t]
                mu[k][j] = c - q
        if not any(bk):
            kernel_U.append(U.pop(k))
            kernel_W.append(W.pop(k))
            b.pop(k)
            del mu[k:], bstar[k:], B[k:]
            deps += 1
            continue
        c = mu[k][k - 1]
        if B[k] < (delta - c * c) * B[k - 1]:
            b[k], b[k - 1] = b[k - 1], b[k]
            if track:
                U[k], U[k - 1] = U[k - 1], U[k]
                W[k], W[k - 1] = W[k - 1], W[k]
            swaps += 1
            del mu[k - 1:], bstar[k - 1:], B[k - 1:]
            if k == 1:
                set_gs(0)
            else:
                k -= 1
        else:
            k += 1
    T = U + kernel_U if transform else None
    Tinv = transpose(W + kernel_W) if inverse else None
    return MlllResult(b, deps, T, Tinv, swaps)


def gram_schmidt(rows) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact (mu, squared GS norms) of a list of independent integer rows."""
    bstar, B, mu = [], [], []
    for i, r in enumerate(rows):
        v = [Fraction(x) for x in r]
        row_mu = []
        for j in range(i):
            c = sum(Fraction(x) * y for x, y in zip(r, bstar[j])) / B[j] if B[j] else Fraction(0)
            row_mu.append(c)
            v = [x - c * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        B.append(sum(x * x for x in v))
        mu.append(row_mu)
    return mu, B


def is_lll_reduced(rows, delta=DEFAULT_DELTA) -> bool:
    """Size-reduction and Lovasz conditions, checked in exact arithmetic."""
    delta = Fraction(delta)
    mu, B = gram_schmidt(rows)
    for i in range(len(rows)):
        if not B[i]:
            return False
        if any(abs(c) > Fraction(1, 2) for c in mu[i]):
            return False
        if i and B[i] < (delta - mu[i][i - 1] ** 2) * B[i - 1]:
            return False
    return True


@dataclass
class FreePart:
    torsion_matrix: ExactMatrix | None  # P @ A @ Q restricted to the non-free columns
    free_rank: int
    P: list[list[int]]
    Q: list[list[int]]
    Qinv: list[list[int]]
    unit_eliminations: int = 0
    mlll_swaps: int = field(default=0)


def extract_free_part(A) -> FreePart:
    """Split off the torsion-free part of the group presented by A.

    Unit pivots are eliminated first since that is cheap; MLLL on the columns
    of what remains turns dependent columns into zero columns, which are moved
    last. Each zero column is a free generator; the last ``free_rank`` columns
    of Q give their images in the original generators.
    """
    from .pivoting import PivotStrategy, select_pivot
    from .snf import eliminate_step

    ws = Workspace(A, transforms=True)
    m, n = ws.m, ws.n
    k = 0
    strat = PivotStrategy.markowitz()
    while k < min(m, n):
        scan = kernels.scan_region(ws.a, k, k)
        if scan[2] != 1:
            break
        eliminate_step(ws, select_pivot(ws.a, strat, k, k, scan).pos, k)
        k += 1
    units = k
    swaps = 0
    free = 0
    if k < n:
        block = [ws.a[i][k:] for i in range(k, m)]
        cols = transpose(block) if block else [[] for _ in range(n - k)]
        if block:
            res = mlll(cols, transform=True, inverse=True)
            swaps = res.swaps
            free = res.dependencies
            T, Tinv = res.transform, res.transform_inv
        else:
            free = n - k
            T = Tinv = identity_rows(n - k)
        # columns k: of a and Q are multiplied on the right by T^t; Qinv rows
        # k: on the left by (T^t)^-1 = Tinv^t
        for mat in (ws.a, ws.Q):
            for r in mat:
                tail = r[k:]
                r[k:] = [sum(x * y for x, y in zip(tail, col)) for col in T]
        Qi = ws.Qinv[k:]
        TinvT = transpose(Tinv)
        new = [[sum(TinvT[i][t] * Qi[t][c] for t in range(len(Qi))) for c in range(n)] for i in range(n - k)]
        ws.Qinv[k:] = new
    width = n - free
    torsion = ExactMatrix([r[:width] for r in ws.a]) if width and m else None
    return FreePart(torsion, free, ws.P, ws.Q, ws.Qinv, units, swaps)
