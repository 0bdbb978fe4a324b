"""Smith normal form by integer elimination.

The engine works on a shrinking active region ``a[k:, k:]``. Each step picks
a pivot with the configured strategy, runs a gcd cascade until the pivot
divides its row and column, clears them, and swaps the pivot onto the
diagonal. Divisibility along the diagonal is settled once at the end.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import gcd

from . import kernels
from .exactmat import ExactMatrix, Workspace, matmul
from .pivoting import PivotChoice, PivotStrategy, select_pivot

REMAINDER_MODES = ("truncated", "symmetric")
REDUCE_POLICIES = ("threshold", "no-units")
REDUCERS = ("pairwise", "mlll")


class EntryExplosion(RuntimeError):
    """Raised when entries outgrow ``SnfOptions.bit_ceiling``."""

    def __init__(self, bits: int, ceiling: int, trace: "ReductionTrace"):
        super().__init__(f"entry reached {bits} bits, ceiling is {ceiling}")
        self.bits = bits
        self.trace = trace


def quotient(a: int, v: int, mode: str = "symmetric") -> int:
    """q such that a - q*v is the remainder of a by v under ``mode``.

    truncated: remainder carries the sign of ``a`` (|r| <= |v| - 1).
    symmetric: least absolute remainder, |r| <= |v| / 2.
    """
    if mode == "truncated":
        q = abs(a) // abs(v)
        return -q if (a < 0) != (v < 0) else q
    if mode == "symmetric":
        q, r = divmod(a, v)
        if 2 * abs(r) > abs(v):
            q += 1
        return q
    raise ValueError(f"remainder mode must be one of {REMAINDER_MODES}, got {mode!r}")


@dataclass
class ReductionTrace:
    word_size_bits: int | None = 31
    pivot_sequence: list = field(default_factory=list)  # (row, col, value) at elimination
    initial_pivots: list = field(default_factory=list)  # first value chosen at each step
    max_bits_history: list = field(default_factory=list)
    fill_history: list = field(default_factory=list)
    overflow_events: list = field(default_factory=list)
    reductions_applied: list = field(default_factory=list)
    dependent_rows_removed: int = 0
    peak_bits: int = 0
    selections: int = 0

    @property
    def pivot_count(self) -> int:
        return len(self.pivot_sequence)

    @property
    def reduction_count(self) -> int:
        return len(self.reductions_applied)

    @property
    def first_overflow(self) -> int | None:
        return self.overflow_events[0] if self.overflow_events else None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pivot_sequence"] = [list(p) for p in self.pivot_sequence]
        return d


@dataclass
class SnfOptions:
    strategy: PivotStrategy = field(default_factory=PivotStrategy)
    best_remainder: bool = True
    remainder_mode: str = "symmetric"
    transforms: bool = False
    reduce_trigger: int | None = None
    reduce_policy: str = "threshold"
    reducer: str = "pairwise"
    word_size_bits: int | None = 31
    bit_ceiling: int | None = None
    # After a best-remainder pass that leaves nonzero remainders, take the
    # smallest remainder in the pivot's row/column (False) or choose again
    # with the strategy over the whole active region (True).
    reselect: bool = False
    # Prefer units whose row has at most one other nonzero, itself a unit.
    short_first: bool = False

    def __post_init__(self):
        if isinstance(self.strategy, str):
            self.strategy = PivotStrategy.parse(self.strategy)
        if self.remainder_mode not in REMAINDER_MODES:
            raise ValueError(f"remainder_mode must be one of {REMAINDER_MODES}")
        if self.reduce_trigger is not None and self.reduce_trigger < 2:
            raise ValueError("reduce_trigger must be at least 2")
        if self.reduce_policy not in REDUCE_POLICIES:
            raise ValueError(f"reduce_policy must be one of {REDUCE_POLICIES}")
        if self.reducer not in REDUCERS:
            raise ValueError(f"reducer must be one of {REDUCERS}")


@dataclass
class SnfResult:
    diagonal: list[int]
    rank: int
    shape: tuple[int, int]
    trace: ReductionTrace
    P: list[list[int]] | None = None
    Q: list[list[int]] | None = None
    Qinv: list[list[int]] | None = None

    @property
    def invariants(self) -> list[int]:
        """Nonzero diagonal entries."""
        return self.diagonal[: self.rank]

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariants if d != 1]

    def matrix(self) -> ExactMatrix:
        m, n = self.shape
        return ExactMatrix.diagonal(m, n, self.diagonal)

    def transform_max_bits(self) -> tuple[int, int] | None:
        if self.P is None:
            return None
        bits = lambda M: max(abs(x) for r in M for x in r).bit_length()  # noqa: E731
        return bits(self.P), bits(self.Q)

    def check_transforms(self, A) -> bool:
        """P @ A @ Q == D and Q @ Qinv == I."""
        if self.P is None:
            raise ValueError("transforms were not accumulated")
        rows = A.rows if isinstance(A, ExactMatrix) else A
        if matmul(matmul(self.P, rows), self.Q) != self.matrix().rows:
            return False
        n = self.shape[1]
        return matmul(self.Q, self.Qinv) == [[int(i == j) for j in range(n)] for i in range(n)]


# -- single-step operations ---------------------------------------------------


def _divides_line(a, s: int, t: int, k: int) -> bool:
    v = a[s][t]
    if v == 1 or v == -1:
        return True
    row = a[s]
    for j in range(k, len(row)):
        if row[j] % v:
            return False
    for i in range(k, len(a)):
        if a[i][t] % v:
            return False
    return True


def eliminate_step(ws: Workspace, pivot: tuple[int, int], k: int = 0) -> None:
    """Clear the pivot's row and column, then swap the pivot to (k, k).

    The pivot must divide every entry of its row and column within the
    active region.
    """
    s, t = pivot
    a = ws.a
    v = a[s][t]
    if not v:
        raise ValueError("pivot is zero")
    if not _divides_line(a, s, t, k):
        raise ValueError(f"pivot {v} at {pivot} does not divide its row and column")
    for i in range(k, ws.m):
        if i != s:
            c = a[i][t]
            if c:
                ws.row_addmul(i, s, -(c // v), start=k)
    row = a[s]
    if ws.transforms:
        for j in range(k, ws.n):
            if j != t and row[j]:
                ws.col_addmul(j, t, -(row[j] // v), start=k)
    else:
        for j in range(k, ws.n):
            if j != t:
                row[j] = 0
    ws.row_swap(s, k)
    ws.col_swap(t, k, start=k)


def best_remainder_pass(ws: Workspace, pivot: tuple[int, int], k: int = 0, mode: str = "symmetric") -> None:
    """Reduce every other entry of the pivot's row, then its column, by the pivot.

    Afterwards all those entries have magnitude below |pivot|; the pivot
    stays where it is.
    """
    s, t = pivot
    a = ws.a
    v = a[s][t]
    row = a[s]
    qvec = [0] * ws.n
    any_col = False
    for j in range(k, ws.n):
        if j != t and row[j]:
            q = quotient(row[j], v, mode)
            if q:
                qvec[j] = -q
                any_col = True
    if any_col:
        ws.col_addmul_vector(t, qvec, start_row=k, start_col=k)
    for i in range(k, ws.m):
        if i != s:
            c = a[i][t]
            if c:
                q = quotient(c, v, mode)
                if q:
                    ws.row_addmul(i, s, -q, start=k)


def _smallest_remainder(a, s: int, t: int, k: int) -> tuple[int, int] | None:
    best = None
    best_mag = 0
    for j in range(k, len(a[s])):
        x = a[s][j]
        if j != t and x and (not best_mag or abs(x) < best_mag):
            best, best_mag = (s, j), abs(x)
    for i in range(k, len(a)):
        x = a[i][t]
        if i != s and x and (not best_mag or abs(x) < best_mag):
            best, best_mag = (i, t), abs(x)
    return best


def euclid_step(ws: Workspace, pivot: tuple[int, int], k: int = 0, mode: str = "symmetric"):
    """One Euclidean step on the first entry of the row (then column) the pivot
    does not divide. Returns ``(new_pivot, changed_max_abs)``, or ``(pivot, 0)``
    when the pivot already divides its row and column."""
    s, t = pivot
    a = ws.a
    v = a[s][t]
    row = a[s]
    for j in range(k, ws.n):
        if j != t and row[j] % v:
            ws.col_addmul(j, t, -quotient(row[j], v, mode), start=k)
            return (s, j), max(abs(a[i][j]) for i in range(k, ws.m))
    for i in range(k, ws.m):
        if i != s and a[i][t] % v:
            ws.row_addmul(i, s, -quotient(a[i][t], v, mode), start=k)
            return (i, t), max(abs(x) for x in a[i][k:])
    return pivot, 0


def gcd_cascade(ws: Workspace, pivot: tuple[int, int], k: int = 0, best_remainder: bool = True,
                mode: str = "symmetric") -> tuple[int, int]:
    """Move the pivot until it divides every entry in its row and column.

    With ``best_remainder`` each round reduces the whole row and column and
    the smallest nonzero remainder becomes the pivot; otherwise single
    Euclidean steps are taken on the first nondivisible entry.
    """
    a = ws.a
    while not _divides_line(a, pivot[0], pivot[1], k):
        if best_remainder:
            best_remainder_pass(ws, pivot, k, mode)
            nxt = _smallest_remainder(a, pivot[0], pivot[1], k)
            if nxt is None:
                break
            pivot = nxt
        else:
            pivot, _ = euclid_step(ws, pivot, k, mode)
    return pivot


def _fix_pair(ws: Workspace, i: int, j: int) -> None:
    """Replace diagonal entries (d_i, d_j) with (gcd, lcm) up to sign."""
    a = ws.a
    ws.row_addmul(i, j, 1)
    while a[i][j]:
        q = a[i][i] // a[i][j]
        ws.col_addmul(i, j, -q)
        ws.col_swap(i, j)
    c = a[j][i]
    if c:
        ws.row_addmul(j, i, -(c // a[i][i]))


def divisibility_fixup(target, r: int | None = None):
    """Turn a diagonal into a divisibility chain of nonnegative entries.

    ``target`` is either a Workspace whose leading ``r`` diagonal entries are
    nonzero and whose matrix is otherwise diagonal (operations are mirrored
    into its transforms), or a plain list of integers, for which a new sorted
    chain is returned with zeros last.
    """
    if not isinstance(target, Workspace):
        nz = [abs(d) for d in target if d]
        zeros = [0] * (len(target) - len(nz))
        for i in range(len(nz)):
            for j in range(i + 1, len(nz)):
                x, y = nz[i], nz[j]
                if y % x:
                    g = gcd(x, y)
                    nz[i], nz[j] = g, x // g * y
        return nz + zeros
    ws = target
    a = ws.a
    if r is None:
        r = 0
        while r < min(ws.m, ws.n) and a[r][r]:
            r += 1
    for i in range(r):
        for j in range(i + 1, r):
            if a[j][j] % a[i][i]:
                _fix_pair(ws, i, j)
    for i in range(r):
        if a[i][i] < 0:
            ws.row_negate(i)
    return ws


class ReduceTrigger:
    """Doubling-threshold (or no-units) rule for when to run row reduction."""

    def __init__(self, threshold: int | None = 1000, policy: str = "threshold"):
        if policy == "threshold" and (threshold is None or threshold < 2):
            raise ValueError("threshold must be at least 2")
        self.threshold = threshold
        self.policy = policy
        self._armed = True

    def fires(self, max_abs: int, has_units: bool) -> bool:
        if self.policy == "threshold":
            if max_abs > self.threshold:
                self.threshold *= 2
                return True
            return False
        if has_units:
            self._armed = True
            return False
        if self._armed and max_abs:
            self._armed = False
            return True
        return False


def _reduce_active(ws: Workspace, k: int, reducer: str) -> int:
    """Row-reduce the active region in place; returns rows turned to zero."""
    from .latred import mlll, pairwise_sweep

    idx = [i for i in range(k, ws.m) if any(ws.a[i][k:])]
    if len(idx) < 2:
        return 0
    if reducer == "pairwise":
        rows = [ws.a[i] for i in idx]
        mirror = [ws.P[i] for i in idx] if ws.transforms else None
        pairwise_sweep(rows, mirror, start=k)
        return sum(1 for r in rows if not any(r[k:]))
    vecs = [ws.a[i][k:] for i in idx]
    res = mlll(vecs, transform=ws.transforms)
    out = res.basis + [[0] * (ws.n - k) for _ in range(res.dependencies)]
    for i, v in zip(idx, out):
        ws.a[i][k:] = v
    if ws.transforms:
        old = [ws.P[i] for i in idx]
        new = matmul(res.transform, old)
        for i, r in zip(idx, new):
            ws.P[i] = r
    return res.dependencies


def maybe_reduce(ws: Workspace, k: int, trigger: ReduceTrigger, trace: ReductionTrace, step: int,
                 max_abs: int, has_units: bool = False, reducer: str = "pairwise") -> bool:
    """Run row reduction on the active region if the trigger fires."""
    if not trigger.fires(max_abs, has_units):
        return False
    trace.dependent_rows_removed += _reduce_active(ws, k, reducer)
    trace.reductions_applied.append(step)
    return True


# -- driver ---------------------------------------------------------------------


def _short_unit(a, r0: int, c0: int, positions) -> PivotChoice | None:
    for i, j in positions:
        others = 0
        ok = True
        for jj in range(c0, len(a[i])):
            x = a[i][jj]
            if jj != j and x:
                others += abs(x)
                if others > 1:
                    ok = False
                    break
        if ok:
            return PivotChoice(i, j, a[i][j], others)
    return None


def _choose(ws: Workspace, opts: SnfOptions, k: int, scan, trace: ReductionTrace) -> PivotChoice:
    trace.selections += 1
    if opts.short_first and scan[2] == 1:
        c = _short_unit(ws.a, k, k, scan[3])
        if c is not None:
            return c
    return select_pivot(ws.a, opts.strategy, k, k, scan)


def smith_normal_form(A, opts: SnfOptions | None = None, **overrides) -> SnfResult:
    """Smith normal form of an integer matrix.

    ``overrides`` are SnfOptions fields, e.g.
    ``smith_normal_form(A, strategy="sgj", best_remainder=False)``.
    """
    if opts is None:
        opts = SnfOptions(**overrides)
    elif overrides:
        opts = SnfOptions(**{**asdict_shallow(opts), **overrides})
    ws = Workspace(A, opts.transforms)
    m, n = ws.m, ws.n
    trace = ReductionTrace(word_size_bits=opts.word_size_bits)
    trigger = ReduceTrigger(opts.reduce_trigger, opts.reduce_policy) if opts.reduce_trigger else None
    word = opts.word_size_bits
    ceiling = opts.bit_ceiling
    a = ws.a

    scan = kernels.scan_region(a, 0, 0)
    diag_max = 0
    k = 0
    while k < min(m, n) and scan[1]:
        step_peak = scan[0]
        choice = _choose(ws, opts, k, scan, trace)
        trace.initial_pivots.append(choice.value)
        s, t = choice.pos
        while not _divides_line(a, s, t, k):
            if opts.best_remainder:
                best_remainder_pass(ws, (s, t), k, opts.remainder_mode)
                scan = kernels.scan_region(a, k, k)
                step_peak = max(step_peak, scan[0])
                if ceiling is not None and step_peak.bit_length() > ceiling:
                    raise EntryExplosion(step_peak.bit_length(), ceiling, trace)
                if _smallest_remainder(a, s, t, k) is None:
                    break
                if opts.reselect:
                    s, t = _choose(ws, opts, k, scan, trace).pos
                else:
                    s, t = _smallest_remainder(a, s, t, k)
            else:
                (s, t), changed = euclid_step(ws, (s, t), k, opts.remainder_mode)
                step_peak = max(step_peak, changed)
        v = a[s][t]
        eliminate_step(ws, (s, t), k)
        trace.pivot_sequence.append((s, t, v))
        k += 1
        diag_max = max(diag_max, abs(v))
        scan = kernels.scan_region(a, k, k)
        step_peak = max(step_peak, scan[0], diag_max)
        step_bits = step_peak.bit_length()
        trace.max_bits_history.append(max(scan[0], diag_max).bit_length())
        trace.fill_history.append(scan[1])
        trace.peak_bits = max(trace.peak_bits, step_bits)
        if word is not None and step_bits > word:
            trace.overflow_events.append(k - 1)
        if ceiling is not None and step_bits > ceiling:
            raise EntryExplosion(step_bits, ceiling, trace)
        if trigger is not None and scan[1]:
            if maybe_reduce(ws, k, trigger, trace, k - 1, scan[0], scan[2] == 1, opts.reducer):
                scan = kernels.scan_region(a, k, k)
    rank = k
    divisibility_fixup(ws, rank)
    diagonal = [a[i][i] for i in range(min(m, n))]
    return SnfResult(diagonal, rank, (m, n), trace, ws.P, ws.Q, ws.Qinv)


def asdict_shallow(opts: SnfOptions) -> dict:
    return {f: getattr(opts, f) for f in opts.__dataclass_fields__}


def smith_diagonal(A, **overrides) -> list[int]:
    """Shortcut: the SNF diagonal of A."""
    return smith_normal_form(A, **overrides).diagonal
