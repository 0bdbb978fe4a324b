"""Pure-Python implementations of the hot loops.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Matrices are lists of row lists of Python ints; region arguments ``r0``/``c0``
name the top-left corner of the active submatrix.
"""

from __future__ import annotations

INF = -1  # metric code for the max-norm


def axpy(dst: list, src: list, q: int, start: int = 0) -> None:
    """dst[t] += q * src[t] for t >= start, in place."""
    if not q:
        return
    if start:
        dst[start:] = [x + q * y for x, y in zip(dst[start:], src[start:])]
    else:
        dst[:] = [x + q * y for x, y in zip(dst, src)]


def scan_region(a: list, r0: int, c0: int):
    """One pass over a[r0:, c0:].

    Returns ``(max_abs, nnz, min_abs, positions)`` where ``positions`` lists
    the (row, col) of every entry of minimal nonzero magnitude in row-major
    order. ``min_abs`` is 0 and ``positions`` empty for a zero region.
    """
    max_abs = 0
    nnz = 0
    min_abs = 0
    positions = []
    for i in range(r0, len(a)):
        row = a[i]
        for j in range(c0, len(row)):
            v = row[j]
            if v:
                nnz += 1
                if v < 0:
                    v = -v
                if v > max_abs:
                    max_abs = v
                if v == min_abs:
                    positions.append((i, j))
                elif v < min_abs or not min_abs:
                    min_abs = v
                    positions = [(i, j)]
    return max_abs, nnz, min_abs, positions


def line_metrics(a: list, r0: int, c0: int, k: int):
    """Row and column metrics of the active region for k in {0, 1, 2, INF}.

    k=2 yields sums of squares. Lists are indexed from r0 / c0.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rowm = [0] * (m - r0)
    colm = [0] * (n - c0)
    for i in range(r0, m):
        row = a[i]
        acc = 0
        for j in range(c0, n):
            v = row[j]
            if not v:
                continue
            if k == 0:
                w = 1
            elif k == 2:
                w = v * v
            else:
                w = v if v > 0 else -v
            if k == INF:
                if w > acc:
                    acc = w
                if w > colm[j - c0]:
                    colm[j - c0] = w
            else:
                acc += w
                colm[j - c0] += w
        rowm[i - r0] = acc
    return rowm, colm


def l1_pair(r: list, s: list):
    """(||r + s||_1, ||r - s||_1)."""
    plus = 0
    minus = 0
    for x, y in zip(r, s):
        t = x + y
        plus += t if t >= 0 else -t
        t = x - y
        minus += t if t >= 0 else -t
    return plus, minus


def modp_echelon(rows: list, p: int, stop_rank: int = -1):
    """Incremental row echelon over GF(p), rows inserted in order.

    ``rows`` holds residues in [0, p). Returns ``(rank, indep_rows,
    pivot_cols)``: the indices of rows that raised the rank, and the pivot
    column each contributed. Stops early once ``stop_rank`` is reached.
    """
    basis = []  # (pivot col, normalized row)
    indep = []
    pivots = []
    for idx, row in enumerate(rows):
        vec = list(row)
        for c, b in basis:
            f = vec[c]
            if f:
                vec = [(x - f * y) % p for x, y in zip(vec, b)]
        lead = -1
        for j, x in enumerate(vec):
            if x:
                lead = j
                break
        if lead < 0:
            continue
        inv = pow(vec[lead], -1, p)
        basis.append((lead, [(x * inv) % p for x in vec]))
        indep.append(idx)
        pivots.append(lead)
        if len(indep) == stop_rank:
            break
    return len(indep), indep, pivots


def modp_det(mat: list, p: int) -> int:
    """Determinant of a square matrix of residues over GF(p), in [0, p)."""
    n = len(mat)
    a = [list(r) for r in mat]
    det = 1
    for c in range(n):
        piv = -1
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c]
        det = (det * pv) % p
        inv = pow(pv, -1, p)
        prow = a[c]
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = (f * inv) % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], prow)]
    return det % p
