# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``; signatures are identical."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

cdef int INF = -1


def axpy(list dst, list src, object q, Py_ssize_t start=0):
    cdef Py_ssize_t t, n = len(dst)
    if not q:
        return
    for t in range(start, n):
        y = src[t]
        if y:
            dst[t] = dst[t] + q * y


def scan_region(list a, Py_ssize_t r0, Py_ssize_t c0):
    cdef Py_ssize_t i, j, m = len(a), n
    cdef Py_ssize_t nnz = 0
    cdef list row
    cdef list positions = []
    max_abs = 0
    min_abs = 0
    for i in range(r0, m):
        row = <list>a[i]
        n = len(row)
        for j in range(c0, n):
            v = row[j]
            if v:
                nnz += 1
                if v < 0:
                    v = -v
                if v > max_abs:
                    max_abs = v
                if v == min_abs:
                    positions.append((i, j))
                elif not min_abs or v < min_abs:
                    min_abs = v
                    positions = [(i, j)]
    return max_abs, nnz, min_abs, positions


def line_metrics(list a, Py_ssize_t r0, Py_ssize_t c0, int k):
    cdef Py_ssize_t i, j, m = len(a)
    cdef Py_ssize_t n = len(a[0]) if m else 0
    cdef list row
    cdef list rowm = [0] * (m - r0)
    cdef list colm = [0] * (n - c0)
    cdef Py_ssize_t *cnt_col
    cdef Py_ssize_t cnt_row
    if k == 0:
        # counts fit in machine words
        cnt_col = <Py_ssize_t *>malloc((n - c0 + 1) * sizeof(Py_ssize_t))
        for j in range(n - c0):
            cnt_col[j] = 0
        for i in range(r0, m):
            row = <list>a[i]
            cnt_row = 0
            for j in range(c0, n):
                if row[j]:
                    cnt_row += 1
                    cnt_col[j - c0] += 1
            rowm[i - r0] = cnt_row
        for j in range(n - c0):
            colm[j] = cnt_col[j]
        free(cnt_col)
        return rowm, colm
    for i in range(r0, m):
        row = <list>a[i]
        acc = 0
        for j in range(c0, n):
            v = row[j]
            if not v:
                continue
            if k == 2:
                w = v * v
            elif v < 0:
                w = -v
            else:
                w = v
            if k == INF:
                if w > acc:
                    acc = w
                if w > colm[j - c0]:
                    colm[j - c0] = w
            else:
                acc = acc + w
                colm[j - c0] = colm[j - c0] + w
        rowm[i - r0] = acc
    return rowm, colm


def l1_pair(list r, list s):
    cdef Py_ssize_t t, n = len(r)
    plus = 0
    minus = 0
    for t in range(n):
        x = r[t]
        y = s[t]
        u = x + y
        plus = plus + (u if u >= 0 else -u)
        u = x - y
        minus = minus + (u if u >= 0 else -u)
    return plus, minus


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def modp_echelon(list rows, long long p, Py_ssize_t stop_rank=-1):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t idx, j, b, lead, rank = 0
    cdef int64_t f, inv
    cdef int64_t *basis
    cdef int64_t *vec
    cdef Py_ssize_t *pcol
    cdef list indep = [], pivots = []
    cdef list row
    if m == 0 or n == 0:
        return 0, indep, pivots
    basis = <int64_t *>malloc(n * n * sizeof(int64_t))
    vec = <int64_t *>malloc(n * sizeof(int64_t))
    pcol = <Py_ssize_t *>malloc(n * sizeof(Py_ssize_t))
    try:
        for idx in range(m):
            row = <list>rows[idx]
            for j in range(n):
                vec[j] = <int64_t>row[j]
            for b in range(rank):
                f = vec[pcol[b]]
                if f:
                    for j in range(pcol[b], n):
                        vec[j] = (vec[j] - f * basis[b * n + j]) % p
                        if vec[j] < 0:
                            vec[j] += p
            lead = -1
            for j in range(n):
                if vec[j]:
                    lead = j
                    break
            if lead < 0:
                continue
            inv = _inv_mod(vec[lead], p)
            for j in range(n):
                basis[rank * n + j] = (vec[j] * inv) % p
            pcol[rank] = lead
            rank += 1
            indep.append(idx)
            pivots.append(lead)
            if rank == stop_rank or rank == n:
                break
    finally:
        free(basis)
        free(vec)
        free(pcol)
    return rank, indep, pivots


def modp_det(list mat, long long p):
    cdef Py_ssize_t n = len(mat)
    cdef Py_ssize_t i, j, c, piv
    cdef int64_t det = 1, f, inv, tmp
    cdef int64_t *a
    cdef list row
    if n == 0:
        return 1
    a = <int64_t *>malloc(n * n * sizeof(int64_t))
    try:
        for i in range(n):
            row = <list>mat[i]
            for j in range(n):
                a[i * n + j] = <int64_t>row[j]
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[i * n + c]:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    tmp = a[c * n + j]
                    a[c * n + j] = a[piv * n + j]
                    a[piv * n + j] = tmp
                det = p - det
            det = (det * a[c * n + c]) % p
            inv = _inv_mod(a[c * n + c], p)
            for i in range(c + 1, n):
                f = a[i * n + c]
                if f:
                    f = (f * inv) % p
                    for j in range(c, n):
                        a[i * n + j] = (a[i * n + j] - f * a[c * n + j]) % p
                        if a[i * n + j] < 0:
                            a[i * n + j] += p
        return det % p
    finally:
        free(a)
