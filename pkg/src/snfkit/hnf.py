"""Hermite normal form by incremental row insertion, and SNF through it.

Convention: row-style upper echelon form, positive pivots, entries above a
pivot reduced into [0, pivot), zero rows last.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .exactmat import ExactMatrix, as_rows, identity_rows, transpose
from .intutil import xgcd
from .snf import ReductionTrace, SnfResult, divisibility_fixup


@dataclass
class HnfResult:
    H: ExactMatrix
    rank: int
    U: list[list[int]] | None = None  # U @ A == H
    max_bits: int = 0


def _lead(v) -> int:
    for j, x in enumerate(v):
        if x:
            return j
    return -1


def hermite_normal_form(A, transform: bool = False) -> HnfResult:
    """Insert rows one at a time into an echelon basis, combining clashes
    with 2x2 unimodular gcd steps and re-reducing the basis after every
    insertion so entries stay near the size of the pivots."""
    rows = as_rows(A)
    m = len(rows)
    n = len(rows[0])
    eye = identity_rows(m) if transform else None
    basis: dict[int, list[int]] = {}  # pivot column -> row
    bU: dict[int, list[int]] = {}
    kernel_U = []
    peak = max((abs(x) for r in rows for x in r), default=0)

    for idx, v in enumerate(rows):
        u = list(eye[idx]) if transform else None
        while True:
            c = _lead(v)
            if c < 0:
                if transform:
                    kernel_U.append(u)
                break
            b = basis.get(c)
            if b is None:
                if v[c] < 0:
                    v = [-x for x in v]
                    if transform:
                        u = [-x for x in u]
                basis[c] = v
                if transform:
                    bU[c] = u
                break
            a, w = b[c], v[c]
            if w % a == 0:
                q = w // a
                kernels.axpy(v, b, -q, c)
                if transform:
                    kernels.axpy(u, bU[c], -q, 0)
                continue
            g, x, y = xgcd(a, w)
            nb = [x * s + y * t for s, t in zip(b, v)]
            nv = [(a // g) * t - (w // g) * s for s, t in zip(b, v)]
            if transform:
                bu = bU[c]
                bU[c] = [x * s + y * t for s, t in zip(bu, u)]
                u = [(a // g) * t - (w // g) * s for s, t in zip(bu, u)]
            basis[c] = nb
            v = nv
        peak = max(peak, _reduce(basis, bU if transform else None))

    cols = sorted(basis)
    H = [basis[c] for c in cols] + [[0] * n for _ in range(m - len(cols))]
    U = [bU[c] for c in cols] + kernel_U if transform else None
    return HnfResult(ExactMatrix(H), len(cols), U, peak.bit_length())


def _reduce(basis: dict, bU: dict | None) -> int:
    """Make pivots positive and reduce entries above them; returns max |entry|."""
    cols = sorted(basis)
    for c in cols:
        r = basis[c]
        if r[c] < 0:
            basis[c] = [-x for x in r]
            if bU is not None:
                bU[c] = [-x for x in bU[c]]
    for i, c in enumerate(cols):
        prow = basis[c]
        p = prow[c]
        for c2 in cols[:i]:
            r = basis[c2]
            q = r[c] // p
            if q:
                kernels.axpy(r, prow, -q, c)
                if bU is not None:
                    kernels.axpy(bU[c2], bU[c], -q, 0)
    return max((abs(x) for r in basis.values() for x in r), default=0)


def _is_monomial(rows) -> bool:
    """At most one nonzero in every row and every column."""
    seen = set()
    for r in rows:
        nz = [j for j, x in enumerate(r) if x]
        if len(nz) > 1 or (nz and nz[0] in seen):
            return False
        seen.update(nz)
    return True


def snf_from_hnf(A) -> SnfResult:
    """SNF diagonal by alternating row and column HNF until diagonal."""
    M = as_rows(A)
    m, n = len(M), len(M[0])
    peak = 0
    rounds = 0
    while True:
        res = hermite_normal_form(M)
        peak = max(peak, res.max_bits)
        M = res.H.rows
        rounds += 1
        if _is_monomial(M):
            break
        res = hermite_normal_form(transpose(M))
        peak = max(peak, res.max_bits)
        M = transpose(res.H.rows)
        if _is_monomial(M):
            break
    vals = [x for r in M for x in r if x]
    chain = divisibility_fixup(vals + [0] * (min(m, n) - len(vals)))
    trace = ReductionTrace(word_size_bits=None, peak_bits=peak)
    return SnfResult(chain, len(vals), (m, n), trace)
