"""Random matrices with a known Smith normal form.

Start from a diagonal holding the chosen invariants and scramble it with
seeded unimodular row and column operations; the SNF cannot change.
"""

from __future__ import annotations

import random

from .exactmat import ExactMatrix


def validate_chain(invariants) -> list[int]:
    inv = [int(x) for x in invariants]
    if any(x < 1 for x in inv):
        raise ValueError("invariants must be positive")
    for a, b in zip(inv, inv[1:]):
        if b % a:
            raise ValueError(f"invariants {inv} do not form a divisibility chain ({a} does not divide {b})")
    return inv


def planted_diagonal(m: int, n: int, invariants, free_cols: int | None = None) -> list[int]:
    """Diagonal [1]*u + invariants + [0]*free_cols of length min(m, n).

    With ``free_cols=None`` there are no leading units and the remaining
    positions are zero.
    """
    inv = validate_chain(invariants)
    k = min(m, n)
    if free_cols is None:
        if len(inv) > k:
            raise ValueError(f"{len(inv)} invariants do not fit a {m}x{n} matrix")
        return inv + [0] * (k - len(inv))
    if free_cols < 0 or len(inv) + free_cols > k:
        raise ValueError(f"{len(inv)} invariants and {free_cols} zero columns do not fit a {m}x{n} matrix")
    return [1] * (k - len(inv) - free_cols) + inv + [0] * free_cols


def generate_planted(m: int, n: int, invariants, free_cols: int | None = None, op_count: int = 200,
                     entry_bound: int = 9, seed: int = 0, density: float | None = None,
                     max_multiplier: int = 2) -> ExactMatrix:
    """Scramble the planted diagonal with ``op_count`` elementary operations.

    Each operation adds a multiple (|q| <= max_multiplier) of one row or
    column to another, or swaps two; operations that would push an entry
    beyond ``entry_bound`` are rejected and redrawn. With ``density`` the
    process stops early once that fraction of entries is nonzero.
    """
    if entry_bound < 1:
        raise ValueError("entry_bound must be positive")
    diag = planted_diagonal(m, n, invariants, free_cols)
    if any(d > entry_bound for d in diag):
        raise ValueError("an invariant exceeds entry_bound")
    rng = random.Random(seed)
    a = [[0] * n for _ in range(m)]
    for i, d in enumerate(diag):
        a[i][i] = d
    nnz = sum(1 for d in diag if d)
    target = None if density is None else density * m * n
    done = 0
    attempts = 0
    while done < op_count and attempts < 50 * op_count + 1000:
        if target is not None and nnz >= target:
            break
        attempts += 1
        on_rows = rng.random() < 0.5
        size = m if on_rows else n
        if size < 2:
            continue
        i, j = rng.sample(range(size), 2)
        if rng.random() < 0.1:
            if on_rows:
                a[i], a[j] = a[j], a[i]
            else:
                for r in a:
                    r[i], r[j] = r[j], r[i]
            done += 1
            continue
        q = rng.choice([x for x in range(-max_multiplier, max_multiplier + 1) if x])
        if on_rows:
            new = [x + q * y for x, y in zip(a[i], a[j])]
            if any(abs(x) > entry_bound for x in new):
                continue
            nnz += sum(1 for x in new if x) - sum(1 for x in a[i] if x)
            a[i] = new
        else:
            col = [r[i] + q * r[j] for r in a]
            if any(abs(x) > entry_bound for x in col):
                continue
            nnz += sum(1 for x in col if x) - sum(1 for r in a if r[i])
            for r, x in zip(a, col):
                r[i] = x
        done += 1
    return ExactMatrix(a)
