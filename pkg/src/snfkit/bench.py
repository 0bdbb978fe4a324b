"""Strategy sweeps over seeded row/column permutations."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass

from .exactmat import ExactMatrix
from .modular import certified_rank
from .snf import EntryExplosion, SnfOptions, smith_normal_form

DEFAULT_BENCH_CEILING = 4096


def parse_strategy_spec(spec: str) -> tuple[str, SnfOptions]:
    """``NAME[:K][+br[=truncated|symmetric]]`` -> (label, options).

    Without ``+br`` the run uses plain Euclidean cascading.
    """
    spec = spec.strip()
    base, _, extra = spec.partition("+")
    kw = {"strategy": base, "best_remainder": False}
    if extra:
        flag, _, mode = extra.partition("=")
        if flag != "br":
            raise ValueError(f"unknown strategy modifier {extra!r}")
        kw["best_remainder"] = True
        if mode:
            kw["remainder_mode"] = mode
    return spec, SnfOptions(**kw)


def permutations(m: int, n: int, count: int, seed: int):
    """``count`` (row_perm, col_perm) pairs; the first is the identity."""
    rng = random.Random(seed)
    out = [(list(range(m)), list(range(n)))]
    for _ in range(count - 1):
        rp, cp = list(range(m)), list(range(n))
        rng.shuffle(rp)
        rng.shuffle(cp)
        out.append((rp, cp))
    return out[:count]


@dataclass
class BenchCell:
    strategy: str
    permutation: int
    completed: bool  # False when the bit ceiling stopped the run
    max_entry_bits: int  # a lower bound when not completed
    overflow_step: int | None
    pivots_remaining: int | None
    pivot_count: int
    torsion: list[int] | None
    wall_time: float


@dataclass
class SweepTable:
    strategies: list[str]
    permutations: int
    word_size_bits: int | None
    rank: int
    cells: list[BenchCell]

    def cell(self, strategy: str, permutation: int) -> BenchCell:
        for c in self.cells:
            if c.strategy == strategy and c.permutation == permutation:
                return c
        raise KeyError((strategy, permutation))

    def column(self, strategy: str) -> list[BenchCell]:
        return [c for c in self.cells if c.strategy == strategy]

    def to_dict(self) -> dict:
        return {**{k: v for k, v in asdict(self).items() if k != "cells"},
                "cells": [asdict(c) for c in self.cells]}

    def format(self) -> str:
        """One row per permutation, one column per strategy.

        A cell shows the peak entry size in bits, then the step of the first
        word-size overflow with the pivots still remaining, e.g. ``212 @37/-23``.
        Runs stopped by the bit ceiling are marked ``>``.
        """
        width = max(12, *(len(s) + 2 for s in self.strategies))
        head = "perm".ljust(6) + "".join(s.rjust(width) for s in self.strategies)
        lines = [head]
        for p in range(self.permutations):
            row = str(p).ljust(6)
            for s in self.strategies:
                c = self.cell(s, p)
                txt = (">" if not c.completed else "") + str(c.max_entry_bits)
                if c.overflow_step is not None:
                    txt += f" @{c.overflow_step}/-{c.pivots_remaining}"
                row += txt.rjust(width)
            lines.append(row)
        return "\n".join(lines)


def run_cell(A, label: str, opts: SnfOptions, perm_index: int, rank: int) -> BenchCell:
    t0 = time.perf_counter()
    try:
        res = smith_normal_form(A, opts)
        trace, done, torsion = res.trace, True, res.torsion
        bits = trace.peak_bits
    except EntryExplosion as exc:
        trace, done, torsion = exc.trace, False, None
        bits = max(exc.bits, trace.peak_bits)
    ov = trace.first_overflow
    return BenchCell(label, perm_index, done, bits, ov, None if ov is None else rank - ov,
                     trace.pivot_count, torsion, time.perf_counter() - t0)


def bench_sweep(A, strategies, count: int = 8, seed: int = 0, word_size_bits: int | None = 31,
                bit_ceiling: int | None = DEFAULT_BENCH_CEILING) -> SweepTable:
    """Run every strategy spec on ``count`` seeded permutations of A."""
    if count < 1:
        raise ValueError("permutation count must be at least 1")
    A = A if isinstance(A, ExactMatrix) else ExactMatrix(A)
    rank = certified_rank(A.rows).rank
    specs = [parse_strategy_spec(s) for s in strategies]
    cells = []
    for idx, (rp, cp) in enumerate(permutations(A.nrows, A.ncols, count, seed)):
        B = A.permuted(rp, cp)
        for label, opts in specs:
            opts.word_size_bits = word_size_bits
            opts.bit_ceiling = bit_ceiling
            cells.append(run_cell(B, label, opts, idx, rank))
    return SweepTable([s for s, _ in specs], count, word_size_bits, rank, cells)
