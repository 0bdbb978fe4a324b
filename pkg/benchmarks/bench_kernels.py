"""Time the pure-Python and compiled kernel backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]

Each workload is timed under both backends (best of N) and the speedup is
reported. Results are checked to be identical across backends.
"""

from __future__ import annotations

import argparse
import json
import random
import time

from snfkit import kernels
from snfkit.modular import modular_invariants
from snfkit.planted import generate_planted
from snfkit.snf import smith_normal_form


def _rand(m, n, lo, hi, seed):
    rng = random.Random(seed)
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def workloads():
    big = _rand(120, 120, -50, 50, 1)
    sparse = generate_planted(80, 80, [2, 6], free_cols=2, op_count=6000, seed=4, density=0.12).rows
    p = 32771
    res = [[x % p for x in r] for r in _rand(60, 60, -9, 9, 2)]
    row = [random.Random(3).randint(-10**6, 10**6) for _ in range(4000)]
    return {
        "scan_region 120x120": lambda: kernels.scan_region(big, 0, 0),
        "line_metrics k=1 120x120": lambda: kernels.line_metrics(big, 0, 0, 1),
        "line_metrics k=0 120x120": lambda: kernels.line_metrics(big, 0, 0, 0),
        "axpy len 4000": lambda: kernels.axpy(list(row), row, 3, 0),
        "l1_pair len 4000": lambda: kernels.l1_pair(row, row[::-1]),
        "modp_echelon 60x60": lambda: kernels.modp_echelon(res, p),
        "modp_det 60x60": lambda: kernels.modp_det(res, p),
        "snf times:1+br planted 80x80": lambda: smith_normal_form(sparse, strategy="times:1").diagonal,
        "modular pipeline planted 80x80": lambda: modular_invariants(sparse).torsion,
    }


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    rows = []
    for name, fn in workloads().items():
        times, outs = {}, {}
        for b in backends:
            kernels.use(b)
            times[b], outs[b] = _best(fn, args.repeat)
        if len(backends) == 2 and outs["python"] != outs["compiled"]:
            raise SystemExit(f"backends disagree on {name}")
        speed = times["python"] / times["compiled"] if "compiled" in times else None
        rows.append({"workload": name, **{f"{b}_s": t for b, t in times.items()}, "speedup": speed})
    kernels.use("compiled" if "compiled" in backends else "python")
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':34s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s}")
    for r in rows:
        comp = f"{r['compiled_s']:11.5f}" if "compiled_s" in r else f"{'n/a':>11s}"
        sp = f"{r['speedup']:7.2f}x" if r["speedup"] else f"{'n/a':>8s}"
        print(f"{r['workload']:34s} {r['python_s']:10.5f} {comp} {sp}")


if __name__ == "__main__":
    main()
