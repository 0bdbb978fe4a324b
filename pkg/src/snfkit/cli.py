"""Command-line front end: ``snfkit {snf,bench,planted,fixtures}``.

Exit codes: 0 success, 2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from .bench import DEFAULT_BENCH_CEILING, bench_sweep
from .exactmat import ExactMatrix
from .fixtures import fixture_names, get_fixture
from .matrixio import MatrixParseError, digest, emit_dense, emit_sparse, read_matrix
from .modular import modular_invariants
from .pivoting import PivotStrategy
from .planted import generate_planted
from .recognize import GroupDecomposition, format_decomposition, from_snf
from .snf import SnfOptions, smith_normal_form

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 2, 3


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


@dataclass
class RunReport:
    input_digest: str
    strategy: str
    decomposition: str
    torsion: list[int]
    free_rank: int
    rank: int
    max_entry_bits: int
    pivot_count: int
    reductions_applied: list[int]
    overflow_events: list[int]
    primes_used: int
    wall_time: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))

    def table(self) -> str:
        rows = asdict(self)
        width = max(len(k) for k in rows)
        return "\n".join(f"{k.ljust(width)}  {json.dumps(v)}" for k, v in rows.items())

    @classmethod
    def from_table(cls, text: str) -> "RunReport":
        vals = {}
        for line in text.splitlines():
            if line.strip():
                key, _, val = line.strip().partition(" ")
                vals[key] = json.loads(val.strip())
        return cls(**vals)


def _word_bits(text: str):
    if text == "none":
        return None
    if text in ("31", "35"):
        return int(text)
    raise argparse.ArgumentTypeError("word size must be 31, 35 or none")


def _positive(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be at least 2")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()] if text.strip() else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snfkit", description="Smith normal form and abelian group invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("snf", help="compute invariants of one matrix file")
    s.add_argument("file", help="matrix file, '-' for stdin, or fixture:NAME")
    s.add_argument("--strategy", default="times:1", help="sgj|first|max|markowitz|FAMILY:K (default times:1)")
    s.add_argument("--best-remainder", nargs="?", const="symmetric", default=None,
                   choices=("truncated", "symmetric"), help="reduce whole pivot row/column per step")
    s.add_argument("--transforms", action="store_true", help="accumulate and verify P and Q")
    s.add_argument("--transpose", action="store_true")
    s.add_argument("--reduce-threshold", type=_positive, metavar="N", help="row-reduce when entries exceed N (doubling)")
    s.add_argument("--mlll", action="store_true", help="use MLLL as the row reducer")
    s.add_argument("--modular", action="store_true", help="use the modular pipeline")
    s.add_argument("--word-bits", type=_word_bits, default=31, help="overflow accounting: 31, 35 or none")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--permute", action="store_true", help="shuffle rows and columns with --seed first")
    s.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="compare strategies over permutations")
    b.add_argument("file")
    b.add_argument("--strategies", default="first,sgj,sgj+br,times:1+br",
                   help="comma-separated NAME[:K][+br[=MODE]] specs")
    b.add_argument("--permutations", type=int, default=8)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--word-bits", type=_word_bits, default=31)
    b.add_argument("--bit-ceiling", type=int, default=DEFAULT_BENCH_CEILING)
    b.add_argument("--json", action="store_true")

    p = sub.add_parser("planted", help="write a random matrix with a known SNF")
    p.add_argument("--rows", "-m", type=int, required=True)
    p.add_argument("--cols", "-n", type=int, required=True)
    p.add_argument("--invariants", type=_int_list, default=[], help="divisibility chain, e.g. 2,6")
    p.add_argument("--free-cols", type=int, default=None)
    p.add_argument("--ops", type=int, default=200)
    p.add_argument("--entry-bound", type=int, default=9)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sparse", action="store_true")
    p.add_argument("-o", "--output", default="-")

    f = sub.add_parser("fixtures", help="list or print bundled fixtures")
    f.add_argument("name", nargs="?")
    f.add_argument("--sparse", action="store_true")
    return ap


def run_snf(A: ExactMatrix, args) -> RunReport:
    if args.modular and args.transforms:
        raise UsageError("--modular cannot produce transforms")
    if args.modular and (args.reduce_threshold or args.mlll or args.best_remainder):
        raise UsageError("--modular does not take elimination options")
    if args.mlll and not args.reduce_threshold:
        raise UsageError("--mlll needs --reduce-threshold")
    try:
        strategy = PivotStrategy.parse(args.strategy)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.permute:
        from .bench import permutations

        rp, cp = permutations(A.nrows, A.ncols, 2, args.seed)[1]
        A = A.permuted(rp, cp)
    if args.transpose:
        A = A.T
    t0 = time.perf_counter()
    if args.modular:
        res = modular_invariants(A)
        dec = GroupDecomposition(tuple(res.torsion), res.free_rank, source="modular")
        return RunReport(digest(A), "modular", format_decomposition(dec), list(dec.torsion), dec.free_rank,
                         res.rank, res.max_modulus_bits, res.rank, [], [], res.primes_used,
                         time.perf_counter() - t0)
    opts = SnfOptions(strategy=strategy, best_remainder=args.best_remainder is not None,
                      remainder_mode=args.best_remainder or "symmetric", transforms=args.transforms,
                      reduce_trigger=args.reduce_threshold, reducer="mlll" if args.mlll else "pairwise",
                      word_size_bits=args.word_bits)
    res = smith_normal_form(A, opts)
    wall = time.perf_counter() - t0
    if args.transforms and not res.check_transforms(A):
        raise InvariantViolation("P*A*Q does not equal the computed diagonal")
    chain = res.diagonal[: res.rank]
    if any(b % a for a, b in zip(chain, chain[1:])) or any(d < 0 for d in res.diagonal):
        raise InvariantViolation(f"diagonal {res.diagonal} is not a nonnegative divisibility chain")
    dec = from_snf(res)
    label = str(strategy) + (f"+br={opts.remainder_mode}" if opts.best_remainder else "")
    return RunReport(digest(A), label, format_decomposition(dec), list(dec.torsion), dec.free_rank, res.rank,
                     res.trace.peak_bits, res.trace.pivot_count, res.trace.reductions_applied,
                     res.trace.overflow_events, 0, wall)


def _cmd_snf(args) -> int:
    A = read_matrix(args.file)
    rep = run_snf(A, args)
    print(rep.to_json() if args.json else rep.table())
    return EXIT_OK


def _cmd_bench(args) -> int:
    A = read_matrix(args.file)
    specs = [s for s in args.strategies.split(",") if s.strip()]
    try:
        table = bench_sweep(A, specs, args.permutations, args.seed, args.word_bits, args.bit_ceiling)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(json.dumps(table.to_dict(), indent=2) if args.json else table.format())
    return EXIT_OK


def _cmd_planted(args) -> int:
    try:
        M = generate_planted(args.rows, args.cols, args.invariants, args.free_cols, args.ops,
                             args.entry_bound, args.seed, args.density)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = emit_sparse(M) if args.sparse else emit_dense(M)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    if args.name is None:
        for name in fixture_names():
            fx = get_fixture(name)
            tag = " (partial)" if fx.partial else ""
            print(f"{name}{tag}: {fx.description}")
        return EXIT_OK
    try:
        fx = get_fixture(args.name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if fx.is_matrix:
        M = fx.matrix()
        sys.stdout.write(emit_sparse(M) if args.sparse else emit_dense(M))
    else:
        for v in fx.values:
            print(v)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"snf": _cmd_snf, "bench": _cmd_bench, "planted": _cmd_planted, "fixtures": _cmd_fixtures}
    try:
        return handler[args.command](args)
    except (UsageError, MatrixParseError) as e:
        print(f"snfkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"snfkit: invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
