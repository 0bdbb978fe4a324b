import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import nontrivial, random_matrix, snf_by_minors
from snfkit.bench import bench_sweep, parse_strategy_spec, permutations
from snfkit.cli import RunReport, main
from snfkit.exactmat import ExactMatrix
from snfkit.fixtures import fixture_matrix, fixture_names, get_fixture
from snfkit.matrixio import MatrixParseError, digest, emit_dense, emit_sparse, parse_matrix
from snfkit.planted import generate_planted, planted_diagonal, validate_chain
from snfkit.snf import smith_normal_form


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fixture_file(tmp_path):
    p = tmp_path / "w.txt"
    p.write_text(emit_dense(fixture_matrix("working-14x16")))
    return str(p)


# matrix files

@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_dense_sparse_round_trip(seed):
    rng = random.Random(seed)
    A = ExactMatrix(random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), -3, 3))
    assert parse_matrix(emit_dense(A)) == A
    assert parse_matrix(emit_sparse(A)) == A
    assert digest(parse_matrix(emit_sparse(A))) == digest(A)


def test_comments_and_layout():
    A = parse_matrix("# a comment\n2 3\n1 2\n3 4 5 6\n")
    assert A.rows == [[1, 2, 3], [4, 5, 6]]
    S = parse_matrix("2 2 sparse\n# c\n1 1 5\n2 2 -7\n0 0 0\n")
    assert S.rows == [[5, 0], [0, -7]]


@pytest.mark.parametrize("text", [
    "", "2\n1 2", "2 2\n1 2 3", "2 2\n1 x 3 4", "0 3\n", "2 2 sparse\n3 1 1\n0 0 0",
    "2 2 sparse\n1 1 1\n1 1 2\n0 0 0", "2 2 dense\n1 2 3 4",
])
def test_parse_errors(text):
    with pytest.raises(MatrixParseError):
        parse_matrix(text)


def test_dense_and_sparse_give_same_report(tmp_path, capsys):
    A = fixture_matrix("working-14x16")
    d, s = tmp_path / "d.txt", tmp_path / "s.txt"
    d.write_text(emit_dense(A))
    s.write_text(emit_sparse(A))
    reps = []
    for f in (d, s):
        code, out, _ = run(capsys, "snf", str(f), "--json")
        assert code == 0
        r = json.loads(out)
        r.pop("wall_time")
        reps.append(r)
    assert reps[0] == reps[1]


# snf subcommand

def test_snf_fixture(fixture_file, capsys):
    code, out, _ = run(capsys, "snf", fixture_file, "--strategy", "sgj", "--json")
    rep = RunReport.from_json(out)
    assert code == 0 and rep.torsion == [3] and rep.free_rank == 2 and rep.rank == 14
    assert rep.decomposition == "C3 + Z^2"
    assert rep.strategy == "sgj"


def test_snf_report_fields(fixture_file, capsys):
    code, out, _ = run(capsys, "snf", fixture_file, "--json")
    keys = set(json.loads(out))
    assert keys == {"input_digest", "strategy", "decomposition", "torsion", "free_rank", "rank",
                    "max_entry_bits", "pivot_count", "reductions_applied", "overflow_events",
                    "primes_used", "wall_time"}


@pytest.mark.parametrize("flags", [
    [], ["--best-remainder"], ["--best-remainder=truncated"], ["--transforms"],
    ["--reduce-threshold", "50"], ["--reduce-threshold", "50", "--mlll"], ["--modular"],
    ["--strategy", "plus:2"], ["--strategy", "markowitz", "--permute", "--seed", "3"], ["--word-bits", "none"],
])
def test_snf_options_agree(fixture_file, capsys, flags):
    code, out, _ = run(capsys, "snf", fixture_file, "--json", *flags)
    assert code == 0
    assert json.loads(out)["decomposition"] == "C3 + Z^2"


def test_snf_stdin_and_fixture_source(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("1 1\n0\n"))
    code, out, _ = run(capsys, "snf", "-", "--json")
    assert code == 0 and json.loads(out)["decomposition"] == "Z"
    code, out, _ = run(capsys, "snf", "fixture:working-14x16", "--json")
    assert json.loads(out)["torsion"] == [3]


def test_table_matches_json(fixture_file, capsys):
    _, out_j, _ = run(capsys, "snf", fixture_file, "--json")
    _, out_t, _ = run(capsys, "snf", fixture_file)
    a, b = RunReport.from_json(out_j), RunReport.from_table(out_t)
    a.wall_time = b.wall_time = 0
    assert a == b


def test_transpose(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text("2 3\n2 0 0\n0 4 0\n")
    _, out, _ = run(capsys, "snf", str(f), "--json", "--transpose")
    r = json.loads(out)
    assert r["torsion"] == [2, 4] and r["free_rank"] == 0


@pytest.mark.parametrize("argv", [
    ["snf", "MISSING", "--json"],
    ["snf", "fixture:nope"],
    ["snf", "fixture:determinants-A1"],
    ["snf", "fixture:working-14x16", "--modular", "--transforms"],
    ["snf", "fixture:working-14x16", "--modular", "--best-remainder"],
    ["snf", "fixture:working-14x16", "--mlll"],
    ["snf", "fixture:working-14x16", "--strategy", "bogus"],
    ["bench", "fixture:working-14x16", "--strategies", "sgj+xx"],
    ["bench", "fixture:working-14x16", "--permutations", "0"],
    ["planted", "-m", "3", "-n", "3", "--invariants", "2,3"],
    ["fixtures", "nope"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["snf", "x", "--word-bits", "64"])
    assert e.value.code == 2


def test_invariant_violation_exit_3(fixture_file, capsys, monkeypatch):
    from snfkit.snf import SnfResult
    monkeypatch.setattr(SnfResult, "check_transforms", lambda self, A: False)
    code, _, err = run(capsys, "snf", fixture_file, "--transforms")
    assert code == 3 and "invariant" in err


# bench

def test_strategy_specs():
    label, o = parse_strategy_spec("times:1+br=truncated")
    assert label == "times:1+br=truncated" and o.best_remainder and o.remainder_mode == "truncated"
    assert not parse_strategy_spec("sgj")[1].best_remainder
    assert permutations(3, 4, 3, 0)[0] == ([0, 1, 2], [0, 1, 2, 3])
    assert permutations(3, 4, 3, 0) == permutations(3, 4, 3, 0)


def test_bench_shape_and_identity():
    specs = ["first", "sgj", "times:1+br"]
    t = bench_sweep(ExactMatrix.identity(5), specs, 4)
    assert len(t.cells) == 12 and t.rank == 5
    assert all(c.max_entry_bits == 1 and c.completed and c.overflow_step is None for c in t.cells)
    assert len(t.format().splitlines()) == 5


def test_bench_single_permutation_matches_snf(fixture_file, capsys):
    A = fixture_matrix("working-14x16")
    t = bench_sweep(A, ["times:1+br"], 1)
    res = smith_normal_form(A, strategy="times:1", best_remainder=True)
    c = t.cell("times:1+br", 0)
    assert c.max_entry_bits == res.trace.peak_bits and c.torsion == [3]
    code, out, _ = run(capsys, "bench", fixture_file, "--permutations", "2", "--json")
    d = json.loads(out)
    assert code == 0 and len(d["cells"]) == 8


def test_bench_ceiling_marks_incomplete():
    A = fixture_matrix("working-14x16")
    t = bench_sweep(A, ["first"], 2, bit_ceiling=8)
    for c in t.cells:
        assert not c.completed and c.max_entry_bits > 8 and c.torsion is None


# planted

def test_planted_examples():
    assert planted_diagonal(4, 4, [2, 6]) == [2, 6, 0, 0]
    assert planted_diagonal(4, 5, [2, 6], free_cols=1) == [1, 2, 6, 0]
    M = generate_planted(4, 4, [2, 6], op_count=0)
    assert M.rows == [[2, 0, 0, 0], [0, 6, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    M = generate_planted(4, 4, [2, 6], op_count=50, seed=7)
    assert nontrivial(snf_by_minors(M.rows)) == [2, 6]
    with pytest.raises(ValueError):
        validate_chain([2, 3])
    with pytest.raises(ValueError):
        planted_diagonal(2, 2, [2, 4], free_cols=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_planted_invariants_survive(seed):
    rng = random.Random(seed)
    inv = rng.choice([[2], [2, 4], [3, 6, 6], [5]])
    M = generate_planted(8, 9, inv, free_cols=2, op_count=300, seed=seed)
    res = smith_normal_form(M)
    assert res.torsion == inv and res.rank == 6
    assert M.max_abs() <= 9


def test_planted_density_and_cli(tmp_path, capsys):
    M = generate_planted(30, 30, [2], free_cols=1, op_count=5000, seed=1, density=0.2)
    nnz = sum(1 for r in M.rows for x in r if x)
    assert 0.2 <= nnz / 900 < 0.3
    out = tmp_path / "p.txt"
    code, _, _ = run(capsys, "planted", "-m", "6", "-n", "6", "--invariants", "2,6", "--free-cols", "1",
                     "--ops", "100", "--seed", "3", "--sparse", "-o", str(out))
    assert code == 0
    _, rep, _ = run(capsys, "snf", str(out), "--json")
    assert json.loads(rep)["decomposition"] == "C2 + C6 + Z"


# fixtures

def test_fixture_catalogue(capsys):
    names = fixture_names()
    assert "working-14x16" in names and "determinants-A1" in names
    A = fixture_matrix("working-14x16")
    assert (A.nrows, A.ncols) == (14, 16)
    assert A.rows[2][11] == -23
    assert get_fixture("determinants-A1").values[0] == 36132812500000000
    assert get_fixture("heineken-63x8-head").partial
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and len(out.splitlines()) == len(names)
    code, out, _ = run(capsys, "fixtures", "determinants-A2")
    assert out.split() == ["1770749945013406400", "105018206175737920"]
    code, out, _ = run(capsys, "fixtures", "working-14x16", "--sparse")
    assert parse_matrix(out) == A
