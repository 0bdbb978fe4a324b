"""Text matrix files.

Dense: a header ``m n`` followed by m rows of n integers. Sparse: a header
``m n sparse`` followed by ``i j v`` triplets with 1-based indices and a
``0 0 0`` terminator. Lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import hashlib
import sys

from .exactmat import ExactMatrix, SparseMatrix, to_dense


class MatrixParseError(ValueError):
    pass


def _ints(tokens, where: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MatrixParseError(f"{where}: expected integers, got {' '.join(tokens)!r}") from None


def parse_matrix(text: str) -> ExactMatrix:
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln[0].startswith("#")]
    if not lines:
        raise MatrixParseError("empty matrix file")
    head = lines[0]
    sparse = len(head) == 3 and head[2].lower() == "sparse"
    if len(head) != 2 and not sparse:
        raise MatrixParseError(f"bad header {' '.join(head)!r}; expected 'm n' or 'm n sparse'")
    m, n = _ints(head[:2], "header")
    if m < 1 or n < 1:
        raise MatrixParseError("matrix dimensions must be positive")
    body = lines[1:]
    if sparse:
        return _parse_sparse(m, n, body)
    tokens = [t for ln in body for t in ln]
    if len(tokens) != m * n:
        raise MatrixParseError(f"expected {m * n} entries for a {m}x{n} matrix, found {len(tokens)}")
    vals = _ints(tokens, "body")
    return ExactMatrix([vals[i * n : (i + 1) * n] for i in range(m)])


def _parse_sparse(m: int, n: int, body) -> ExactMatrix:
    triplets = []
    done = False
    for ln in body:
        if done:
            raise MatrixParseError("data after the '0 0 0' terminator")
        if len(ln) != 3:
            raise MatrixParseError(f"sparse line {' '.join(ln)!r} is not 'i j v'")
        i, j, v = _ints(ln, "sparse entry")
        if (i, j, v) == (0, 0, 0):
            done = True
            continue
        if not (1 <= i <= m and 1 <= j <= n):
            raise MatrixParseError(f"index ({i}, {j}) outside {m}x{n}")
        triplets.append((i - 1, j - 1, v))
    if not done:
        raise MatrixParseError("sparse file lacks the '0 0 0' terminator")
    try:
        return to_dense(SparseMatrix.from_triplets(m, n, triplets))
    except ValueError as e:
        raise MatrixParseError(str(e)) from None


def read_matrix(path: str) -> ExactMatrix:
    """Read a matrix file; ``-`` reads standard input and ``fixture:NAME``
    loads a bundled fixture."""
    if path.startswith("fixture:"):
        from .fixtures import fixture_matrix

        try:
            return fixture_matrix(path.split(":", 1)[1])
        except (KeyError, ValueError) as e:
            raise MatrixParseError(str(e)) from None
    if path == "-":
        return parse_matrix(sys.stdin.read())
    try:
        with open(path) as fh:
            return parse_matrix(fh.read())
    except OSError as e:
        raise MatrixParseError(f"cannot read {path}: {e.strerror}") from None


def emit_dense(M) -> str:
    M = M if isinstance(M, ExactMatrix) else ExactMatrix(M)
    out = [f"{M.nrows} {M.ncols}"]
    out += [" ".join(str(x) for x in r) for r in M.rows]
    return "\n".join(out) + "\n"


def emit_sparse(M) -> str:
    M = M if isinstance(M, ExactMatrix) else ExactMatrix(M)
    out = [f"{M.nrows} {M.ncols} sparse"]
    for i, r in enumerate(M.rows):
        for j, x in enumerate(r):
            if x:
                out.append(f"{i + 1} {j + 1} {x}")
    out.append("0 0 0")
    return "\n".join(out) + "\n"


def digest(M) -> str:
    """Content hash that ignores the file form (dense or sparse)."""
    return hashlib.sha256(emit_dense(M).encode()).hexdigest()[:16]
