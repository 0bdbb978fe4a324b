import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import det, identity, matmul, random_matrix, random_unimodular, row_lattice_key
from snfkit.exactmat import ExactMatrix
from snfkit.hnf import hermite_normal_form, snf_from_hnf
from snfkit.snf import smith_normal_form


def _is_hnf(H):
    last = -1
    seen_zero = False
    for r in H:
        nz = [j for j, x in enumerate(r) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        c = nz[0]
        if c <= last or r[c] <= 0:
            return False
        if any(not 0 <= H[i][c] < r[c] for i in range(H.index(r))):
            return False
        last = c
    return True


def test_examples():
    assert hermite_normal_form(ExactMatrix.identity(3), transform=True).H == ExactMatrix.identity(3)
    assert hermite_normal_form(ExactMatrix.identity(3), transform=True).U == identity(3)
    assert hermite_normal_form([[2, 4], [1, 1]]).H.rows == [[1, 1], [0, 2]]
    assert hermite_normal_form([[0, 0], [0, 0]]).H.rows == [[0, 0], [0, 0]]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_hnf_properties(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 7), rng.randint(1, 7)
    A = random_matrix(rng, m, n)
    if m > 2:
        A[1] = [a + b for a, b in zip(A[0], A[2])]
    res = hermite_normal_form(A, transform=True)
    H = res.H.rows
    assert _is_hnf(H)
    assert matmul(res.U, A) == H
    assert row_lattice_key(H) == row_lattice_key(A)
    if m <= 8:
        assert det(res.U) in (1, -1)
    V = random_unimodular(rng, m)
    assert hermite_normal_form(matmul(V, A)).H.rows == H


def test_snf_from_hnf_examples():
    assert snf_from_hnf([[2, 0], [0, 3]]).diagonal == [1, 6]
    assert snf_from_hnf([[1, 0, 0], [0, 2, 0], [0, 0, 6]]).diagonal == [1, 2, 6]
    assert snf_from_hnf([[0, 0], [0, 0]]).diagonal == [0, 0]


def test_snf_from_hnf_matches_engine():
    rng = random.Random(50)
    for _ in range(50):
        A = random_matrix(rng, 6, 6)
        assert snf_from_hnf(A).diagonal == smith_normal_form(A).diagonal
