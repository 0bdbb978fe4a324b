import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import matmul, nontrivial, random_matrix, random_unimodular, snf_by_minors
from snfkit.fixtures import fixture_matrix
from snfkit.recognize import (
    GroupDecomposition,
    check_generator_images,
    decompose,
    format_decomposition,
    generator_images,
    parse_decomposition,
    primary_of,
)
from snfkit.snf import SnfOptions


def test_decompose_examples():
    assert str(decompose([[2, 0], [0, 3]])) == "C6"
    assert str(decompose([[0, 0]])) == "Z^2"
    assert str(decompose([[1]])) == "0"
    assert str(decompose([[4, 0, 0], [0, 6, 0]])) == "C2 + C12 + Z"
    assert decompose([[2, 0], [0, 2]]).torsion == (2, 2)


def test_fixture_group():
    A = fixture_matrix("working-14x16")
    for pipe in ("integer", "modular", "auto"):
        d = decompose(A, pipe)
        assert str(d) == "C3 + Z^2"
    assert decompose(A, "auto").source == "auto:integer"


def test_auto_falls_back_when_entries_explode():
    A = fixture_matrix("working-14x16")
    d = decompose(A, "auto", SnfOptions(strategy="first", best_remainder=False), bit_ceiling=4)
    assert d.source == "auto:modular"
    assert str(d) == "C3 + Z^2"


def test_pipeline_validation():
    with pytest.raises(ValueError):
        decompose([[1]], "magic")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_decompose_matches_minors(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 4), rng.randint(1, 4)
    A = random_matrix(rng, m, n, -6, 6)
    d = snf_by_minors(A)
    dec = decompose(A)
    assert list(dec.torsion) == nontrivial(d)
    assert dec.free_rank == n - sum(1 for x in d if x)


def test_transpose_duality():
    # A and its transpose share torsion; free ranks differ by n - m
    rng = random.Random(11)
    for _ in range(20):
        A = random_matrix(rng, 5, 7)
        A[4] = [2 * x for x in A[3]]
        d1, d2 = decompose(A), decompose([list(c) for c in zip(*A)])
        assert d1.torsion == d2.torsion
        assert d1.free_rank - d2.free_rank == 7 - 5


def test_generator_images_substitution():
    rng = random.Random(12)
    for _ in range(20):
        A = random_matrix(rng, 6, 8, -4, 4)
        gi = generator_images(A)
        assert check_generator_images(A, gi)
        assert all(m != 1 for m in gi.moduli)
        for img in gi.images:
            assert all(0 <= x < m for x, m in zip(img, gi.moduli) if m)


def test_generator_images_generate():
    # images of the generators must span the whole canonical group
    A = matmul(matmul(random_unimodular(random.Random(13), 3), [[2, 0, 0], [0, 4, 0]]),
               random_unimodular(random.Random(14), 3))
    gi = generator_images(A)
    assert gi.moduli == (2, 4, 0)
    # the free coordinate alone must be hit with gcd 1
    from math import gcd
    g = 0
    for img in gi.images:
        g = gcd(g, img[2])
    assert g == 1


def test_format_parse_round_trip():
    for text in ["0", "C3", "Z", "Z^3", "8C2 + 2C4 + Z^2", "C2 + C6 + C12"]:
        assert format_decomposition(parse_decomposition(text)) == text
    with pytest.raises(ValueError):
        parse_decomposition("C2 + Q")
    with pytest.raises(ValueError):
        parse_decomposition("C2 + C3")


def test_validation_and_primary():
    with pytest.raises(ValueError):
        GroupDecomposition((1,), 0)
    with pytest.raises(ValueError):
        GroupDecomposition((4, 6), 0)
    with pytest.raises(ValueError):
        GroupDecomposition((2, 4), 0, primary={2: [1, 1]})
    d = GroupDecomposition((2, 12), 0, primary={2: [1, 2], 3: [1]})
    assert d.order == 24
    assert GroupDecomposition((2,), 1).order is None
    assert primary_of([2, 12, 360]) == {2: [1, 2, 3], 3: [1, 2], 5: [1]}
