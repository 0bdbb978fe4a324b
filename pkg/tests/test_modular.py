import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint

from oracles import det, matmul, random_matrix, random_unimodular, rank
from snfkit.fixtures import get_fixture
from snfkit.intutil import factorize, is_prime, prime_pool, xgcd
from snfkit.modular import (
    PrimePlan,
    assemble_invariants,
    certified_rank,
    default_beta,
    hadamard_bound,
    modular_determinants,
    modular_invariants,
    primary_invariants,
    rank_mod_p,
    snf_mod,
    torsion_multiple,
)
from snfkit.snf import smith_normal_form


def test_prime_pool():
    pool = prime_pool()
    assert len(pool) == 2048 and len(set(pool)) == 2048
    assert pool[0] > 2**15 and all(is_prime(p) for p in pool[:50])
    assert list(pool) == sorted(pool)


def test_is_prime_against_sympy():
    from sympy import isprime
    rng = random.Random(0)
    for n in list(range(200)) + [rng.getrandbits(70) for _ in range(200)] + [2**89 - 1, 2**89 + 1]:
        assert is_prime(n) == isprime(n)


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert x * a + y * b == g and g >= 0
    from math import gcd
    assert g == gcd(a, b)


def test_rank_mod_p_examples():
    assert rank_mod_p([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 5) == 3
    assert rank_mod_p([[2, 4], [1, 2]], 5) == 1
    p = 32771
    assert rank_mod_p([[p, 0], [0, 1]], p) == 1
    with pytest.raises(ValueError):
        rank_mod_p([[1]], 32769)


def test_hadamard_examples():
    assert hadamard_bound([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert hadamard_bound([[3, 4]]) == 5
    rng = random.Random(1)
    for _ in range(100):
        A = random_matrix(rng, 4, 4)
        assert hadamard_bound(A) >= abs(det(A))


def test_hadamard_dominates_all_minors():
    rng = random.Random(2)
    for _ in range(20):
        A = random_matrix(rng, 4, 3)
        b = hadamard_bound(A)
        for k in (1, 2, 3):
            for rs in combinations(range(4), k):
                for cs in combinations(range(3), k):
                    assert abs(det([[A[i][j] for j in cs] for i in rs])) <= b


def test_prime_plan_validation():
    plan = PrimePlan.for_bound(10**40)
    assert plan.needed >= 2
    with pytest.raises(ValueError):
        PrimePlan((32771, 32771), 1, 1)
    with pytest.raises(ValueError):
        PrimePlan((101,), 1, 1)


def test_certified_rank_short_circuit():
    rng = random.Random(3)
    A = random_matrix(rng, 20, 8)
    cert = certified_rank(A)
    assert cert.rank == 8 and len(cert.primes) == 1


def test_certified_rank_with_unlucky_primes():
    pool = prime_pool()
    p1, p2, p3 = pool[:3]
    A = [[p1 * p2, 0], [0, 1]]
    plan = PrimePlan((p1, p2, p3), 1, 3)
    cert = certified_rank(A, PrimePlan((p1, p2, p3), plan.bound, plan.needed))
    assert cert.ranks == [1, 1, 2] and cert.rank == 2
    assert certified_rank(A, plan, guess=True).rank == 1


def test_modular_determinant_examples():
    assert modular_determinants([[2, 0], [0, 3]], 2, 1).values == [6]
    ds = modular_determinants([[1, 0], [0, 1], [1, 1]], 2, 2)
    assert ds.values == [1, 1]
    assert ds.row_sets == [(0, 1), (0, 2)]


def test_crt_determinants_match_direct():
    rng = random.Random(4)
    done = 0
    while done < 20:
        A = random_matrix(rng, 6, 4, -50, 50)
        if rank(A) < 4:
            continue
        ds = modular_determinants(A, 4, 3)
        for rows, v in zip(ds.row_sets, ds.values):
            assert v == det([[A[i][j] for j in ds.cols] for i in rows])
            assert v != 0
        done += 1


def test_crt_large_determinants():
    rng = random.Random(5)
    A = random_matrix(rng, 7, 6, -10**12, 10**12)
    ds = modular_determinants(A, 6, 2, early_stop=False)
    for rows, v in zip(ds.row_sets, ds.values):
        assert v == det([[A[i][j] for j in ds.cols] for i in rows])


def test_torsion_multiple_printed_values():
    a1 = get_fixture("determinants-A1").values
    assert torsion_multiple(a1[:2]).S == 7629394531250
    assert torsion_multiple(get_fixture("determinants-A2").values).S == 320
    assert torsion_multiple([6]).S == 6
    with pytest.raises(ValueError):
        torsion_multiple([0, 0])


def test_partial_A2_gcd_is_four_as_printed():
    # gcd of the two values as bundled
    assert torsion_multiple(get_fixture("determinants-A2-partial").values).S == 4


def test_factorize_examples():
    assert factorize(7629394531250) == {2: 1, 5: 18}
    assert factorize(320) == {2: 6, 5: 1}
    assert factorize(1) == {}


def test_factorize_against_sympy():
    rng = random.Random(6)
    for _ in range(40):
        n = rng.getrandbits(rng.randint(2, 90)) + 1
        f = factorize(n)
        assert f.complete and dict(f) == factorint(n)
        assert f.value() == n


def test_factorize_budget_residual():
    n = (2**61 - 1) * (2**89 - 1) * (2**107 - 1) * (2**127 - 1) ** 2 * 999983
    f = factorize(n, time_budget=0.0)
    assert f.value() == n
    assert f.get(999983) == 1
    assert not f.complete


def test_snf_mod_examples():
    assert [v for v in snf_mod([[2, 0], [0, 3]], 6) if v > 1] == [6]
    assert snf_mod([[2]], 4) == [2]
    rng = random.Random(7)
    D = [[2, 0, 0], [0, 2, 0], [0, 0, 4]]
    for _ in range(10):
        A = matmul(matmul(random_unimodular(rng, 3), D), random_unimodular(rng, 3))
        assert snf_mod(A, 16) == [2, 2, 4]


def test_primary_examples():
    D = [[2, 0, 0], [0, 4, 0], [0, 0, 8]]
    pi = primary_invariants(D, 2, 4)
    assert pi.exponents == [1, 2, 3] and pi.exact
    pi = primary_invariants(D, 2, 3)
    assert pi.exponents == [1, 2] and pi.saturated == 1


def test_default_beta():
    assert 5 ** default_beta(5) < 2**62 <= 5 ** (default_beta(5) + 1)
    assert default_beta(5, 5**3 * 2) == 4


def test_assemble_examples():
    assert assemble_invariants({2: [1] * 8 + [2, 2]}) == [2] * 8 + [4, 4]
    assert assemble_invariants({5: [1] * 18}) == [5] * 18
    assert assemble_invariants({2: [1], 3: [1]}) == [6]
    out = assemble_invariants({2: [1, 3], 3: [2], 5: [1, 1, 1]})
    assert out == [5, 10, 8 * 9 * 5]


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(1, 4), min_size=1, max_size=4),
                       min_size=1))
def test_assemble_properties(parts):
    out = assemble_invariants(parts)
    assert all(b % a == 0 for a, b in zip(out, out[1:]))
    prod_out = 1
    for x in out:
        prod_out *= x
    prod_in = 1
    for p, es in parts.items():
        for e in es:
            prod_in *= p**e
    assert prod_out == prod_in


def test_pipeline_matches_integer_engine():
    rng = random.Random(8)
    for _ in range(60):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        A = random_matrix(rng, m, n)
        if rng.random() < 0.4 and m > 2:
            A[0] = [2 * a - 4 * b for a, b in zip(A[1], A[2])]
        if not any(any(r) for r in A):
            continue
        s = smith_normal_form(A)
        r = modular_invariants(A)
        assert (r.torsion, r.rank, r.free_rank) == (s.torsion, s.rank, n - s.rank)


def test_pipeline_large_S_uses_primary_path():
    D = [[0] * 5 for _ in range(4)]
    for i, v in enumerate([2**30, 2**31 * 3, 2**33 * 3**4 * 7, 2**34 * 3**4 * 7 * 11]):
        D[i][i] = v
    rng = random.Random(9)
    A = matmul(matmul(random_unimodular(rng, 4), D), random_unimodular(rng, 5))
    r = modular_invariants(A)
    assert r.S >= 2**62
    assert r.torsion == smith_normal_form(A).torsion
    assert r.free_rank == 1


def test_S_divisible_by_torsion_order():
    rng = random.Random(10)
    for _ in range(10):
        D = [[0] * 6 for _ in range(6)]
        for i, v in enumerate([1, 1, 2, 6, 12, 0]):
            D[i][i] = v
        A = matmul(matmul(random_unimodular(rng, 6), D), random_unimodular(rng, 6))
        r = modular_invariants(A)
        assert r.S % 144 == 0 and r.torsion == [2, 6, 12]
