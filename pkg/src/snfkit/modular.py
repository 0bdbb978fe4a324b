"""Congruential route to the torsion invariants.

Rank is certified over enough prime fields. A few rank-sized integer
subdeterminants are rebuilt by Chinese remaindering, and their gcd S is a
multiple of the torsion order. The invariants then come from elimination
over Z_S, or prime by prime over Z_{p^beta} when S is too large for a word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, prod

from . import kernels
from .exactmat import as_rows
from .intutil import Factorization, ceil_sqrt, factorize, is_prime, prime_pool, valuation, xgcd
from .snf import divisibility_fixup

WORD_LIMIT = 2**62
# The compiled kernels hold residues in int64 and form products of two.
_KERNEL_PRIME_LIMIT = 2**31


def _field_kernels(p: int):
    if p < _KERNEL_PRIME_LIMIT:
        return kernels
    from . import _pykernels

    return _pykernels


# -- bounds, plans, rank ----------------------------------------------------


def hadamard_bound(A) -> int:
    """Bound on |det| of every square submatrix of A.

    Product of the min(m, n) largest row norms, each rounded up to an integer
    (and at least 1, so that zero rows do not collapse the bound).
    """
    rows = as_rows(A)
    k = min(len(rows), len(rows[0]))
    norms = sorted((ceil_sqrt(sum(x * x for x in r)) for r in rows), reverse=True)
    return prod(max(1, x) for x in norms[:k])


@dataclass(frozen=True)
class PrimePlan:
    primes: tuple[int, ...]
    bound: int
    needed: int

    @classmethod
    def for_bound(cls, bound: int, pool: tuple[int, ...] | None = None) -> "PrimePlan":
        pool = pool or prime_pool()
        target = 2 * bound
        acc, needed = 1, 0
        while acc <= target:
            if needed == len(pool):
                pool = prime_pool(2 * len(pool))
            acc *= pool[needed]
            needed += 1
        return cls(tuple(pool), bound, needed)

    @classmethod
    def for_matrix(cls, A) -> "PrimePlan":
        return cls.for_bound(hadamard_bound(A))

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("plan primes must be distinct")
        if any(p <= 2**14 for p in self.primes):
            raise ValueError("plan primes must exceed 2^14")
        if prod(self.primes[: self.needed]) <= 2 * self.bound:
            raise ValueError("first `needed` primes do not exceed 2*bound")


def _residues(rows, p):
    return [[x % p for x in r] for r in rows]


def rank_mod_p(A, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rows = as_rows(A)
    return _field_kernels(p).modp_echelon(_residues(rows, p), p)[0]


@dataclass
class RankCertificate:
    rank: int
    ranks: list[int]
    primes: list[int]
    certified: bool


def certified_rank(A, plan: PrimePlan | None = None, guess: bool = False, seed: int | None = None) -> RankCertificate:
    """Rank over Q as the largest rank mod p over primes whose product beats
    the determinant bound; stops early once full rank is seen.

    ``guess`` uses a single prime (a seeded random pool member when ``seed``
    is given) and the answer is then not certified.
    """
    rows = as_rows(A)
    full = min(len(rows), len(rows[0]))
    plan = plan or PrimePlan.for_matrix(rows)
    if guess:
        p = random.Random(seed).choice(plan.primes) if seed is not None else plan.primes[0]
        r = rank_mod_p(rows, p)
        return RankCertificate(r, [r], [p], r == full)
    ranks, used = [], []
    for p in plan.primes[: plan.needed]:
        r = kernels.modp_echelon(_residues(rows, p), p, full)[0]
        ranks.append(r)
        used.append(p)
        if r == full:
            break
    return RankCertificate(max(ranks), ranks, used, True)


# -- determinants -------------------------------------------------------------


@dataclass
class DeterminantSet:
    values: list[int]
    row_sets: list[tuple[int, ...]]
    cols: tuple[int, ...]
    primes: list[int]


def _crt_step(x: int, M: int, a: int, p: int) -> int:
    """The x' in [0, M*p) with x' = x mod M and x' = a mod p."""
    t = (a - x) * pow(M % p, -1, p) % p
    return x + M * t


def _lift(x: int, M: int) -> int:
    return x - M if x > M // 2 else x


def modular_determinants(A, r: int, count: int = 5, plan: PrimePlan | None = None,
                         early_stop: bool = True) -> DeterminantSet:
    """``count`` integer r x r subdeterminants sharing r-1 rows and r columns.

    Rows and columns are chosen by elimination mod the first prime whose rank
    is r; the final row of each minor is another row independent of the
    shared r-1 (over that prime, so every minor is nonzero).
    """
    rows = as_rows(A)
    if r <= 0:
        return DeterminantSet([], [], (), [])
    plan = plan or PrimePlan.for_matrix(rows)
    basis_p = None
    for p in plan.primes:
        rk, indep, _ = kernels.modp_echelon(_residues(rows, p), p, r)
        if rk == r:
            basis_p = p
            break
    if basis_p is None:
        raise ValueError(f"no plan prime has rank {r}")
    p = basis_p
    sel = [rows[i] for i in indep]
    _, _, pcols = kernels.modp_echelon(_residues(sel, p), p, r)
    # echelon leading columns of the independent rows give a nonsingular minor
    cols = tuple(sorted(pcols))
    sub = [[row[c] for c in cols] for row in rows]
    fixed = indep[: r - 1]
    fixed_rows = _residues([sub[i] for i in fixed], p)
    finals = []
    for i in range(len(rows)):
        if i in fixed:
            continue
        if kernels.modp_echelon(fixed_rows + _residues([sub[i]], p), p, r)[0] == r:
            finals.append(i)
            if len(finals) == count:
                break
    row_sets = [tuple(fixed) + (i,) for i in finals]
    minors = [[sub[i] for i in rs] for rs in row_sets]
    bound = hadamard_bound([sub[i] for i in sorted(set().union(*row_sets))])
    target = 2 * bound

    x = [0] * len(minors)
    M = 1
    used = []
    stable = 0
    prev = None
    for q in plan.primes:
        res = [kernels.modp_det(_residues(mat, q), q) for mat in minors]
        x = [_crt_step(xi, M, a, q) for xi, a in zip(x, res)]
        M *= q
        used.append(q)
        lifted = [_lift(xi, M) for xi in x]
        if M > target:
            break
        if early_stop:
            stable = stable + 1 if lifted == prev else 0
            if stable >= 2:
                break
        prev = lifted
    else:
        raise RuntimeError("prime pool exhausted before the determinant bound")
    return DeterminantSet(lifted, row_sets, cols, used)


@dataclass
class TorsionMultiple:
    S: int
    determinants: list[int]
    factorization: Factorization = field(default_factory=Factorization)


def torsion_multiple(determinants) -> TorsionMultiple:
    dets = list(determinants)
    S = 0
    for d in dets:
        S = gcd(S, d)
    if S == 0:
        raise ValueError("all determinants are zero; the rank used was wrong")
    return TorsionMultiple(S, dets)


# -- elimination over Z_S --------------------------------------------------------


def snf_mod(A, S: int) -> list[int]:
    """Diagonal of A over Z_S, each entry as gcd(d_i, S), as a divisibility
    chain of length min(m, n). An entry equal to S stands for 0 mod S."""
    if S < 2:
        raise ValueError("snf_mod needs S >= 2")
    a = [[x % S for x in r] for r in as_rows(A)]
    m, n = len(a), len(a[0])
    diag = []
    for k in range(min(m, n)):
        best = None
        for i in range(k, m):
            row = a[i]
            for j in range(k, n):
                if row[j]:
                    g = gcd(row[j], S)
                    if best is None or g < best[0]:
                        best = (g, i, j)
                        if g == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, s, t = best
        _cascade(a, s, t, k, S)
        v = a[s][t]
        g = gcd(v, S)
        inv = pow(v // g, -1, S // g) if S // g > 1 else 0
        prow = a[s]
        for i in range(k, m):
            w = a[i][t]
            if i != s and w:
                q = (w // g) * inv % S
                ri = a[i]
                for j in range(k, n):
                    if prow[j]:
                        ri[j] = (ri[j] - q * prow[j]) % S
        # the row of the pivot is cleared by column operations, which only
        # touch row s now that column t is zero elsewhere
        for j in range(k, n):
            if j != t:
                prow[j] = 0
        a[s], a[k] = a[k], a[s]
        for row in a[k:]:
            row[t], row[k] = row[k], row[t]
        diag.append(g)
    diag += [S] * (min(m, n) - len(diag))
    return divisibility_fixup(diag)


def _cascade(a, s: int, t: int, k: int, S: int) -> None:
    """Until gcd(pivot, S) divides its row and column, merge an offending
    entry into the pivot with a 2x2 unimodular gcd step."""
    m, n = len(a), len(a[0])
    while True:
        g = gcd(a[s][t], S)
        if g == 1:
            return
        for j in range(k, n):
            w = a[s][j]
            if j != t and w % g:
                _gcd_cols(a, s, t, j, k, S)
                break
        else:
            for i in range(k, m):
                w = a[i][t]
                if i != s and w % g:
                    _gcd_rows(a, s, t, i, S)
                    break
            else:
                return


def _gcd_cols(a, s, t, j, k, S):
    v, w = a[s][t], a[s][j]
    g, x, y = xgcd(v, w)
    vg, wg = v // g, w // g
    for row in a[k:]:
        ct, cj = row[t], row[j]
        row[t] = (x * ct + y * cj) % S
        row[j] = (vg * cj - wg * ct) % S


def _gcd_rows(a, s, t, i, S):
    v, w = a[s][t], a[i][t]
    g, x, y = xgcd(v, w)
    vg, wg = v // g, w // g
    rs, ri = a[s], a[i]
    a[s] = [(x * p + y * q) % S for p, q in zip(rs, ri)]
    a[i] = [(vg * q - wg * p) % S for p, q in zip(rs, ri)]


# -- primary invariants and assembly ----------------------------------------------


@dataclass
class PrimaryInvariants:
    p: int
    beta: int
    exponents: list[int]  # exact exponents >= 1, ascending
    saturated: int = 0  # invariants whose exponent is at least beta

    @property
    def exact(self) -> bool:
        return self.saturated == 0


def primary_invariants(A, p: int, beta: int, rank: int | None = None) -> PrimaryInvariants:
    """p-primary invariants read off from elimination over Z_{p^beta}.

    A diagonal value p^beta (zero mod p^beta) inside the first ``rank``
    positions means the exponent is beta or more; it is counted in
    ``saturated``. Without ``rank`` every zero is taken as saturated.
    """
    if beta < 1:
        raise ValueError("beta must be at least 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    mod = p**beta
    vals = snf_mod(A, mod)
    if rank is not None:
        vals = vals[:rank]
    exps, sat = [], 0
    for v in vals:
        if v == mod:
            sat += 1
        elif v > 1:
            exps.append(valuation(v, p))
    return PrimaryInvariants(p, beta, sorted(exps), sat)


def default_beta(p: int, S: int | None = None) -> int:
    """Largest beta with p^beta < 2^62, capped at v_p(S) + 1 when S is known."""
    beta = 1
    while p ** (beta + 1) < WORD_LIMIT:
        beta += 1
    if S is not None:
        beta = min(beta, valuation(S, p) + 1)
    return max(beta, 1)


def assemble_invariants(parts) -> list[int]:
    """Combine per-prime exponent lists (or PrimaryInvariants, or chains of
    pairwise coprime parts given as ``(modulus, chain)``) into one chain,
    aligning each part's largest entries with each other."""
    chains = []
    items = parts.items() if isinstance(parts, dict) else parts
    for key, val in items:
        if isinstance(val, PrimaryInvariants):
            if not val.exact:
                raise ValueError(f"exponents for p={val.p} are not exact")
            chains.append([val.p**e for e in sorted(val.exponents)])
        elif key == "chain":
            chains.append(sorted(val))
        else:
            chains.append([key**e for e in sorted(val) if e > 0])
    length = max((len(c) for c in chains), default=0)
    out = [1] * length
    for c in chains:
        for off, v in enumerate(reversed(c)):
            out[length - 1 - off] *= v
    return out


# -- full pipeline ----------------------------------------------------------------


@dataclass
class ModularResult:
    torsion: list[int]
    rank: int
    free_rank: int
    S: int
    determinants: list[int]
    factorization: dict
    primary: dict[int, list[int]]
    primes_used: int
    max_modulus_bits: int


def modular_invariants(A, count: int = 5, plan: PrimePlan | None = None,
                       factor_budget: float = 10.0) -> ModularResult:
    """Torsion invariants and free rank by the modular route."""
    rows = as_rows(A)
    n = len(rows[0])
    plan = plan or PrimePlan.for_matrix(rows)
    cert = certified_rank(rows, plan)
    r = cert.rank
    used = len(cert.primes)
    if r == 0:
        return ModularResult([], 0, n, 1, [], {}, {}, used, 0)
    dets = modular_determinants(rows, r, count, plan)
    used += len(dets.primes)
    tm = torsion_multiple(dets.values)
    S = tm.S
    if S == 1:
        return ModularResult([], r, n - r, 1, dets.values, {}, {}, used, 0)
    if S < WORD_LIMIT:
        chain = [v for v in snf_mod(rows, S)[:r] if v > 1]
        fac = factorize(S, factor_budget)
        primary = _primary_from_chain(chain, fac)
        return ModularResult(chain, r, n - r, S, dets.values, dict(fac), primary, used, S.bit_length())
    fac = factorize(S, factor_budget)
    parts = []
    primary = {}
    top_bits = 0
    for p, e in fac.items():
        beta = default_beta(p, S)
        pi = primary_invariants(rows, p, beta, r)
        if not pi.exact:
            pi = primary_invariants(rows, p, e + 1, r)
        top_bits = max(top_bits, (p**pi.beta).bit_length())
        primary[p] = pi.exponents
        parts.append((p, pi))
    for c, e in fac.unfactored.items():
        mod = c**e
        parts.append(("chain", [v for v in snf_mod(rows, mod)[:r] if v > 1]))
        top_bits = max(top_bits, mod.bit_length())
    chain = [v for v in assemble_invariants(parts) if v > 1]
    return ModularResult(chain, r, n - r, S, dets.values, dict(fac), primary, used, top_bits)


def _primary_from_chain(chain, fac) -> dict[int, list[int]]:
    out = {}
    for p in fac:
        exps = sorted(valuation(v, p) for v in chain if v % p == 0)
        if exps:
            out[p] = exps
    return out
