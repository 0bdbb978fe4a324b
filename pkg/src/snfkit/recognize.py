"""Abelian group decompositions from relation matrices.

A relation matrix has one row per relation and one column per generator.
The group it presents is C_{l_1} + ... + C_{l_r} + Z^f, with l_i | l_{i+1}.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .exactmat import as_rows
from .intutil import factorize
from .modular import assemble_invariants, modular_invariants
from .snf import EntryExplosion, SnfOptions, SnfResult, smith_normal_form

PIPELINES = ("integer", "modular", "auto")
DEFAULT_BIT_CEILING = 4096


@dataclass(frozen=True)
class GroupDecomposition:
    torsion: tuple[int, ...]
    free_rank: int
    primary: dict | None = field(default=None, compare=False)
    source: str = field(default="", compare=False)

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(x < 2 for x in t):
            raise ValueError("torsion invariants must be at least 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if self.primary is not None:
            if [x for x in assemble_invariants(self.primary) if x > 1] != list(t):
                raise ValueError("primary invariants do not assemble to the torsion")

    @property
    def order(self) -> int | None:
        """Group order, None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for x in self.torsion:
            out *= x
        return out

    def __str__(self) -> str:
        return format_decomposition(self)


def primary_of(torsion) -> dict[int, list[int]]:
    """p -> sorted exponents of the p-parts of a torsion chain."""
    out: dict[int, list[int]] = {}
    for x in torsion:
        for p, e in factorize(x).items():
            out.setdefault(p, []).append(e)
    return {p: sorted(v) for p, v in sorted(out.items())}


def from_snf(result: SnfResult, source: str = "integer") -> GroupDecomposition:
    n = result.shape[1]
    t = tuple(result.torsion)
    return GroupDecomposition(t, n - result.rank, primary_of(t), source)


def decompose(A, pipeline: str = "integer", opts: SnfOptions | None = None,
              bit_ceiling: int = DEFAULT_BIT_CEILING) -> GroupDecomposition:
    """Decompose the group presented by relation matrix A.

    ``auto`` runs integer elimination and switches to the modular route
    if an entry grows past ``bit_ceiling`` bits.
    """
    if pipeline not in PIPELINES:
        raise ValueError(f"pipeline must be one of {PIPELINES}")
    if pipeline == "modular":
        return _from_modular(A, "modular")
    opts = opts or SnfOptions()
    if pipeline == "integer":
        return from_snf(smith_normal_form(A, opts), "integer")
    auto_opts = SnfOptions(**{**{f: getattr(opts, f) for f in opts.__dataclass_fields__},
                              "bit_ceiling": bit_ceiling, "transforms": False})
    try:
        return from_snf(smith_normal_form(A, auto_opts), "auto:integer")
    except EntryExplosion:
        return _from_modular(A, "auto:modular")


def _from_modular(A, source: str) -> GroupDecomposition:
    res = modular_invariants(A)
    return GroupDecomposition(tuple(res.torsion), res.free_rank, primary_of(res.torsion), source)


@dataclass
class GeneratorImages:
    """Coordinates of each original generator in the canonical group.

    ``moduli`` has one entry per coordinate: l_k for torsion coordinates and
    0 for free ones.
    """

    images: list[tuple[int, ...]]
    moduli: tuple[int, ...]

    def relation_holds(self, row) -> bool:
        for k, mod in enumerate(self.moduli):
            s = sum(a * img[k] for a, img in zip(row, self.images))
            if (s % mod) if mod else s:
                return False
        return True


def generator_images(A, result: SnfResult | None = None) -> GeneratorImages:
    """Image of generator j is row j of Q, torsion coordinates taken mod l_k."""
    if result is None:
        result = smith_normal_form(A, SnfOptions(transforms=True))
    if result.Q is None:
        raise ValueError("generator images need the column transform Q")
    n = result.shape[1]
    diag = result.diagonal + [0] * (n - len(result.diagonal))
    keep = [k for k in range(n) if diag[k] != 1]
    moduli = tuple(diag[k] for k in keep)
    images = [tuple(row[k] % diag[k] if diag[k] else row[k] for k in keep) for row in result.Q]
    return GeneratorImages(images, moduli)


def check_generator_images(A, gi: GeneratorImages) -> bool:
    """Every relation row of A maps to the zero element."""
    return all(gi.relation_holds(r) for r in as_rows(A))


def format_decomposition(d: GroupDecomposition) -> str:
    """e.g. "8C2 + 2C4 + Z^2"; "0" for the trivial group."""
    parts = []
    for value, mult in sorted(Counter(d.torsion).items()):
        parts.append(f"{mult}C{value}" if mult > 1 else f"C{value}")
    if d.free_rank == 1:
        parts.append("Z")
    elif d.free_rank > 1:
        parts.append(f"Z^{d.free_rank}")
    return " + ".join(parts) if parts else "0"


_TERM = re.compile(r"^(?:(\d+)?C(\d+)|Z(?:\^(\d+))?)$")


def parse_decomposition(text: str) -> GroupDecomposition:
    """Inverse of :func:`format_decomposition`."""
    text = text.strip()
    if text == "0":
        return GroupDecomposition((), 0)
    torsion: list[int] = []
    free = 0
    for term in text.split("+"):
        mt = _TERM.match(term.strip())
        if not mt:
            raise ValueError(f"cannot parse term {term.strip()!r}")
        mult, value, zexp = mt.groups()
        if value is not None:
            torsion += [int(value)] * int(mult or 1)
        else:
            free += int(zexp or 1)
    return GroupDecomposition(tuple(sorted(torsion)), free)
