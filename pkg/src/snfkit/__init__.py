"""snfkit: Smith normal form of integer matrices and abelian group invariants.

Integer elimination with selectable pivot strategies and best-remainder
cascading, a Hermite normal form baseline, a modular (congruential) pipeline,
lattice reduction, and group recognition on top.
"""

from . import kernels
from .exactmat import ExactMatrix, MetricKind, SparseMatrix, Workspace
from .fixtures import fixture_matrix, fixture_names, get_fixture
from .hnf import HnfResult, hermite_normal_form, snf_from_hnf
from .latred import extract_free_part, mlll, pairwise_row_reduce
from .modular import (
    PrimePlan,
    assemble_invariants,
    certified_rank,
    factorize,
    hadamard_bound,
    modular_determinants,
    modular_invariants,
    primary_invariants,
    rank_mod_p,
    snf_mod,
    torsion_multiple,
)
from .matrixio import parse_matrix, read_matrix
from .pivoting import PivotChoice, PivotStrategy, pivot_metrics, select_pivot
from .planted import generate_planted
from .recognize import (
    GroupDecomposition,
    decompose,
    format_decomposition,
    generator_images,
    parse_decomposition,
)
from .snf import (
    EntryExplosion,
    ReductionTrace,
    SnfOptions,
    SnfResult,
    divisibility_fixup,
    eliminate_step,
    gcd_cascade,
    smith_normal_form,
)

__version__ = "0.1.0"

__all__ = [
    "kernels", "ExactMatrix", "MetricKind", "SparseMatrix", "Workspace",
    "fixture_matrix", "fixture_names", "get_fixture", "parse_matrix", "read_matrix", "generate_planted",
    "HnfResult", "hermite_normal_form", "snf_from_hnf",
    "extract_free_part", "mlll", "pairwise_row_reduce",
    "PrimePlan", "assemble_invariants", "certified_rank", "factorize", "hadamard_bound",
    "modular_determinants", "modular_invariants", "primary_invariants", "rank_mod_p", "snf_mod",
    "torsion_multiple",
    "PivotChoice", "PivotStrategy", "pivot_metrics", "select_pivot",
    "GroupDecomposition", "decompose", "format_decomposition", "generator_images", "parse_decomposition",
    "EntryExplosion", "ReductionTrace", "SnfOptions", "SnfResult", "divisibility_fixup", "eliminate_step",
    "gcd_cascade", "smith_normal_form",
]
