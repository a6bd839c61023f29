"""Exact-arithmetic semigroup expansions of higher-order Lie algebras.

The library builds and verifies multibracket Lie algebras over exact
rationals: generalized Jacobi checking, matrix realizations, semigroup
expansions, zero-element reductions, and resonant subalgebra extraction.
Hot kernels run in a compiled extension when available (``BACKEND`` says
which one is active; set SEXPAND_BACKEND=pure to force the fallback).
"""

from ._kernels import BACKEND
from .combinatorics import (
    alternating_parity_sum,
    canonical_antisym,
    contract_antisym,
    generalized_delta,
    permutation_parity,
)
from .expansion import ExpandedAlgebra, PairBasis, s_expand, zero_reduce, zero_split
from .multialgebra import (
    CheckResult,
    GjiReport,
    MultiAlgebra,
    StructureTensor,
    SubspaceSplit,
    check_gji,
    check_reduction_condition,
    check_submultialgebra,
    reduced_multialgebra,
)
from .realization import (
    MatrixRep,
    extract_constants,
    gji_lhs,
    multibracket,
    verify_identity,
)
from .resonance import (
    ClosureStructure,
    ReductionPartition,
    ResonantSubalgebra,
    SemigroupDecomposition,
    SubspaceDecomposition,
    check_reduction_partition,
    check_resonance,
    closure_sets,
    reduce_resonant,
    resonant_subalgebra,
    search_resonant,
)
from .semigroup import Semigroup, gen_se, selector_n, validate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CheckResult",
    "ClosureStructure",
    "ExpandedAlgebra",
    "GjiReport",
    "MatrixRep",
    "MultiAlgebra",
    "PairBasis",
    "ReductionPartition",
    "ResonantSubalgebra",
    "Semigroup",
    "SemigroupDecomposition",
    "StructureTensor",
    "SubspaceDecomposition",
    "SubspaceSplit",
    "alternating_parity_sum",
    "canonical_antisym",
    "check_gji",
    "check_reduction_condition",
    "check_reduction_partition",
    "check_resonance",
    "check_submultialgebra",
    "closure_sets",
    "contract_antisym",
    "extract_constants",
    "gen_se",
    "generalized_delta",
    "gji_lhs",
    "multibracket",
    "permutation_parity",
    "reduce_resonant",
    "reduced_multialgebra",
    "resonant_subalgebra",
    "s_expand",
    "search_resonant",
    "selector_n",
    "validate",
    "verify_identity",
    "zero_reduce",
    "zero_split",
]
