"""Basis-relative incompatibility of quantum measurements.

Decides majorization preorders between overlap matrices, produces
post-processing matrices or separating convex witnesses, evaluates scalar
incompatibility quantifiers, and constructs dephasing-sequence emulations.
"""

from .core import (
    BISTOCHASTIC,
    COLUMN_STOCHASTIC,
    Basis,
    DensityState,
    OverlapMatrix,
    Povm,
    bases_equal,
    dephase,
    dephase_operator,
    fourier_basis,
    measure_distribution,
    overlap_matrix,
    overlap_matrix_povm,
    pad_povms,
)
from .emulation import DephasingSequence, build_emulation, emulation_residual, probability_chain_residual
from .errors import (
    DecompositionError,
    DimensionMismatchError,
    IndeterminateError,
    InvariantViolationError,
    QincompatError,
)
from .lp import LinearProgram, solve_feasibility
from .majorization import (
    MajorizationDecision,
    PiecewiseLinearConvex,
    TTransform,
    matrix_majorizes,
    qubit_bloch_angle,
    ttransform_decompose,
    ttransform_product,
    unistochastic_lift,
    vector_majorizes,
)
from .monotones import (
    REL_ENTROPY,
    TWO_COHERENCE,
    CoherenceAverage,
    ConvexFunctional,
    builtin_functionals,
    coherence_average,
    f_phi,
    g_psi,
    rel_entropy_coherence,
    subentropy,
    two_coherence,
    two_coherence_kappa,
    von_neumann_entropy,
)
from .parent import ParentDecision, default_basis_samples, is_parent, parent_implies_relative
from .sampling import haar_random_basis, random_povm, rng_from_seed
from .serialization import dump_object, load_object
from .uncertainty import (
    UncertaintyReport,
    check_entropic_bounds,
    mu_bound,
    q_bound,
    q_exact,
    renyi_entropy,
    sum_variance_sup,
)

__version__ = "0.1.0"

__all__ = [
    "BISTOCHASTIC",
    "COLUMN_STOCHASTIC",
    "Basis",
    "CoherenceAverage",
    "ConvexFunctional",
    "DecompositionError",
    "DensityState",
    "DephasingSequence",
    "DimensionMismatchError",
    "IndeterminateError",
    "InvariantViolationError",
    "LinearProgram",
    "MajorizationDecision",
    "OverlapMatrix",
    "ParentDecision",
    "PiecewiseLinearConvex",
    "Povm",
    "QincompatError",
    "REL_ENTROPY",
    "TTransform",
    "TWO_COHERENCE",
    "UncertaintyReport",
    "bases_equal",
    "build_emulation",
    "builtin_functionals",
    "check_entropic_bounds",
    "coherence_average",
    "default_basis_samples",
    "dephase",
    "dephase_operator",
    "dump_object",
    "emulation_residual",
    "f_phi",
    "fourier_basis",
    "g_psi",
    "haar_random_basis",
    "is_parent",
    "load_object",
    "matrix_majorizes",
    "measure_distribution",
    "mu_bound",
    "overlap_matrix",
    "overlap_matrix_povm",
    "pad_povms",
    "parent_implies_relative",
    "probability_chain_residual",
    "q_bound",
    "q_exact",
    "qubit_bloch_angle",
    "random_povm",
    "rel_entropy_coherence",
    "renyi_entropy",
    "rng_from_seed",
    "solve_feasibility",
    "subentropy",
    "sum_variance_sup",
    "two_coherence",
    "two_coherence_kappa",
    "ttransform_decompose",
    "ttransform_product",
    "unistochastic_lift",
    "vector_majorizes",
    "von_neumann_entropy",
]
