"""Truncated Toeplitz operators on finite-dimensional model spaces.

Builds the matrices of ``A_phi`` on ``K_theta`` for finite Blaschke products
``theta`` and decides when they are normal, together with numerical checks
of the identities behind that characterization.
"""

from .circle import (BandLimitError, CircleGrid, DiskPoint, FourierSeries,
                     default_grid_size, inner_product, poisson_extend,
                     szego_kernel, szego_project, u_operator, v_theta)
from .disk import (BlaschkeProduct, MobiusTransform, RootRecoveryError,
                   blaschke_eval, mobius_compose)
from .model_space import (ExpansionError, ModelVector, TMBasis, conjugation,
                          crofoot, crofoot_matrix, p_theta, project_model,
                          reproducing_kernel, theta_conj, tm_basis)
from .normality import (NormalityVerdict, classify_normal, commutator_defect,
                        sedlock_condition, verify_intertwining,
                        verify_kernel_identity, verify_moment_identities,
                        verify_modulus_equality, verify_norm_identity)
from .operators import (SymbolPair, TTOMatrix, adjoint, build_tto,
                        build_tto_series, canonicalize_symbol,
                        classical_toeplitz, is_zero_tto, tto_membership)

__version__ = "0.1.0"

__all__ = [
    "BandLimitError",
    "CircleGrid",
    "DiskPoint",
    "FourierSeries",
    "default_grid_size",
    "inner_product",
    "poisson_extend",
    "szego_kernel",
    "szego_project",
    "u_operator",
    "v_theta",
    "BlaschkeProduct",
    "MobiusTransform",
    "RootRecoveryError",
    "blaschke_eval",
    "mobius_compose",
    "ExpansionError",
    "ModelVector",
    "TMBasis",
    "conjugation",
    "crofoot",
    "crofoot_matrix",
    "p_theta",
    "project_model",
    "reproducing_kernel",
    "theta_conj",
    "tm_basis",
    "NormalityVerdict",
    "classify_normal",
    "commutator_defect",
    "sedlock_condition",
    "verify_intertwining",
    "verify_kernel_identity",
    "verify_moment_identities",
    "verify_modulus_equality",
    "verify_norm_identity",
    "SymbolPair",
    "TTOMatrix",
    "adjoint",
    "build_tto",
    "build_tto_series",
    "canonicalize_symbol",
    "classical_toeplitz",
    "is_zero_tto",
    "tto_membership",
]
