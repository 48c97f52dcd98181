"""
Moving theta(0) around
======================

The classifier assumes ``theta(0) = 0``. The Crofoot transform ``J`` is a
unitary map ``K_theta -> K_{u o theta}`` for a disk automorphism ``u`` that
carries truncated Toeplitz operators to truncated Toeplitz operators. Since
``J`` is unitary it preserves normality, so any ``theta`` can be reduced to
one vanishing at the origin.
"""

import numpy as np

from tto import (MobiusTransform, TMBasis, build_tto, commutator_defect,
                 crofoot_matrix, mobius_compose, tto_membership)
from tto.instances import generate_instance

inst = generate_instance(4, 11, "conj_linked")
basis = inst.basis
u = MobiusTransform(0.4 + 0.2j)
composed = mobius_compose(inst.theta, u)
print("|theta(0)|       ", abs(inst.theta(0)))
print("|(u o theta)(0)| ", abs(composed(0)))

J, target = crofoot_matrix(basis, u, TMBasis(composed, basis.grid))
print("unitarity defect ", np.max(np.abs(J.conj().T @ J - np.eye(basis.dim))))

###############################################################################
# The transported operator is again truncated Toeplitz, now on the new model
# space, and it is still normal.

A = build_tto(basis, inst.symbol).entries
B = J @ A @ J.conj().T
residual, symbol = tto_membership(B, target)
print("membership of B  ", residual)
print("commutator A, B  ", commutator_defect(A), commutator_defect(B))
