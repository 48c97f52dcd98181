"""
Model spaces and the Takenaka-Malmquist basis
=============================================

A finite Blaschke product ``theta`` of degree n cuts out an n-dimensional
subspace ``K_theta`` of the Hardy space. Here we build its orthonormal basis
on an FFT grid and check it against the reproducing kernel.
"""

import numpy as np

from tto import BlaschkeProduct, TMBasis, reproducing_kernel

theta = BlaschkeProduct((0j, 0.5 + 0.2j, -0.3j))
basis = TMBasis(theta)
print("degree", basis.dim, "grid", basis.grid.size)
print("Gram defect", basis.gram_defect())

###############################################################################
# Point evaluation in ``K_theta`` is an inner product with ``k_w``.

rng = np.random.default_rng(1)
f = basis.vector(rng.standard_normal(3) + 1j * rng.standard_normal(3))
w = 0.4 - 0.3j
kw = reproducing_kernel(basis, w)
print("f(w)        ", f(w))
print("<f, k_w>    ", f.inner(kw))
print("k_w(w)      ", kw(w).real, "=", (1 - abs(theta(w)) ** 2) / (1 - abs(w) ** 2))
