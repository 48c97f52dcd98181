"""
Truncated Toeplitz matrices
===========================

``A_phi f = P_theta(phi f)`` compresses multiplication by ``phi`` to the model
space. For ``theta = z^n`` the matrix is the classical Toeplitz matrix of the
Fourier coefficients of ``phi``.
"""

import numpy as np

from tto import BlaschkeProduct, FourierSeries, TMBasis, build_tto_series

n = 4
basis = TMBasis(BlaschkeProduct.monomial(n))
phi = FourierSeries.from_dict({-2: 0.5j, -1: 1.0, 0: 2.0, 1: -1.0, 3: 0.25}, band_limit=8)
A = build_tto_series(basis, phi)
T = np.array([[phi[i - j] for j in range(n)] for i in range(n)])
np.set_printoptions(precision=3, suppress=True)
print(A.entries)
print("max |A - T| =", np.max(np.abs(A.entries - T)))

###############################################################################
# For a general inner function the entries are no longer constant on
# diagonals, but the matrix still depends only on the symbol modulo
# ``theta H^2 + conj(theta H^2)``.

basis = TMBasis(BlaschkeProduct((0j, 0.6, -0.4j)))
print(build_tto_series(basis, phi).entries)
