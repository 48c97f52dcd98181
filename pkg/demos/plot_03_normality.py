"""
Deciding normality
==================

When ``theta(0) = 0`` write ``phi = c0 + phi1 + conj(phi2)`` with ``phi1`` and
``phi2`` in ``K_theta`` vanishing at the origin. ``A_phi`` is normal exactly
when ``phi2`` is a unimodular multiple of ``phi1`` or of ``theta conj(phi1)``.
The classifier below reads this off the symbol; the commutator norm is the
independent check.
"""

from tto import classify_normal
from tto.instances import CONSTRUCTIONS, generate_instance

for construction in CONSTRUCTIONS:
    inst = generate_instance(5, 7, construction)
    v = classify_normal(inst.symbol, with_oracle=True)
    alpha = "-" if v.alpha is None else f"{v.alpha:.3f}"
    print(f"{construction:12s} {v.kind:17s} alpha={alpha:18s} "
          f"||[A, A*]||_F = {v.commutator_defect:.2e}")
