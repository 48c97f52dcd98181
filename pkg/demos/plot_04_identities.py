"""
The identities behind the characterization
==========================================

Each step of the argument is an identity that can be checked numerically on
random data: the norm difference ``||A u||^2 - ||A* u||^2``, the modulus
equality for normal symbols, and the moment identities at points of the disk.
"""

from tto.suites import SUITES, run_suite

for name in SUITES:
    res = run_suite(name, trials=20, seed=3)
    print(f"{name:10s} passed={res.passed!s:5s} max defect {res.max_defect:.1e}")
