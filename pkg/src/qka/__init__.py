"""Quantum knot asymptotics toolkit.

Exact and arbitrary-precision colored Jones evaluation for T(2,2a+1) and its
(2,2b+1)-cables, the saddle-point expansion of those invariants, and the two
independent topological quantities the expansion coefficients encode:
SL(2,C) Chern-Simons invariants and twisted Reidemeister torsions.
"""

__version__ = "0.1.0"

DEFAULT_PRECISION = 256
