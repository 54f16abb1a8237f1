"""Period functions of Z_k-equivariant and reversible quadratic centers.

Numerical engines for the period function live in :mod:`period_atlas.dynsys`;
the exact-arithmetic monotonicity certificate lives in
:mod:`period_atlas.certify`, built on :mod:`period_atlas.exactalg`.
"""

__version__ = "0.1.0"
