"""Exact replay of the monotonicity certificate for the Loud sub-family F = D + 1."""

from .errors import BoundTooLoose, CertificateError
from .pipeline import certify_theoremB
from .polys import BRANCHES, ProofPolynomials, build_proof_polys
from .report import CertificateReport, Step
from .steps import (
    analyze_discriminant,
    bound_root,
    bounding_poly,
    check_elementary_factors,
    check_P_negative,
    check_subintervals,
    compute_R2,
    count_open,
    nonvanishing_on_box,
    replay_D13,
    replay_D23,
    spot_check_bound,
    upper_bound_poly,
)

__all__ = [name for name in dir() if not name.startswith("_")]
