"""Numerical engines: vector fields, potential chart, quadrature and return maps."""

from .errors import (
    ConvergenceFailure,
    DomainError,
    DynsysError,
    EscapedAnnulus,
    MaxTimeExceeded,
    NoBracket,
    NotNormalized,
    PoleError,
    ZeroCoefficient,
)
from .fields import (
    OrbitMap,
    SecondCenter,
    ZkReduction,
    asymptotic_period,
    closed_form_period,
    loud_field,
    map_zk_orbit,
    normalize_zk,
    p2_constant,
    second_center_transform,
    zk_field,
    zk_to_loud,
)
from .params import CHARTS, METHODS, LoudParams, PeriodCurve, PlanarState, ZkParams
from .potential import (
    criterion_f,
    curve_gap,
    involution_sigma,
    involution_sigma_inverse,
    pi_sigma,
    potential_terms,
    psi1,
    psi2,
    turning_points,
    w_star,
)
from .quadrature import abelian_triple, adaptive_gauss, period_quadrature
from .returnmap import (
    ReturnResult,
    first_return,
    loud_energy,
    loud_start_from_energy,
    period_returnmap,
    period_returnmap_energy,
    return_error_estimate,
    trace_csv,
)
from .sweep import fit_p2, loud_curve, zk_curve, zk_period, zk_start

__all__ = [name for name in dir() if not name.startswith("_")]
