"""Vector fields, the Z_k to Loud reduction and closed-form period facts."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Tuple

from .errors import DomainError, NotNormalized, ZeroCoefficient
from .params import LoudParams, PlanarState, ZkParams


def loud_field(p: LoudParams, s: PlanarState) -> Tuple[float, float]:
    if s.chart != "loud":
        _need_chart(s, "loud")
    x, y = s.xy
    return (-y + x * y, x + p.D * x * x + p.F * y * y)


def loud_rhs(D: float, F: float):
    """Right-hand side ``f(t, [x, y])`` for ODE solvers."""

    def rhs(t, z):
        x, y = z
        return [-y + x * y, x + D * x * x + F * y * y]

    return rhs


def _need_chart(s: PlanarState, chart: str):
    raise DomainError(f"expected a state in the {chart!r} chart, got {s.chart!r}")


def zk_field(p: ZkParams, s: PlanarState) -> Tuple[float, float]:
    """``(dr/dt, dtheta/dt)`` of the normalized Z_k equation in polar form."""
    if not p.normalized:
        raise NotNormalized("zk_field needs a = 1; call normalize_zk first")
    if s.chart != "polar":
        _need_chart(s, "polar")
    r, th = s.a, s.b
    m = 2 * p.n + p.k
    rm = r ** m
    return (rm * r * math.cos(p.k * th), 1.0 + rm * math.sin(p.k * th))


# r^(2n+k) is capped at exp(_EXP_CAP) so rejected trial steps cannot overflow
_EXP_CAP = 700.0


def zk_logpolar_rhs(n: int, k: int):
    """Normalized Z_k field in (log r, theta, t), with time rescaled by 1 / (1 + r^(2n+k)).

    In the new time s the rates are bounded by 1, so the fast excursions of
    large orbits do not exhaust the resolution of t; the third component
    recovers the original time.
    """
    m = 2 * n + k

    def rhs(s, z):
        lr, th, _ = z
        rm = math.exp(min(m * lr, _EXP_CAP))
        scale = 1.0 / (1.0 + rm)
        return [rm * math.cos(k * th) * scale, (1.0 + rm * math.sin(k * th)) * scale, scale]

    return rhs


def zk_cartesian_rhs(p: ZkParams):
    """z' = i z + a (z zbar)^n z^(k+1) as a real planar field."""
    a, n, k = p.a, p.n, p.k

    def rhs(t, xy):
        z = complex(xy[0], xy[1])
        dz = 1j * z + a * abs(z) ** (2 * n) * z ** (k + 1)
        return [dz.real, dz.imag]

    return rhs


def normalize_zk(p: ZkParams) -> Tuple[float, float, ZkParams]:
    """``(lam, mu, p1)``: z = lam e^(i mu) w turns the equation into the one with a = 1."""
    if p.a == 0:
        raise ZeroCoefficient("a = 0 leaves a linear center")
    if p.k < 1:
        raise DomainError("normalization by rotation needs k >= 1")
    lam = abs(p.a) ** (-1.0 / (2 * p.n + p.k))
    mu = -cmath.phase(p.a) / p.k
    return lam, mu, ZkParams(p.n, p.k, 1.0)


@dataclass(frozen=True)
class ZkReduction:
    D: float
    F: float
    b: float

    @property
    def loud(self) -> LoudParams:
        return LoudParams(self.D, self.F)


def zk_to_loud(n: int, k: int) -> ZkReduction:
    """Loud parameters of the reduced Z_k equation; D = -k/(2(k+n)), b = 1 + 2n/k."""
    if n < 1 or k < 1:
        raise DomainError("the reduction needs n >= 1 and k >= 1")
    D = -k / (2.0 * (k + n))
    return ZkReduction(D, D + 1.0, 1.0 + 2.0 * n / k)


@dataclass(frozen=True)
class OrbitMap:
    """Loud point of the orbit through z = rho, with the time bookkeeping.

    tau = k t rescales time, s = -tau flips it; the period around the origin
    is the same in every chart (factor exactly 1).
    """

    state: PlanarState
    D: float
    b: float
    tau_factor: float
    s_sign: int
    period_factor: float = 1.0


def map_zk_orbit(p: ZkParams, rho: float) -> OrbitMap:
    if not p.normalized:
        raise NotNormalized("map_zk_orbit needs a = 1")
    if rho < 0:
        raise DomainError("rho must be non-negative")
    red = zk_to_loud(p.n, p.k)
    R = rho ** (2 * p.n + p.k)
    # X = R, Y = 0 on theta = 0; x = -(1+b) Y, y = -(1+b) X
    state = PlanarState("loud", 0.0, -(1.0 + red.b) * R)
    return OrbitMap(state, red.D, red.b, float(p.k), -1)


def p2_constant(D: float, F: float) -> float:
    """Coefficient P2 in T(rho) = 2 pi + P2 rho^2 + O(rho^3)."""
    return math.pi / 12.0 * (10 * D * D + 10 * D * F - D + 4 * F * F - 5 * F + 1)


def asymptotic_period(p) -> float:
    """Limit of the period at the outer boundary of the period annulus."""
    if isinstance(p, ZkParams):
        if p.k == 0:
            alpha = p.a.imag
            if p.a.real != 0:
                raise DomainError("k = 0 has a center only for purely imaginary a")
            return 0.0 if alpha > 0 else math.inf if alpha < 0 else 2 * math.pi
        if p.n == 0:
            return 2 * math.pi
        return 2.0 * (p.k + p.n) * math.pi / (p.k + 2.0 * p.n)
    if not p.on_line:
        raise DomainError("asymptotic_period covers the line F = D + 1 only")
    D = p.D
    if -1.0 < D < 0.0:
        return math.pi / (D + 1.0)
    if D == 0.0:
        # isochronous center x' = -y + xy, y' = x + y^2
        return 2 * math.pi
    return math.inf


def closed_form_period(case: str, **args) -> float:
    """Closed-form periods: ``"Dm1"`` (r) for D = -1 and ``"kzero"`` (alpha, n, u)."""
    if case == "Dm1":
        r = args["r"]
        if not 0 <= r < 1:
            raise DomainError(f"radius r = {r} outside [0, 1)")
        return 2 * math.pi / math.sqrt(1.0 - r * r)
    if case == "kzero":
        alpha, n, u = args["alpha"], args["n"], args["u"]
        if n < 1 or u < 0:
            raise DomainError("need n >= 1 and u >= 0")
        den = 1.0 + alpha * u ** n
        if den <= 0:
            raise DomainError("outside the period annulus (boundary of equilibria)")
        return 2 * math.pi / den
    raise ValueError(f"unknown closed-form case {case!r}")


@dataclass(frozen=True)
class SecondCenter:
    image: LoudParams
    timefactor: float
    startperiod: float
    limit: float
    inequalities: Dict[str, bool]


def second_center_transform(p: LoudParams) -> SecondCenter:
    """Period data at the center (-1/D, 0) through u = (D x + 1)/(D + 1)."""
    D = p.D
    if not -1.0 < D < 0.0:
        raise DomainError("the second center exists only for D in (-1, 0)")
    image = LoudParams(-1.0 - D, p.F)
    tf = math.sqrt(-D / (D + 1.0))
    start = 2 * math.pi * tf
    lim = math.pi / (D + 1.0)
    two_pi = 2 * math.pi
    if D < -0.5:
        chain = {"2pi < start": two_pi < start, "start < limit": start < lim}
    elif D > -0.5:
        chain = {"start < limit": start < lim, "limit < 2pi": lim < two_pi}
    else:
        chain = {"all equal": math.isclose(start, two_pi) and math.isclose(lim, two_pi)}
    return SecondCenter(image, tf, start, lim, chain)
