"""Periods by direct integration and first return to a section.

The ODE is advanced with scipy's DOP853 pair one step at a time.  After
each step the section function is compared at both ends of the step; a sign
change in the prescribed direction is refined by Brent's method on the
step's dense-output interpolant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import DOP853
from scipy.optimize import brentq

from .errors import ConvergenceFailure, DomainError, EscapedAnnulus, MaxTimeExceeded, NotNormalized
from .fields import _EXP_CAP, loud_rhs, zk_cartesian_rhs, zk_logpolar_rhs
from .params import LoudParams, PlanarState, ZkParams
from .potential import turning_points


@dataclass
class ReturnResult:
    period: float
    state: np.ndarray
    steps: int
    energy_drift: float = float("nan")


def first_return(
    rhs: Callable,
    y0: Sequence[float],
    event: Callable[[np.ndarray], float],
    direction: int,
    accept: Callable[[np.ndarray], bool] = lambda y: True,
    rtol: float = 1e-12,
    atol: Optional[float] = None,
    t_max: float = 1e4,
    box: float = 1e12,
    monitor: Optional[Callable[[np.ndarray], float]] = None,
    trace: Optional[list] = None,
    inside: Optional[Callable[[np.ndarray], bool]] = None,
) -> ReturnResult:
    """Time of the first crossing of ``event = 0`` with sign ``direction``.

    The orbit escapes when a coordinate exceeds ``box`` in absolute value or
    ``inside`` returns False.  ``monitor`` is evaluated after every step and its largest absolute value
    is reported as ``energy_drift``; ``trace`` collects ``(t, y0, y1)`` rows.
    """
    y0 = np.asarray(y0, dtype=float)
    if atol is None:
        atol = rtol * 1e-3 * max(float(np.max(np.abs(y0))), 1e-300)
    solver = DOP853(rhs, 0.0, y0, t_max, rtol=rtol, atol=atol)
    e_old = event(y0)
    drift = 0.0
    steps = 0
    if trace is not None:
        trace.append((0.0, *y0))
    while True:
        t_old = solver.t
        msg = solver.step()
        steps += 1
        if solver.status == "failed":
            raise ConvergenceFailure(f"integrator failed at t = {solver.t}: {msg}")
        y = solver.y
        if trace is not None:
            trace.append((solver.t, *y))
        if (
            not np.all(np.isfinite(y))
            or np.max(np.abs(y)) > box
            or (inside is not None and not inside(y))
        ):
            raise EscapedAnnulus(f"orbit left the admissible region at t = {solver.t}")
        if monitor is not None:
            drift = max(drift, abs(monitor(y)))
        e_new = event(y)
        if direction * e_old < 0 <= direction * e_new:
            dense = solver.dense_output()
            if accept(dense(0.5 * (t_old + solver.t))):
                if e_new == 0:
                    tc = solver.t
                else:
                    tc = brentq(
                        lambda t: event(dense(t)), t_old, solver.t, xtol=1e-15, rtol=4 * np.finfo(float).eps
                    )
                return ReturnResult(tc, dense(tc), steps, drift)
        e_old = e_new
        if solver.status == "finished":
            raise MaxTimeExceeded(f"no return to the section before t = {t_max}")


def _half_line_section(start: np.ndarray, field: Callable):
    sx, sy = start
    f = field(0.0, start)
    orient = sx * f[1] - sy * f[0]
    if orient == 0:
        raise DomainError("the flow is tangent to the section at the start point")

    def event(y):
        return sx * y[1] - sy * y[0]

    def accept(y):
        return sx * y[0] + sy * y[1] > 0

    return event, (1 if orient > 0 else -1), accept


def loud_energy(D: float):
    """H(x, y) = v^2/2 + V(u) of the sub-family F = D + 1, u = x, v = y (1-x)^-(D+1)."""

    def H(z):
        x, y = z
        w = (1.0 - x) ** (-(D + 1.0))
        return 0.5 * (y * w) ** 2 + 0.5 * (x * w) ** 2

    return H


def period_returnmap(
    system,
    start: PlanarState,
    rtol: float = 1e-12,
    t_max: float = 1e4,
    box: float = 1e12,
    trace: Optional[list] = None,
    details: bool = False,
):
    """Period of the orbit through ``start``.

    Loud systems take a ``loud`` state and return to the half-line through
    it.  Normalized Z_k systems (k >= 1) take a ``polar`` state with
    theta = 0 and integrate to theta = 2 pi / k, returning k times that
    time.  For k = 0 the full loop is integrated in the ``z`` chart.
    """
    if isinstance(system, LoudParams):
        if start.chart != "loud":
            raise DomainError("a Loud start point must be in the 'loud' chart")
        rhs = loud_rhs(system.D, system.F)
        y0 = np.array(start.xy, dtype=float)
        if not np.any(y0):
            raise DomainError("start point is the equilibrium")
        event, direction, accept = _half_line_section(y0, rhs)
        monitor = None
        if system.on_line and y0[0] < 1:
            H = loud_energy(system.D)
            h0 = H(y0)
            monitor = lambda y: (H(y) - h0) / (1.0 + abs(h0))  # noqa: E731
        res = first_return(rhs, y0, event, direction, accept, rtol, None, t_max, box, monitor, trace)
        return res if details else res.period
    if isinstance(system, ZkParams):
        if system.k == 0:
            if start.chart != "z":
                raise DomainError("k = 0 runs in the 'z' chart")
            rhs = zk_cartesian_rhs(system)
            y0 = np.array(start.xy, dtype=float)
            event, direction, accept = _half_line_section(y0, rhs)
            res = first_return(rhs, y0, event, direction, accept, rtol, None, t_max, box, None, trace)
            return res if details else res.period
        if not system.normalized:
            raise NotNormalized("period_returnmap needs a = 1 for k >= 1; use normalize_zk")
        if start.chart != "polar" or start.b != 0:
            raise DomainError("a Z_k start point must be polar with theta = 0")
        if not start.a > 0:
            raise DomainError("start radius must be positive")
        k = system.k
        m = 2 * system.n + k
        target = 2.0 * math.pi / k
        lr_max = min(math.log(box), _EXP_CAP / m)
        rows = [] if trace is not None else None
        res = first_return(
            zk_logpolar_rhs(system.n, k),
            [math.log(start.a), 0.0, 0.0],
            lambda y: y[1] - target,
            1,
            rtol=rtol,
            atol=1e-15,
            t_max=t_max,
            box=math.inf,
            trace=rows,
            inside=lambda y: y[0] < lr_max,
        )
        if trace is not None:
            # dump in (t, x, y) of the z-plane
            trace.extend(
                (t, math.exp(lr) * math.cos(th), math.exp(lr) * math.sin(th)) for _, lr, th, t in rows
            )
        res.period = k * float(res.state[2])
        res.state = np.array([math.exp(res.state[0]), res.state[1]])
        return res if details else res.period
    raise TypeError(f"unsupported system {system!r}")


def loud_start_from_energy(h: float, D: float) -> PlanarState:
    """Point (u_+(h), 0) of the level h on the positive x-axis."""
    if D == 0.0:
        # V(u) = u^2 / (2 (1-u)^2); closed orbits need h < 1/2
        if not 0 < h < 0.5:
            raise DomainError("for D = 0 the period annulus is 0 < h < 1/2")
        s = math.sqrt(2.0 * h)
        return PlanarState("loud", s / (1.0 + s), 0.0)
    return PlanarState("loud", turning_points(h, D)[1], 0.0)


def period_returnmap_energy(h: float, D: float, rtol: float = 1e-12, details: bool = False):
    return period_returnmap(LoudParams(D), loud_start_from_energy(h, D), rtol=rtol, details=details)


def return_error_estimate(system, start: PlanarState, rtol: float = 1e-12) -> float:
    """|T(rtol) - T(100 rtol)|, a pessimistic error estimate."""
    return abs(period_returnmap(system, start, rtol) - period_returnmap(system, start, 100 * rtol))


def trace_csv(rows) -> str:
    out = ["t,x,y\n"]
    out.extend(f"{t:.17g},{x:.17g},{y:.17g}\n" for t, x, y in rows)
    return "".join(out)
