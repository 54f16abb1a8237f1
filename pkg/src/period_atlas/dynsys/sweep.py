"""Period curves over parameter grids and small derived quantities."""

from __future__ import annotations

import math
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .fields import normalize_zk
from .params import LoudParams, PeriodCurve, PlanarState, ZkParams
from .quadrature import period_quadrature
from .returnmap import period_returnmap, period_returnmap_energy

MapFn = Callable[[Callable, Iterable], Iterable]


def zk_start(p: ZkParams, rho: float):
    """Normalized system and polar start point for the orbit through z = rho e^(i mu).

    With z = lam e^(i mu) w the equation becomes the one with a = 1, and the
    orbit through w = rho / lam on the positive real axis has the same period.
    """
    lam, mu, p1 = normalize_zk(p)
    return p1, PlanarState("polar", rho / lam, 0.0)


def zk_period(p: ZkParams, rho: float, rtol: float = 1e-12) -> float:
    if p.k == 0:
        return period_returnmap(p, PlanarState("z", rho, 0.0), rtol=rtol)
    p1, st = zk_start(p, rho)
    return period_returnmap(p1, st, rtol=rtol)


def _loud_point(h: float, D: float, method: str):
    if method == "quadrature":
        T, err = period_quadrature(h, D, with_error=True)
        return T, err
    T = period_returnmap_energy(h, D)
    coarse = period_returnmap_energy(h, D, rtol=1e-10)
    return T, abs(T - coarse)


def loud_curve(
    D: float,
    hs: Sequence[float],
    method: str = "quadrature",
    map_fn: Optional[MapFn] = None,
    on_error: Optional[Callable[[PeriodCurve, float, Exception], None]] = None,
) -> PeriodCurve:
    """Period curve T(h) of the sub-family F = D + 1 along the energy grid ``hs``."""
    if method not in ("quadrature", "returnmap"):
        raise ValueError(f"unknown method {method!r}")
    map_fn = map_fn or map
    curve = PeriodCurve()
    results = map_fn(lambda h: _safe(_loud_point, h, D, method), hs)
    for h, (val, exc) in zip(hs, results):
        if exc is not None:
            if on_error is None:
                raise exc
            on_error(curve, h, exc)
            break
        curve.append(h, val[0], method, val[1])
    return curve


def zk_curve(
    p: ZkParams,
    rhos: Sequence[float],
    map_fn: Optional[MapFn] = None,
    on_error: Optional[Callable[[PeriodCurve, float, Exception], None]] = None,
) -> PeriodCurve:
    map_fn = map_fn or map

    def point(rho):
        T = zk_period(p, rho)
        return T, abs(T - zk_period(p, rho, rtol=1e-10))

    curve = PeriodCurve()
    for rho, (val, exc) in zip(rhos, map_fn(lambda r: _safe(point, r), rhos)):
        if exc is not None:
            if on_error is None:
                raise exc
            on_error(curve, rho, exc)
            break
        curve.append(rho, val[0], "returnmap", val[1])
    return curve


def _safe(fn, *args):
    try:
        return fn(*args), None
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        return None, exc


def fit_p2(D: float, F: float, rhos: Optional[Sequence[float]] = None, rtol: float = 1e-13) -> float:
    """Fitted coefficient of rho^2 in T(rho) - 2 pi, rho the x-axis intercept.

    (T - 2 pi) / rho^2 is fitted by a quadratic in rho and evaluated at 0.
    """
    rhos = np.geomspace(1e-3, 1e-2, 8) if rhos is None else np.asarray(rhos, dtype=float)
    if np.any(rhos <= 0) or np.any(rhos > 1e-2):
        raise DomainError("fit radii must lie in (0, 1e-2]")
    sys = LoudParams(D, F)
    T = np.array([period_returnmap(sys, PlanarState("loud", r, 0.0), rtol=rtol) for r in rhos])
    y = (T - 2 * math.pi) / rhos ** 2
    deg = min(2, len(rhos) - 1)
    return float(np.polyfit(rhos, y, deg)[-1])
