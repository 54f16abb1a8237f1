"""Potential chart of the sub-family F = D + 1.

With u = x and v = y (1 - x)^-(D+1) the system becomes
u' = -v (1-u)^(D+2), v' = u (1 + D u) (1-u)^-(D+1), with first integral
H = v^2/2 + V(u) and V(u) = u^2 (1-u)^(-2(D+1)) / 2.

Both monotone branches of V are inverted through the signed energy scale
s(u) = u (1-u)^-(D+1), so that V = s^2/2.  In the logarithmic variables
u = expit(t) (right) and u = -exp(t) (left), log|s| is a concave,
increasing function of t with derivative (1 + D u) and (1 + D u)/(1 - u)
respectively; Newton's method therefore converges monotonically from any
start after the first step.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from .errors import ConvergenceFailure, DomainError, NoBracket, PoleError

_NEWTON_MAXITER = 200


def _check_D(D: float, lo: float = -1.0, hi: float = 0.0):
    if not lo < D < hi:
        raise DomainError(f"D = {D} outside ({lo}, {hi})")


def potential_terms(u: float, D: float):
    """``(V(u), V'(u), l(u))`` with integrating factor l(u) = (1-u)^-(D+2)."""
    if u >= 1:
        raise DomainError(f"u = {u} must be < 1")
    one_m = 1.0 - u
    V = 0.5 * u * u * one_m ** (-2.0 * (D + 1.0))
    dV = u * (1.0 + D * u) * one_m ** (-2.0 * D - 3.0)
    ell = one_m ** (-(D + 2.0))
    return V, dV, ell


def energy_scale(u, D):
    """Signed scale s(u) = u (1-u)^-(D+1); V(u) = s(u)^2 / 2."""
    u = np.asarray(u, dtype=float)
    return u * np.exp(-(D + 1.0) * np.log1p(-u))


def _newton(g_and_slope, t0, tol=1e-15):
    t = np.array(t0, dtype=float)
    prev = np.full(t.shape, np.inf)
    for _ in range(_NEWTON_MAXITER):
        g, slope = g_and_slope(t)
        step = np.abs(g / slope)
        scale = np.maximum(1.0, np.abs(t))
        # converged, or the steps stopped shrinking at roundoff level
        done = (step <= tol * scale) | ((step >= prev) & (step <= 1e-10 * scale))
        t = t - g / slope
        if np.all(done):
            return t
        prev = step
    raise ConvergenceFailure("Newton iteration for the potential branch did not converge")


def right_branch(s, D):
    """The u in (0, 1) with s(u) = s, for s > 0 (vectorized)."""
    s = np.asarray(s, dtype=float)
    log_s = np.log(s)
    t0 = np.where(s < 1.0, log_s, log_s / (D + 1.0))

    def g(t):
        u = expit(t)
        val = -np.logaddexp(0.0, -t) + (D + 1.0) * np.logaddexp(0.0, t) - log_s
        return val, 1.0 + D * u

    return expit(_newton(g, t0))


def left_branch(s, D):
    """The u < 0 with s(u) = -s, for s > 0 (vectorized)."""
    s = np.asarray(s, dtype=float)
    log_s = np.log(s)
    t0 = np.where(s < 1.0, log_s, log_s / (-D))

    def g(t):
        e = np.exp(t)
        val = t - (D + 1.0) * np.logaddexp(0.0, t) - log_s
        return val, (1.0 - D * e) / (1.0 + e)

    return -np.exp(_newton(g, t0))


def turning_points(h: float, D: float):
    """``(u_minus, u_plus)`` with V(u_minus) = V(u_plus) = h."""
    if not h > 0:
        raise DomainError(f"energy h = {h} must be positive")
    _check_D(D)
    s = math.sqrt(2.0 * h)
    return float(left_branch(s, D)), float(right_branch(s, D))


def involution_sigma(u, D):
    """sigma(u) < 0 with V(sigma(u)) = V(u), for 0 < u < 1 (vectorized)."""
    _check_D(D)
    u = np.asarray(u, dtype=float)
    if np.any((u <= 0) | (u >= 1)):
        raise DomainError("involution_sigma needs 0 < u < 1")
    out = left_branch(energy_scale(u, D), D)
    return out if out.ndim else float(out)


def involution_sigma_inverse(w, D):
    """The u in (0, 1) with V(u) = V(w), for w < 0."""
    _check_D(D)
    w = np.asarray(w, dtype=float)
    if np.any(w >= 0):
        raise DomainError("expected w < 0")
    out = right_branch(-energy_scale(w, D), D)
    return out if out.ndim else float(out)


def _quad_form(x, D):
    return 1.0 + 2.0 * D * x + D * (1.0 + 2.0 * D) * x * x


def criterion_f(u, D):
    """f = -g/2 + (g V / V')' for g(u) = u (1-u)^(-3(D+1)), in closed form."""
    u = np.asarray(u, dtype=float)
    one_pd = 1.0 + D * u
    if np.any(one_pd == 0):
        raise PoleError(f"f has a pole at u = {-1.0 / D}")
    return u * np.exp(-3.0 * (D + 1.0) * np.log1p(-u)) * _quad_form(u, D) / (2.0 * one_pd ** 2)


def potential_derivative(u, D):
    u = np.asarray(u, dtype=float)
    return u * (1.0 + D * u) * np.exp((-2.0 * D - 3.0) * np.log1p(-u))


def pi_sigma(u, D, pole_guard: float = 1e-3):
    """Criterion operator (f(u) - f(sigma(u)) sigma'(u)) / 2 for g(u) = u (1-u)^(-3(D+1))."""
    _check_D(D)
    if D == -0.5:
        raise DomainError("D = -1/2 is the isochronous case")
    u = np.asarray(u, dtype=float)
    pole = -1.0 / D
    if np.any(np.abs(u - pole) < pole_guard):
        raise PoleError(f"grid point within {pole_guard} of the pole u = {pole}")
    sig = involution_sigma(u, D)
    dsig = potential_derivative(u, D) / potential_derivative(sig, D)
    out = 0.5 * (criterion_f(u, D) - criterion_f(sig, D) * dsig)
    return out if np.ndim(out) else float(out)


def w_star(D: float) -> float:
    """Negative root of 1 + 2 D w + D (1 + 2 D) w^2 for D in (-1/2, 0)."""
    _check_D(D, -0.5, 0.0)
    return (-D + math.sqrt(-D * (1.0 + D))) / (D * (1.0 + 2.0 * D))


def _G(x, D):
    return (1.0 - x) * _quad_form(x, D) / (x * (1.0 + D * x) ** 3)


def psi1(u: float, D: float) -> float:
    """Branch w = psi_1(u) of u (1-u)^-(D+1) + w (1-w)^-(D+1) = 0."""
    return float(involution_sigma(u, D))


def psi2(u: float, D: float) -> float:
    """Branch w = psi_2(u) in (w*(D), 0) of the rational curve G(u) + G(w) = 0."""
    _check_D(D, -0.5, 0.0)
    if not 0 < u < 1:
        raise DomainError("psi2 needs 0 < u < 1")
    ws = w_star(D)
    target = _G(u, D)

    def fn(w):
        return target + _G(w, D)

    a = ws * (1.0 - 1e-15) if ws < 0 else ws
    fa = fn(a)
    b = -min(1e-3, abs(ws) / 4)
    for _ in range(60):
        if fa * fn(b) < 0:
            break
        b *= 0.25
    else:
        raise NoBracket(f"no sign change for psi_2 on (w*, 0) at u={u}, D={D}")
    if fa * fn(b) >= 0:
        raise NoBracket(f"no sign change for psi_2 on (w*, 0) at u={u}, D={D}")
    return brentq(fn, a, b, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)


def curve_gap(u: float, D: float) -> float:
    """psi_1(u; D) - psi_2(u; D)."""
    return psi1(u, D) - psi2(u, D)
