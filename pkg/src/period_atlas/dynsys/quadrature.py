"""Period function and Abelian integrals of the potential system by quadrature.

Each branch of the level curve {v^2/2 + V(u) = h} is parameterized by the
energy angle phi in [0, pi/2] through s(u) = +-sqrt(2h) sin(phi), with
s(u) = u (1-u)^-(D+1).  Since ds/du = l(u) (1 + D u), the integrands

    T:  l / v du          ->  dphi / (1 + D u)
    I:  g / v du          ->  u (1-u)^(-2D-1) / (1 + D u) dphi
    A:  l v du            ->  2 h cos(phi)^2 / (1 + D u) dphi

are smooth on the closed interval, so no endpoint singularity is left.
For large h the right branch develops a boundary layer near phi = 0, which
the adaptive Gauss-Legendre rule resolves.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DomainError
from .potential import left_branch, right_branch

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class QuadResult(NamedTuple):
    value: np.ndarray
    error: float


def adaptive_gauss(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-13,
    atol: float = 0.0,
    max_intervals: int = 20000,
) -> QuadResult:
    """Adaptive composite Gauss-Legendre rule for a vector of integrands.

    ``f`` maps a 1-d array of abscissae to an array of shape (m, len(x)).
    Each panel is accepted once the 16-point rule on the panel and on its two
    halves agree within the panel's share of the tolerance.
    """

    def rule(lo, hi):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        x = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
        vals = np.atleast_2d(f(x)).reshape(-1, lo.size, _GL_NODES.size)
        return vals @ _GL_WEIGHTS * half

    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    whole = rule(lo, hi)
    total = np.zeros(whole.shape[0])
    err = 0.0
    width = b - a
    n_used = 1
    while lo.size:
        mid = 0.5 * (lo + hi)
        left = rule(lo, mid)
        right = rule(mid, hi)
        halves = left + right
        diff = np.max(np.abs(halves - whole), axis=0)
        scale = np.max(np.abs(total[:, None] + halves.sum(axis=1, keepdims=True)), axis=0)
        tol = np.maximum(atol, rtol * scale) * (hi - lo) / width
        done = diff <= tol
        total += halves[:, done].sum(axis=1)
        err += float(diff[done].sum())
        keep = ~done
        n_used += 2 * int(keep.sum())
        if n_used > max_intervals:
            raise ConvergenceFailure(
                f"adaptive quadrature exceeded {max_intervals} panels"
            )
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        whole = np.concatenate([left[:, keep], right[:, keep]], axis=1)
    return QuadResult(total, err)


def _check(h: float, D: float):
    if not (h > 0 and math.isfinite(h)):
        raise DomainError(f"energy h = {h} must be positive and finite")
    if not -1.0 < D < 0.0:
        raise DomainError(f"D = {D} outside (-1, 0)")


def _branches(phi, h, D):
    s = math.sqrt(2.0 * h) * np.sin(phi)
    # phi = 0 is never a Gauss node, so s > 0
    return right_branch(s, D), left_branch(s, D)


def period_quadrature(h: float, D: float, rtol: float = 1e-13, with_error: bool = False):
    """Period T(h) of the orbit of energy h around the origin."""
    _check(h, D)

    def integrand(phi):
        up, um = _branches(phi, h, D)
        return 1.0 / (1.0 + D * up) + 1.0 / (1.0 + D * um)

    res = adaptive_gauss(integrand, 0.0, 0.5 * math.pi, rtol=rtol)
    T = 2.0 * float(res.value[0])
    if with_error:
        return T, 2.0 * res.error
    return T


def abelian_triple(h: float, D: float, rtol: float = 1e-13):
    """``(T, I, A)`` as upper-branch integrals from u_- to u_+, doubled.

    T = 2 int l / v du, I = 2 int g / v du with g = u (1-u)^(-3(D+1)) and
    A = 2 int l v du, where v = sqrt(2 (h - V(u))).  With this common
    orientation A' = T and 2 h T' + I' / (D + 1) = 0.
    """
    _check(h, D)
    e = -2.0 * D - 1.0

    def integrand(phi):
        up, um = _branches(phi, h, D)
        wp = 1.0 / (1.0 + D * up)
        wm = 1.0 / (1.0 + D * um)
        c2 = 2.0 * h * np.cos(phi) ** 2
        gi = up * np.exp(e * np.log1p(-up)) * wp + um * np.exp(e * np.log1p(-um)) * wm
        return np.stack([wp + wm, gi, c2 * (wp + wm)])

    res = adaptive_gauss(integrand, 0.0, 0.5 * math.pi, rtol=rtol)
    T, I, A = (2.0 * float(x) for x in res.value)
    return T, I, A
