"""Exact real-root counting and isolation for univariate polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import univariate as uv
from .errors import EndpointRoot, ZeroInput
from .polynomial import MPoly


@dataclass(frozen=True)
class IntervalQ:
    """Open rational interval ``(lo, hi)``; ``None`` stands for an infinite end."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __post_init__(self):
        lo = None if self.lo is None else Fraction(self.lo)
        hi = None if self.hi is None else Fraction(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError(f"empty interval ({lo}, {hi})")

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    @property
    def width(self) -> Fraction:
        if not self.bounded:
            raise ValueError("unbounded interval has no width")
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x)
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)

    def intersects(self, other: "IntervalQ") -> bool:
        """Closed-interval intersection test."""
        lo = max((v for v in (self.lo, other.lo) if v is not None), default=None)
        hi = min((v for v in (self.hi, other.hi) if v is not None), default=None)
        return lo is None or hi is None or lo <= hi

    def strictly_left_of(self, other: "IntervalQ") -> bool:
        return self.hi is not None and other.lo is not None and self.hi <= other.lo

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"({lo}, {hi})"

    def to_json(self) -> list:
        return [None if self.lo is None else str(self.lo), None if self.hi is None else str(self.hi)]


def _dense(p: MPoly) -> Tuple[str, uv.Dense]:
    used = p.variables()
    if len(used) > 1:
        raise ValueError(f"expected a univariate polynomial, got variables {used}")
    var = used[0] if used else "u"
    return var, p.univariate_coeffs(var)


@dataclass
class SturmSeq:
    var: str
    chain: List[MPoly]

    @classmethod
    def of(cls, p: MPoly) -> "SturmSeq":
        var, dense = _dense(p)
        if not dense:
            raise ZeroInput("Sturm sequence of the zero polynomial")
        return cls(var, [MPoly.from_univariate(q, var) for q in uv.sturm_chain(dense)])

    def _dense_chain(self):
        return [q.univariate_coeffs(self.var) for q in self.chain]

    def variations(self, x: Optional[Fraction], at_infinity: int = 0) -> int:
        return uv.variations(self._dense_chain(), x, at_infinity)


def _count_dense(dense: uv.Dense, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    for x in (lo, hi):
        if x is not None and uv.evaluate(dense, x) == 0:
            raise EndpointRoot(x)
    sq = uv.squarefree_part(dense)
    chain = uv.sturm_chain(sq)
    return uv.variations(chain, lo, -1) - uv.variations(chain, hi, +1)


def sturm_count(p: MPoly, iv: IntervalQ) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``iv``."""
    if p.is_zero():
        raise ZeroInput("sturm_count of the zero polynomial")
    _, dense = _dense(p)
    return _count_dense(dense, iv.lo, iv.hi)


def _split_point(dense: uv.Dense, lo: Fraction, hi: Fraction) -> Fraction:
    # midpoint, nudged off any rational root
    mid = (lo + hi) / 2
    k = 3
    while uv.evaluate(dense, mid) == 0:
        mid = lo + (hi - lo) * Fraction(k - 1, 2 * k)
        k += 1
    return mid


def _finite_bounds(dense: uv.Dense, iv: IntervalQ) -> Tuple[Fraction, Fraction]:
    # Cauchy bound replaces infinite ends
    lc = dense[-1]
    bound = 1 + max(abs(c / lc) for c in dense[:-1]) if len(dense) > 1 else Fraction(1)
    bound = Fraction(int(bound) + 1)
    lo = -bound if iv.lo is None else iv.lo
    hi = bound if iv.hi is None else iv.hi
    return lo, hi


def isolate_roots(p: MPoly, iv: IntervalQ, tol=None) -> List[IntervalQ]:
    """Disjoint open rational intervals, one per distinct real root of ``p`` in ``iv``.

    Each returned interval is refined below width ``tol`` when given.
    Interval endpoints are never roots of ``p``.
    """
    if p.is_zero():
        raise ZeroInput("isolate_roots of the zero polynomial")
    _, dense = _dense(p)
    for x in (iv.lo, iv.hi):
        if x is not None and uv.evaluate(dense, x) == 0:
            raise EndpointRoot(x)
    sq = uv.squarefree_part(dense)
    chain = uv.sturm_chain(sq)
    lo, hi = _finite_bounds(sq, iv)
    if iv.lo is None and uv.evaluate(sq, lo) == 0:
        lo -= 1
    if iv.hi is None and uv.evaluate(sq, hi) == 0:
        hi += 1

    def count(a, b):
        return uv.variations(chain, a) - uv.variations(chain, b)

    out: List[IntervalQ] = []
    stack = [(lo, hi, count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and (tol is None or b - a < tol):
            out.append(IntervalQ(a, b))
            continue
        m = _split_point(sq, a, b)
        stack.append((m, b, count(m, b)))
        stack.append((a, m, count(a, m)))
    out.sort(key=lambda i: i.lo)
    return out


def refine(p: MPoly, iv: IntervalQ, factor: int = 2) -> IntervalQ:
    """Shrink an isolating interval of ``p`` by bisection until its width drops by ``factor``."""
    _, dense = _dense(p)
    sq = uv.squarefree_part(dense)
    chain = uv.sturm_chain(sq)
    a, b = iv.lo, iv.hi
    target = (b - a) / factor
    while b - a > target:
        m = _split_point(sq, a, b)
        if uv.variations(chain, a) - uv.variations(chain, m) == 1:
            b = m
        else:
            a = m
    return IntervalQ(a, b)


def squarefree_decomposition(p: MPoly) -> List[Tuple[MPoly, int]]:
    """Monic pairwise-coprime squarefree factors with multiplicities."""
    if p.is_zero():
        raise ZeroInput("squarefree decomposition of the zero polynomial")
    var, dense = _dense(p)
    return [(MPoly.from_univariate(f, var), m) for f, m in uv.yun(dense)]
