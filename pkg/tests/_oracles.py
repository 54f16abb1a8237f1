"""Independent oracles for the exact-algebra tests: brute force and sympy."""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from period_atlas.exactalg import MPoly

X = sympy.Symbol("x")


def to_sympy(p: MPoly, var: str = "u"):
    return sympy.Poly(list(reversed(p.univariate_coeffs(var))) or [0], X)


def from_coeffs(coeffs, var: str = "u") -> MPoly:
    return MPoly.from_univariate(coeffs, var)


def poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def grid_root_count(coeffs, lo: Fraction, hi: Fraction, steps: int = 4000) -> int:
    """Roots in (lo, hi) found by sign changes on a rational grid, each confirmed by bisection.

    Grid points are shifted by an irrational-looking offset so they avoid
    small-denominator roots.
    """
    h = (hi - lo) / steps
    shift = h * Fraction(1, 7919)
    pts = [lo] + [lo + k * h + shift for k in range(1, steps)] + [hi]
    vals = [poly_eval(coeffs, x) for x in pts]
    found = 0
    for a, b, fa, fb in zip(pts, pts[1:], vals, vals[1:]):
        if fa == 0 or fb == 0:
            raise AssertionError("grid point hit a root")
        if (fa > 0) != (fb > 0):
            for _ in range(30):
                m = (a + b) / 2
                fm = poly_eval(coeffs, m)
                if fm == 0:
                    break
                if (fm > 0) == (fa > 0):
                    a, fa = m, fm
                else:
                    b = m
            found += 1
    return found


def random_distinct_root_poly(rng: random.Random):
    """Integer-coefficient polynomial of degree <= 6 with distinct real roots (plus maybe a root-free quadratic)."""
    k = rng.randint(1, 5)
    roots = set()
    while len(roots) < k:
        roots.add(Fraction(rng.randint(-12, 12), rng.choice([1, 2, 4])))
    p = sympy.Poly(rng.choice([-3, -2, -1, 1, 2, 5]), X)
    for r in roots:
        p = p * sympy.Poly(r.denominator * X - r.numerator, X)
    if p.degree() <= 4 and rng.random() < 0.5:
        p = p * sympy.Poly(X ** 2 + rng.randint(1, 9), X)
    return [Fraction(int(c)) for c in reversed(p.all_coeffs())]


def random_small_poly(rng: random.Random, deg: int):
    coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(deg)] + [Fraction(rng.choice([-9, -5, -1, 1, 3, 7]))]
    return coeffs
