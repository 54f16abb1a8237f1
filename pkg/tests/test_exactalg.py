from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings
from hypothesis import strategies as st

from period_atlas.certify.polys import DELTA_W_DISPLAYED, K0, P_of, Q1_D13, Q2_D13, R_D13, R_D13_COEFFS
from period_atlas.exactalg import (
    EndpointRoot,
    IntervalQ,
    MPoly,
    NotDivisible,
    ZeroInput,
    discriminant,
    divides,
    exact_divide,
    interpolated_resultant,
    isolate_roots,
    refine,
    resultant,
    squarefree_decomposition,
    strip_factor,
    sturm_count,
)
from period_atlas.exactalg.polynomial import D, u, w

from _oracles import X, from_coeffs, to_sympy

x = MPoly.var("u")


def test_ring_ops():
    assert (u + w) * (u - w) == u ** 2 - w ** 2
    assert (u ** 3 * (1 - w) ** 2).deriv("u") == 3 * u ** 2 * (1 - w) ** 2
    q = 1 + 2 * D * u + D * (1 + 2 * D) * u ** 2
    got = q.subs("D", Fraction(-1, 3))
    assert got == 1 - Fraction(2, 3) * u - Fraction(1, 9) * u ** 2
    assert "D" not in got.variables()


def test_constant_roundtrip_and_no_zero_terms():
    c = MPoly.const(Fraction(3, 7))
    assert c.constant_value() == Fraction(3, 7)
    assert (u - u).terms == {}
    assert MPoly({(1, 0, 0): 0, (0, 0, 0): 2}).terms == {(0, 0, 0): Fraction(2)}


def test_exact_divide():
    assert exact_divide(u ** 2 - w ** 2, u - w) == u + w
    head = 32 * (u - 1) ** 3 * u ** 6
    assert exact_divide(head * R_D13, head) == R_D13
    with pytest.raises(NotDivisible):
        exact_divide(u ** 2 + 1, u - 1)
    assert divides(u - w, u ** 2 - w ** 2)


def test_strip_factor():
    p = (D + 1) ** 3 * D ** 2 * (u + 1)
    rest, k = strip_factor(p, D + 1)
    assert k == 3 and rest == D ** 2 * (u + 1)


def test_sturm_examples():
    assert sturm_count(u ** 2 - Fraction(1, 4), IntervalQ(0, 1)) == 1
    assert sturm_count(R_D13, IntervalQ(0, 1)) == 0
    quartic = 304 * D ** 4 + 608 * D ** 3 + 296 * D ** 2 - 8 * D + 27
    assert sturm_count(quartic, IntervalQ(Fraction(-1, 2), 0)) == 0


def test_sturm_repeated_roots_and_endpoints():
    p = (x - Fraction(1, 3)) ** 3 * (x + 2)
    assert sturm_count(p, IntervalQ(0, 1)) == 1
    assert sturm_count(p, IntervalQ(None, None)) == 2
    with pytest.raises(EndpointRoot):
        sturm_count(x ** 2 - 1, IntervalQ(0, 1))


def test_isolate_roots():
    ivs = isolate_roots(D ** 2 - Fraction(1, 4), IntervalQ(-1, 0), Fraction(1, 100))
    assert len(ivs) == 1 and ivs[0].contains(Fraction(-1, 2)) and ivs[0].width < Fraction(1, 100)
    (iv,) = isolate_roots(K0, IntervalQ(Fraction(-1, 2), 0), Fraction(1, 10 ** 6))
    d0 = -0.5 + 3 * 11 ** 0.5 / 22
    assert float(iv.lo) < d0 < float(iv.hi)
    small = refine(K0, iv, 16)
    assert small.width <= iv.width / 16 and float(small.lo) < d0 < float(small.hi)


def test_resultant_examples():
    assert resultant(x - 1, x + 1, "u") == MPoly.const(2)
    res = resultant(Q1_D13, Q2_D13, "w")
    assert res == 32 * (u - 1) ** 3 * u ** 6 * R_D13
    R = exact_divide(res, 32 * (u - 1) ** 3 * u ** 6)
    assert R.univariate_coeffs("u")[0] == 531441 and R.univariate_coeffs("u")[12] == -4
    assert tuple(R.univariate_coeffs("u")) == R_D13_COEFFS
    with pytest.raises(ZeroInput):
        resultant(MPoly.const(0), x, "u")


def test_resultant_vanishes_at_common_zero():
    # numerical common zero of Q1, Q2 off (0, 1): the resultant vanishes at its u
    import numpy as np

    R = R_D13.univariate_coeffs("u")
    roots = np.roots([float(c) for c in reversed(R)])
    real = [r.real for r in roots if abs(r.imag) < 1e-9]
    assert real and all(not 0 < r < 1 for r in real)
    res = resultant(Q1_D13, Q2_D13, "w")
    scale = max(abs(float(c)) for c in res.terms.values())
    for r in real:
        assert abs(res.evaluate_float(u=r)) / scale < 1e-6 * max(1.0, abs(r)) ** 18


def test_discriminant_examples():
    b, c = MPoly.var("w"), MPoly.var("D")
    assert discriminant(x ** 2 + b * x + c, "u") == b ** 2 - 4 * c
    assert discriminant(P_of(w), "w") == DELTA_W_DISPLAYED
    with pytest.raises(ValueError):
        discriminant(x + 1, "u")


def test_squarefree_examples():
    out = squarefree_decomposition((x - 1) ** 2 * (x + 2))
    assert sorted(out, key=lambda t: t[1]) == [(x + 2, 1), (x - 1, 2)]
    p = 3 * x ** 3 - x + 5
    assert squarefree_decomposition(p) == [(p / 3, 1)]


def test_interpolated_resultant_agrees():
    assert interpolated_resultant(Q1_D13, Q2_D13, "w", "u") == resultant(Q1_D13, Q2_D13, "w")
    p, q = u ** 2 + w, w ** 3 - 2 * u
    assert interpolated_resultant(p, q, "w", "D") == resultant(p, q, "w")
    p, q = D * u ** 2 + w * u + 1, u - D * w
    assert interpolated_resultant(p, q, "u", "D") == resultant(p, q, "u")


small_coeffs = st.lists(st.integers(-9, 9), min_size=2, max_size=5).filter(lambda c: c[-1] != 0)


@settings(max_examples=60, deadline=None)
@given(small_coeffs, small_coeffs)
def test_resultant_matches_sympy(a, b):
    p, q = from_coeffs(a), from_coeffs(b)
    # sympy.resultant mis-signs some inputs (e.g. x+1 and x^3), so use the Sylvester determinant
    ref = sylvester(to_sympy(p).as_expr(), to_sympy(q).as_expr(), X, 1).det()
    assert resultant(p, q, "u").constant_value() == Fraction(int(ref))


@settings(max_examples=60, deadline=None)
@given(small_coeffs, small_coeffs)
def test_resultant_antisymmetry(a, b):
    p, q = from_coeffs(a), from_coeffs(b)
    sgn = (-1) ** ((len(a) - 1) * (len(b) - 1))
    assert resultant(p, q, "u") == sgn * resultant(q, p, "u")


@settings(max_examples=40, deadline=None)
@given(small_coeffs, small_coeffs)
def test_exact_divide_product(a, b):
    p, q = from_coeffs(a), from_coeffs(b, "w") + D
    assert exact_divide(p * q, q) == p


def test_bivariate_resultant_matches_sympy():
    rng = random.Random(3)
    U, W = sympy.symbols("u w")
    for _ in range(10):
        terms_p = {(rng.randint(0, 2), rng.randint(0, 2), 0): rng.randint(-5, 5) for _ in range(4)}
        terms_q = {(rng.randint(0, 2), rng.randint(0, 2), 0): rng.randint(-5, 5) for _ in range(4)}
        p = MPoly(terms_p) + w ** 3
        q = MPoly(terms_q) + u * w ** 2
        sp = sum(c * U ** e[0] * W ** e[1] for e, c in p.terms.items())
        sq = sum(c * U ** e[0] * W ** e[1] for e, c in q.terms.items())
        ref = sympy.Poly(sympy.expand(sylvester(sp, sq, W, 1).det()), U)
        got = resultant(p, q, "w")
        assert got == MPoly.from_univariate([Fraction(int(c)) for c in reversed(ref.all_coeffs())], "u")
