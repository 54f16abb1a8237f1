"""Acceptance suite: one test and one PASS/FAIL line per criterion."""

from __future__ import annotations

import json
import math
import random
import time
from fractions import Fraction

import numpy as np
import sympy

from period_atlas import dynsys as ds
from period_atlas.certify import build_proof_polys, check_P_negative, compute_R2, replay_D13
from period_atlas.certify.polys import R_D13_COEFFS
from period_atlas.cli import main
from period_atlas.dynsys import LoudParams, PlanarState, ZkParams
from period_atlas.exactalg import IntervalQ, resultant, squarefree_decomposition, sturm_count

import conftest
from _oracles import X, from_coeffs, grid_root_count, random_distinct_root_poly, random_small_poly, to_sympy

TWO_PI = 2 * math.pi


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)


def _certify(branch, tmp_path):
    out = tmp_path / f"{branch}.json"
    t0 = time.perf_counter()
    code = main(["certify", "--branch", branch, "--out", str(out)])
    return code, json.loads(out.read_text()), time.perf_counter() - t0


def _steps(obj):
    return {s["name"]: s for s in obj["steps"]}


def test_criterion_01_certificate_decreasing(tmp_path):
    t0 = time.perf_counter()
    d13 = replay_D13()
    pp, _ = build_proof_polys("decreasing")
    pneg = check_P_negative(pp)
    r2 = compute_R2(pp, cross_check=False)
    fast = time.perf_counter() - t0
    code, obj, full = _certify("decreasing", tmp_path)
    st = _steps(obj)
    disc = st["analyze_discriminant"]["witness"]
    checks = {
        "exit 0": code == 0 and obj["overall"] == "pass",
        "(a) R coefficients": d13.passed
        and d13.witness["R_mismatch_indices"] == []
        and len(R_D13_COEFFS) == 13
        and tuple(d13.witness["R"].univariate_coeffs("u")) == R_D13_COEFFS,
        "(b) R2 endpoints": r2.witness["R2(0;D)_matches"] and r2.witness["R2(1;D)_matches"],
        "(c) Delta_w": pneg.witness["Delta_w_matches_display"],
        "(d) exponents": disc["exponents"] == [43, 43, 32]
        and disc["K0_is_multiplicity_3_block"]
        and disc["K1_divides_multiplicity_2_block"],
        "(e) sub-intervals": st["check_subintervals"]["witness"]["root_counts"] == [0, 0, 0, 0],
        "(f) bounds": all(st[f"bounding_poly_{l}"]["verdict"] == "pass" for l in ("D0", "D1", "D2")),
        "(a)-(c) < 10 s": fast < 10,
        "full < 15 min": full < 900,
    }
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    report(1, ok, f"decreasing certificate; (a)-(c) {fast:.1f} s, full {full:.1f} s" + (f"; failed {bad}" if bad else ""))
    assert ok, bad


def test_criterion_02_certificate_increasing(tmp_path):
    code, obj, full = _certify("increasing", tmp_path)
    ok = code == 0 and obj["overall"] == "pass" and full < 900
    failed = [s["name"] for s in obj["steps"] if s["verdict"] != "pass"]
    report(2, ok, f"increasing certificate, {len(obj['steps'])} steps, {full:.1f} s" + (f"; failed {failed}" if failed else ""))
    assert ok


def test_criterion_03_isochrony():
    hs = np.geomspace(1e-3, 1e3, 13)
    quad = max(abs(ds.period_quadrature(h, -0.5) - TWO_PI) for h in hs)
    rmap = max(abs(ds.period_returnmap_energy(h, -0.5) - TWO_PI) for h in hs)
    # for D = 0 the closed orbits are the levels 0 < h < 1/2; larger levels are open conics
    hs0 = np.geomspace(1e-3, 0.49, 10)
    rmap0 = max(abs(ds.period_returnmap_energy(h, 0.0) - TWO_PI) for h in hs0)
    escapes = 0
    for x0 in (0.5, 0.75):
        try:
            ds.period_returnmap(LoudParams(0.0), PlanarState("loud", x0, 0.0))
        except ds.EscapedAnnulus:
            escapes += 1
    ok = quad < 1e-9 and rmap < 1e-9 and rmap0 < 1e-9 and escapes == 2
    report(
        3,
        ok,
        f"D=-1/2 max |T-2pi|: quadrature {quad:.1e}, return map {rmap:.1e}; "
        f"D=0 return map {rmap0:.1e} on h in [1e-3, 0.49], open levels escape: {escapes}/2",
    )
    assert ok


def test_criterion_04_local_expansion():
    errs = {}
    for D in (-0.4, -0.25, -0.1):
        ref = math.pi * D * (2 * D + 1)
        errs[D] = abs(ds.fit_p2(D, D + 1) / ref - 1)
    full = ds.p2_constant(-0.25, 0.75)
    fit = ds.fit_p2(-0.25, 0.75)
    e_full = abs(fit / (-math.pi / 8) - 1)
    ok = all(e < 1e-3 for e in errs.values()) and abs(full + math.pi / 8) < 1e-15 and e_full < 1e-3
    report(4, ok, "relative fit errors " + ", ".join(f"D={D}: {e:.1e}" for D, e in errs.items()) + f"; (-1/4,3/4): {e_full:.1e}")
    assert ok


def test_criterion_05_boundary_limits():
    loud = {D: abs(ds.period_quadrature(1e6, D) / (math.pi / (D + 1)) - 1) for D in (-0.75, -0.25, -0.1)}
    zk = {}
    for n, k in ((1, 1), (1, 2), (2, 1), (3, 4)):
        lim = 2 * (k + n) * math.pi / (k + 2 * n)
        zk[(n, k)] = abs(ds.zk_period(ZkParams(n, k), 2.0) / lim - 1)
    ok = all(v < 0.01 for v in loud.values()) and all(v < 0.01 for v in zk.values())
    report(5, ok, f"max rel gap Loud {max(loud.values()):.1e}, Z_k at rho=2 {max(zk.values()):.1e}")
    assert ok


def test_criterion_06_closed_forms():
    T = ds.period_returnmap(LoudParams(-1.0), PlanarState("loud", 0.6, 0.0))
    e1 = abs(T - 7.853981633974483)
    worst = 0.0
    for alpha, n, grid in ((1.0, 1, np.linspace(0.05, 3.0, 20)), (-1.0, 2, np.linspace(0.05, 0.9, 20))):
        p = ZkParams(n, 0, complex(0, alpha))
        for uu in grid:
            got = ds.period_returnmap(p, PlanarState("z", math.sqrt(uu), 0.0))
            worst = max(worst, abs(got - TWO_PI / (1 + alpha * uu ** n)))
    ok = e1 < 1e-8 and worst < 1e-8
    report(6, ok, f"D=-1 at r=0.6 error {e1:.1e}; k=0 max error {worst:.1e}")
    assert ok


def test_criterion_07_engine_equivalence():
    worst = 0.0
    for D in (-0.75, -0.5, -0.25, -0.1):
        for h in (0.01, 0.1, 1.0, 10.0):
            q = ds.period_quadrature(h, D)
            r = ds.period_returnmap(LoudParams(D), PlanarState("loud", ds.turning_points(h, D)[1], 0.0))
            worst = max(worst, abs(q / r - 1))
    triples = [(1, 1, 0.5), (1, 2, 0.7), (2, 1, 0.4), (3, 4, 0.6), (2, 3, 0.8), (4, 1, 0.3), (1, 3, 1.0), (3, 2, 0.5)]
    zk_worst = 0.0
    for n, k, rho in triples:
        m = ds.map_zk_orbit(ZkParams(n, k), rho)
        T_loud = ds.period_returnmap(LoudParams(m.D), m.state)
        zk_worst = max(zk_worst, abs(ds.zk_period(ZkParams(n, k), rho) - T_loud))
    ok = worst < 1e-7 and zk_worst < 1e-8
    report(7, ok, f"quadrature/return map max rel diff {worst:.1e} (16 points); Z_k/Loud max diff {zk_worst:.1e} (8 triples)")
    assert ok


def test_criterion_08_abelian_identities():
    worst_a = worst_b = 0.0
    for D in (-0.3, -0.6):
        for h in (0.5, 5.0):
            d = 1e-4 * h
            Tp, Ip, Ap = ds.abelian_triple(h + d, D)
            Tm, Im, Am = ds.abelian_triple(h - d, D)
            T, _, _ = ds.abelian_triple(h, D)
            worst_a = max(worst_a, abs((Ap - Am) / (2 * d) - T))
            worst_b = max(worst_b, abs(2 * h * (Tp - Tm) / (2 * d) + (Ip - Im) / (2 * d) / (D + 1)))
    ok = worst_a < 1e-6 and worst_b < 1e-6
    report(8, ok, f"|A'-T| {worst_a:.1e}, |2hT'+I'/(D+1)| {worst_b:.1e}")
    assert ok


def test_criterion_09_monotonicity():
    hs = np.geomspace(1e-3, 1e3, 50)
    us = np.linspace(0.001, 0.999, 512)
    results = {}
    for D in (-0.9, -0.75, -0.6, -0.4, -0.25, -0.1):
        curve = ds.loud_curve(D, hs)
        direction, _ = curve.monotonicity()
        want = "decreasing" if D > -0.5 else "increasing"
        vals = ds.pi_sigma(us, D)
        single = bool(np.all(vals > 0) or np.all(vals < 0))
        results[D] = direction == want and single
    ok = all(results.values())
    report(9, ok, "strict monotone + single-signed criterion at D = " + ", ".join(f"{D}:{'ok' if v else 'NO'}" for D, v in results.items()))
    assert ok


def test_criterion_10_exact_oracles():
    rng = random.Random(20240601)
    sturm_bad = total_roots = 0
    for _ in range(200):
        coeffs = random_distinct_root_poly(rng)
        while True:
            a = Fraction(rng.randint(-60, 40), rng.choice([3, 7, 9]))
            b = a + Fraction(rng.randint(1, 80), rng.choice([3, 7, 9]))
            if all(c != 0 for c in (_ev(coeffs, a), _ev(coeffs, b))):
                break
        expected = grid_root_count(coeffs, a, b)
        total_roots += expected
        if sturm_count(from_coeffs(coeffs), IntervalQ(a, b)) != expected:
            sturm_bad += 1
    res_bad = 0
    for i in range(200):
        p = random_small_poly(rng, rng.randint(1, 4))
        q = random_small_poly(rng, rng.randint(1, 4))
        if i % 2:
            common = random_small_poly(rng, 1)
            p, q = _mul(p, common), _mul(q, common)
        P, Q = from_coeffs(p), from_coeffs(q)
        has_common = sympy.degree(sympy.gcd(to_sympy(P), to_sympy(Q)), X) > 0
        if resultant(P, Q, "u").is_zero() != has_common:
            res_bad += 1
    sq_bad = 0
    for _ in range(100):
        prod = sympy.Poly(rng.choice([-2, 1, 3]), X)
        while prod.degree() < 1:
            for _ in range(rng.randint(1, 3)):
                f = sympy.Poly([rng.choice([-3, 1, 2])] + [rng.randint(-5, 5) for _ in range(rng.randint(1, 3))], X)
                prod = prod * f ** rng.randint(1, 3)
        P = from_coeffs([Fraction(int(c)) for c in reversed(prod.all_coeffs())])
        blocks = squarefree_decomposition(P)
        back = sympy.Poly(1, X)
        for f, m in blocks:
            back = back * to_sympy(f) ** m
        ratio = sympy.div(prod, back)
        coprime = all(
            sympy.degree(sympy.gcd(to_sympy(f), to_sympy(g)), X) == 0
            for i, (f, _) in enumerate(blocks)
            for g, _ in blocks[i + 1 :]
        )
        sqfree = all(sympy.degree(sympy.gcd(to_sympy(f), to_sympy(f).diff(X)), X) == 0 for f, _ in blocks)
        if not (ratio[1].is_zero and ratio[0].degree() <= 0 and coprime and sqfree):
            sq_bad += 1
    ok = sturm_bad == res_bad == sq_bad == 0 and total_roots > 0
    report(10, ok, f"mismatches: sturm {sturm_bad}/200 ({total_roots} roots), resultant {res_bad}/200, squarefree {sq_bad}/100")
    assert ok


def _ev(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
