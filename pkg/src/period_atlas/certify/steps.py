"""Individual steps of the monotonicity certificate.

Every step returns a :class:`Step` whose witness holds enough exact data
(polynomials, rational intervals, root counts) to re-check it in isolation.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactalg import (
    EndpointRoot,
    IntervalQ,
    MPoly,
    NotDivisible,
    discriminant,
    exact_divide,
    interpolated_resultant,
    isolate_roots,
    refine,
    resultant,
    squarefree_decomposition,
    strip_factor,
    sturm_count,
)
from ..exactalg.polynomial import D, u, w
from .errors import BoundTooLoose, CertificateError
from .polys import (
    BASE_D,
    BRANCH_RANGE,
    D2_ENCLOSURE,
    DELTA_U_CONSTANT,
    DELTA_U_EXPONENTS,
    DELTA_W_DISPLAYED,
    DELTA_W_QUARTIC,
    K0,
    K1,
    Q1_D13,
    Q1_D23,
    Q2_D13,
    R2_AT_0,
    R2_AT_1,
    R_D13,
    R_D13_COEFFS,
    S_DISPLAYED,
    ProofPolynomials,
    q_of,
)
from .report import Step, make_step

# default sample per sub-interval, listed left to right
DEFAULT_SAMPLES = {
    "decreasing": (Fraction(-1, 3), Fraction(-1, 8), Fraction(-1, 10), Fraction(-1, 50)),
    "increasing": (Fraction(-49, 50), Fraction(-9, 10), Fraction(-7, 8), Fraction(-2, 3)),
}

# the variable R2 lives in and where its roots are excluded
TARGET = {
    "decreasing": ("u", IntervalQ(0, 1)),
    "increasing": ("w", IntervalQ(None, 0)),
}

# expected left-to-right order of the discriminant roots in each branch
ROOT_ORDER = {"decreasing": ("D2", "D1", "D0"), "increasing": ("D0", "D1", "D2")}
ROOT_SOURCE = {"D0": "K0", "D1": "K1", "D2": "W"}

RETRY_BUDGET = 10


def branch_interval(branch: str) -> IntervalQ:
    lo, hi = BRANCH_RANGE[branch]
    return IntervalQ(lo, hi)


# -- small exact helpers -------------------------------------------------


def primitive(p: MPoly) -> MPoly:
    """Integer multiple of ``p`` with coprime coefficients and positive lex-leading coefficient."""
    d, terms = p.integer_terms()
    g = 0
    for c in terms.values():
        g = gcd(g, c)
    if p.leading_term()[1] < 0:
        g = -g
    return MPoly({e: Fraction(c, g) for e, c in terms.items()})


def count_open(p: MPoly, iv: IntervalQ) -> int:
    """Distinct real roots of the univariate ``p`` in the open interval ``iv``.

    Roots sitting exactly on a finite endpoint are divided out first.
    """
    if p.is_zero():
        raise CertificateError("polynomial vanishes identically")
    if p.is_constant():
        return 0
    (var,) = p.variables()
    x = MPoly.var(var)
    for e in (iv.lo, iv.hi):
        if e is not None:
            while not p.is_constant() and p.subs(var, e).is_zero():
                p = exact_divide(p, x - e)
    if p.is_constant():
        return 0
    return sturm_count(p, iv)


def nonvanishing_on_box(
    f: MPoly, var: str, viv: IntervalQ, piv: IntervalQ, sample: Fraction
) -> Tuple[bool, Dict[str, object]]:
    """Whether ``f(var; D)`` has no root with ``var`` in ``viv`` for every ``D`` in ``piv``.

    The number of roots in ``viv`` is locally constant in ``D`` unless a root
    crosses an endpoint, enters from infinity (unbounded ``viv``) or two
    roots collide; each event is excluded by a root count in ``D``.
    """
    used = f.variables()
    wit: Dict[str, object] = {"factor": f}
    if var not in used:
        n = count_open(f, piv)
        wit["roots_in_parameter_range"] = n
        return n == 0, wit
    if "D" not in used:
        n = count_open(f, viv)
        wit["roots_in_range"] = n
        return n == 0, wit
    ok = True
    events: Dict[str, int] = {}
    for tag, e in (("lo", viv.lo), ("hi", viv.hi)):
        if e is not None:
            events[f"endpoint_{tag}"] = count_open(f.subs(var, e), piv)
    if not viv.bounded:
        events["leading_coefficient"] = count_open(f.leading_coefficient(var), piv)
    if f.degree(var) >= 2:
        events["discriminant"] = count_open(discriminant(f, var), piv)
    base = count_open(f.subs("D", sample), viv)
    wit.update(events=events, sample=sample, roots_at_sample=base)
    ok = base == 0 and all(n == 0 for n in events.values())
    return ok, wit


def _failure_step(name: str, claim: str, exc: Exception, inputs=()) -> Step:
    return make_step(name, claim, False, {"error": f"{type(exc).__name__}: {exc}"}, inputs)


# -- restriction of the w range -----------------------------------------


def _sqrt2_enclosure() -> Tuple[Fraction, Fraction]:
    lo, hi = Fraction(7, 5), Fraction(17, 12)
    if not (lo * lo < 2 < hi * hi):
        raise CertificateError("rational enclosure of sqrt(2) is wrong")
    return lo, hi


def check_P_negative(pp: ProofPolynomials) -> Step:
    """P(w; D) < 0 on the part of the w-axis the curves can reach."""
    if pp.branch == "decreasing":
        return _check_P_decreasing(pp)
    return _check_P_increasing(pp)


def _check_P_decreasing(pp: ProofPolynomials) -> Step:
    name, claim = "check_P_negative", "P(w;D) < 0 for w*(D) < w < 0 and -1/2 < D < 0"
    P = pp.P
    piv = branch_interval("decreasing")
    dw = discriminant(P, "w")
    pp.Delta_w = dw
    quartic = count_open(DELTA_W_QUARTIC, piv)
    P0 = P.subs("w", 0)
    # base point D = -1/3, where w* = -3(1 + sqrt 2)
    r_lo, r_hi = _sqrt2_enclosure()
    w_enc = IntervalQ(-3 * (1 + r_hi), -3 * (1 + r_lo))
    P13 = P.subs("D", Fraction(-1, 3))
    base_count = count_open(P13, IntervalQ(w_enc.lo, 0))
    # (1+2D)^2 P(w) + lin(w) is a multiple of q(w), and q(w*) = 0
    lin = 2 * (D + 1) * (4 * D ** 2 + 4 * D - 1) * w + 2 * (2 * D + 3) * (D + 1)
    try:
        cof = exact_divide((1 + 2 * D) ** 2 * P + lin, q_of(w))
        reduction = True
    except NotDivisible:
        cof, reduction = None, False
    lin13 = lin.subs("D", Fraction(-1, 3))
    scale13 = Fraction(1, 9)  # (1 + 2D)^2 at D = -1/3
    vals = [-lin13(w=x) / scale13 for x in (w_enc.lo, w_enc.hi)]
    # w* < 0, 4D^2+4D-1 < 0 and 2D+3 > 0 make the reduced value negative for every D
    general = {
        "4D^2+4D-1": count_open(4 * D ** 2 + 4 * D - 1, piv),
        "2D+3": count_open(2 * D + 3, piv),
        "D+1": count_open(D + 1, piv),
    }
    ok = (
        dw == DELTA_W_DISPLAYED
        and quartic == 0
        and P0 == MPoly.const(-1)
        and base_count == 0
        and reduction
        and all(v < 0 for v in vals)
        and all(n == 0 for n in general.values())
        and (4 * D ** 2 + 4 * D - 1)(D=Fraction(-1, 4)) < 0
    )
    witness = {
        "Delta_w": dw,
        "Delta_w_matches_display": dw == DELTA_W_DISPLAYED,
        "quartic_roots_in_branch": quartic,
        "P(0;D)": P0,
        "sqrt2_enclosure": [r_lo, r_hi],
        "w_star_enclosure_at_-1/3": [w_enc.lo, w_enc.hi],
        "roots_of_P(w;-1/3)_on_(w_lo,0)": base_count,
        "reduction_cofactor": cof,
        "reduced_value_at_enclosure_ends": vals,
        "sign_factor_roots_in_branch": general,
    }
    return make_step(name, claim, ok, witness, ["P"])


def _check_P_increasing(pp: ProofPolynomials) -> Step:
    name = "check_P_negative"
    claim = "P(w;D) and q(w;D) do not vanish for w < 0 and -1 < D < -1/2"
    piv = branch_interval("increasing")
    half = IntervalQ(None, 0)
    sample = Fraction(-3, 4)
    dw = discriminant(pp.P, "w")
    pp.Delta_w = dw
    okP, witP = nonvanishing_on_box(pp.P, "w", half, piv, sample)
    okq, witq = nonvanishing_on_box(q_of(w), "w", half, piv, sample)
    ok = dw == DELTA_W_DISPLAYED and okP and okq
    witness = {
        "Delta_w": dw,
        "Delta_w_matches_display": dw == DELTA_W_DISPLAYED,
        "restriction": "w in (-inf, 0)",
        "P": witP,
        "q": witq,
    }
    return make_step(name, claim, ok, witness, ["P"])


# -- base-parameter replays ---------------------------------------------


def replay_D13(pp: Optional[ProofPolynomials] = None, Q2: Optional[MPoly] = None) -> Step:
    """Res(Q1, Q2, w) = 32 (u-1)^3 u^6 R(u) and R has no root in (0, 1)."""
    name, claim = "replay_D13", "no common zero of the two curves for D = -1/3, 0 < u < 1"
    Q2 = Q2_D13 if Q2 is None else Q2
    res = resultant(Q1_D13, Q2, "w")
    head = 32 * (u - 1) ** 3 * u ** 6
    expected = head * R_D13
    got = res.univariate_coeffs("u") if res else []
    exp = expected.univariate_coeffs("u")
    n = max(len(got), len(exp))
    got += [Fraction(0)] * (n - len(got))
    exp += [Fraction(0)] * (n - len(exp))
    res_bad = [j for j in range(n) if got[j] != exp[j]]
    witness: Dict[str, object] = {"resultant": res, "resultant_mismatch_indices": res_bad}
    try:
        R = exact_divide(res, head)
        rc = R.univariate_coeffs("u")
        m = max(len(rc), len(R_D13_COEFFS))
        rc += [Fraction(0)] * (m - len(rc))
        ref = list(R_D13_COEFFS) + [0] * (m - len(R_D13_COEFFS))
        bad = [j for j in range(m) if rc[j] != ref[j]]
        witness["R"] = R
        witness["R_mismatch_indices"] = bad
    except NotDivisible as exc:
        R, bad = None, None
        witness["division_error"] = str(exc)
    count = None
    if R is not None and not bad:
        count = count_open(R, IntervalQ(0, 1))
    witness["roots_of_R_in_(0,1)"] = count
    consistent = None
    if pp is not None:
        consistent = 243 * pp.P2.subs("D", Fraction(-1, 3)) == Q2
        witness["Q2_is_243_P2_at_-1/3"] = consistent
    ok = not res_bad and bad == [] and count == 0 and consistent is not False
    return make_step(name, claim, ok, witness, ["Q1", "Q2"])


def replay_D23(pp: ProofPolynomials) -> Step:
    """Base case of the increasing branch at D = -2/3, eliminating u."""
    name, claim = "replay_D23", "no common zero of the two curves for D = -2/3, 0 < u < 1, w < 0"
    Q2 = primitive(pp.P2.subs("D", Fraction(-2, 3)))
    res = resultant(Q1_D23, Q2, "u")
    rest, k0 = strip_factor(res, w)
    rest, k1 = strip_factor(rest, w - 1)
    count = count_open(rest, IntervalQ(None, 0))
    witness = {
        "Q1": Q1_D23,
        "Q2": Q2,
        "resultant": res,
        "exponent_w": k0,
        "exponent_w-1": k1,
        "cofactor": rest,
        "roots_of_cofactor_on_(-inf,0)": count,
    }
    return make_step(name, claim, count == 0, witness, ["Q1", "P2"])


# -- elimination --------------------------------------------------------

_TRIAL = ("w", "w-1", "1+Dw", "D", "D+1", "1+2D", "q(w)")


def _trial_factor(name: str) -> MPoly:
    return {
        "w": w,
        "w-1": w - 1,
        "1+Dw": 1 + D * w,
        "D": D,
        "D+1": D + 1,
        "1+2D": 1 + 2 * D,
        "q(w)": q_of(w),
    }[name]


def compute_R2(pp: ProofPolynomials, cross_check: bool = True) -> Step:
    """Res(P2, P3) = S * R2 with S a product of elementary factors."""
    if pp.branch == "decreasing":
        return _compute_R2_decreasing(pp, cross_check)
    return _compute_R2_increasing(pp, cross_check)


def _compute_R2_decreasing(pp: ProofPolynomials, cross_check: bool) -> Step:
    name, claim = "compute_R2", "Res(P2,P3,w) = S(u;D) R2(u;D) with the displayed S"
    res = resultant(pp.P2, pp.P3, "w")
    witness: Dict[str, object] = {}
    if cross_check:
        witness["interpolation_agrees"] = interpolated_resultant(pp.P2, pp.P3, "w", "D") == res
    try:
        R2 = exact_divide(res, S_DISPLAYED)
    except NotDivisible as exc:
        witness["division_error"] = str(exc)
        return make_step(name, claim, False, witness, ["P2", "P3", "S"])
    pp.S, pp.R2 = S_DISPLAYED, R2
    at0, at1 = R2.subs("u", 0), R2.subs("u", 1)
    witness.update(
        {
            "S": S_DISPLAYED,
            "R2": R2,
            "degree_u": R2.degree("u"),
            "R2(0;D)": at0,
            "R2(1;D)": at1,
            "R2(0;D)_matches": at0 == R2_AT_0,
            "R2(1;D)_matches": at1 == R2_AT_1,
        }
    )
    ok = (
        at0 == R2_AT_0
        and at1 == R2_AT_1
        and R2.degree("u") == 12
        and witness.get("interpolation_agrees", True)
    )
    return make_step(name, claim, ok, witness, ["P2", "P3", "S"])


def _compute_R2_increasing(pp: ProofPolynomials, cross_check: bool) -> Step:
    name, claim = "compute_R2", "Res(P2,P3,u) = S(w;D) R2(w;D) with S elementary"
    res = resultant(pp.P2, pp.P3, "u")
    witness: Dict[str, object] = {}
    if cross_check:
        witness["interpolation_agrees"] = interpolated_resultant(pp.P2, pp.P3, "u", "D") == res
    rest = res
    exps = {}
    S = MPoly.const(1)
    for fname in _TRIAL:
        f = _trial_factor(fname)
        rest, k = strip_factor(rest, f)
        exps[fname] = k
        S = S * f ** k
    # fold the numeric constant into S so that R2(0;D) = 54 D (D+1), as on the other branch
    at0 = rest.subs("w", 0)
    c = Fraction(0)
    if at0:
        c = exact_divide(at0, R2_AT_0)
    ok_const = isinstance(c, MPoly) and c.is_constant()
    if ok_const:
        c = c.constant_value()
        R2 = rest / c
        S = S * c
    else:
        R2 = rest
    pp.S, pp.R2 = S, R2
    piv = branch_interval("increasing")
    lc = R2.leading_coefficient("w")
    witness.update(
        {
            "S": S,
            "R2": R2,
            "exponents": exps,
            "constant": c if ok_const else None,
            "degree_w": R2.degree("w"),
            "R2(0;D)": R2.subs("w", 0),
            "leading_coefficient_w": lc,
            "roots_of_R2(0;D)_in_branch": count_open(R2.subs("w", 0), piv),
            "roots_of_leading_coefficient_in_branch": count_open(lc, piv),
            "R2(1;D)_equals_decreasing_identity": R2.subs("w", 1) == R2_AT_1,
        }
    )
    ok = (
        ok_const
        and R2.degree("w") == 12
        and witness["roots_of_R2(0;D)_in_branch"] == 0
        and witness["roots_of_leading_coefficient_in_branch"] == 0
        and witness.get("interpolation_agrees", True)
    )
    return make_step(name, claim, ok, witness, ["P2", "P3"])


def check_elementary_factors(pp: ProofPolynomials) -> Step:
    """Every factor of S is nonzero on the target range over the whole branch."""
    var, target = TARGET[pp.branch]
    piv = branch_interval(pp.branch)
    x = MPoly.var(var)
    factors = {
        "x": x,
        "x-1": x - 1,
        "1+Dx": 1 + D * x,
        "q(x)": q_of(x),
        "D": D,
        "D+1": D + 1,
        "1+2D": 1 + 2 * D,
    }
    sample = DEFAULT_SAMPLES[pp.branch][0]
    results = {}
    ok = True
    for fname, f in factors.items():
        good, wit = nonvanishing_on_box(f, var, target, piv, sample)
        results[fname.replace("x", var)] = wit
        ok = ok and good
    claim = f"the elementary factors of S have no zero for {var} in {target}"
    return make_step("elementary_factors", claim, ok, {"variable": var, "factors": results}, ["S"])


# -- discriminant analysis ----------------------------------------------


def analyze_discriminant(pp: ProofPolynomials, cross_check: bool = True) -> Tuple[Step, Dict[str, IntervalQ]]:
    """Factor shape of disc(R2) and exact isolation of its roots in the branch."""
    name = "analyze_discriminant"
    claim = "disc(R2) = c D^43 (D+1)^43 (1+2D)^32 K0^3 K1^2 W^2 with three ordered roots in the branch"
    var, _ = TARGET[pp.branch]
    R2 = pp.R2
    if R2 is None:
        raise CertificateError("R2 has not been computed")
    disc = discriminant(R2, var)
    pp.Delta_u = disc
    witness: Dict[str, object] = {"Delta": disc}
    if cross_check:
        n = R2.degree(var)
        alt = interpolated_resultant(R2, R2.deriv(var), var, "D")
        if (n * (n - 1) // 2) % 2:
            alt = -alt
        witness["interpolation_agrees"] = exact_divide(alt, R2.leading_coefficient(var)) == disc

    rest = disc
    exps = []
    for f in (D, D + 1, 1 + 2 * D):
        rest, k = strip_factor(rest, f)
        exps.append(k)
    witness["exponents"] = exps
    blocks = squarefree_decomposition(rest)
    witness["blocks"] = [{"factor": f, "multiplicity": m} for f, m in blocks]
    mult = {m: f for f, m in blocks}
    K0m = K0 / K0.leading_term()[1]
    K1m = K1 / K1.leading_term()[1]
    k0_ok = 3 in mult and mult[3] == K0m
    W = None
    if 2 in mult:
        try:
            W = primitive(exact_divide(mult[2], K1m))
        except NotDivisible:
            W = None
    others = sorted(m for m in mult if m not in (2, 3))
    piv = branch_interval(pp.branch)
    other_counts = {str(m): count_open(mult[m], piv) for m in others}
    witness.update(
        {
            "K0_is_multiplicity_3_block": k0_ok,
            "K1_divides_multiplicity_2_block": W is not None,
            "W": W,
            "degree_W": W.degree("D") if W is not None else None,
            "other_block_roots_in_branch": other_counts,
        }
    )
    kappa = None
    if W is not None:
        shape = (
            DELTA_U_CONSTANT
            * D ** exps[0]
            * (D + 1) ** exps[1]
            * (1 + 2 * D) ** exps[2]
            * K0 ** 3
            * K1 ** 2
            * W ** 2
        )
        q = exact_divide(disc, shape) if rest else None
        if q is not None and q.is_constant():
            kappa = q.constant_value()
    witness["constant_vs_33554432"] = kappa
    pp.W = W
    roots: Dict[str, IntervalQ] = {}
    counts = {}
    if W is not None:
        for label, poly in (("D0", K0), ("D1", K1), ("D2", W)):
            ivs = isolate_roots(poly, piv, Fraction(1, 1000))
            counts[label] = len(ivs)
            if len(ivs) == 1:
                roots[label] = ivs[0]
        roots = separate(roots, {"D0": K0, "D1": K1, "D2": W})
    witness["root_counts"] = counts
    witness["isolating_intervals"] = roots
    order = ROOT_ORDER[pp.branch]
    ordered = len(roots) == 3 and all(
        roots[a].strictly_left_of(roots[b]) for a, b in zip(order, order[1:])
    )
    witness["order"] = list(order)
    witness["ordered"] = ordered
    extra_ok = True
    if W is not None:
        if pp.branch == "decreasing":
            enc = IntervalQ(*D2_ENCLOSURE)
            sign = W(D=enc.lo) * W(D=enc.hi)
            witness["W_sign_change_on_displayed_enclosure"] = sign < 0
            witness["D2_interval_meets_displayed_enclosure"] = "D2" in roots and roots["D2"].intersects(enc)
            extra_ok = sign < 0 and witness["D2_interval_meets_displayed_enclosure"]
        else:
            # the parameter flip D -> -1-D maps W to a multiple of itself
            flipped = primitive(W.subs("D", -1 - D))
            witness["W_symmetric_under_D_to_-1-D"] = flipped == W
    ok = (
        exps == list(DELTA_U_EXPONENTS)
        and k0_ok
        and W is not None
        and W.degree("D") == 22
        and all(n == 0 for n in other_counts.values())
        and kappa is not None
        and counts == {"D0": 1, "D1": 1, "D2": 1}
        and ordered
        and extra_ok
        and witness.get("interpolation_agrees", True)
    )
    return make_step(name, claim, ok, witness, ["R2"]), roots


def separate(roots: Dict[str, IntervalQ], polys: Dict[str, MPoly]) -> Dict[str, IntervalQ]:
    """Refine overlapping isolating intervals until they are pairwise disjoint."""
    roots = dict(roots)
    for _ in range(200):
        items = sorted(roots.items(), key=lambda kv: kv[1].lo)
        clash = None
        for (a, ia), (b, ib) in zip(items, items[1:]):
            if not ia.strictly_left_of(ib):
                clash = (a, b)
                break
        if clash is None:
            return roots
        for lab in clash:
            roots[lab] = refine(polys[lab], roots[lab], 4)
    raise CertificateError("could not separate the discriminant roots")


# -- sub-intervals and bounding polynomials -----------------------------


def _subintervals(branch: str, roots: Dict[str, IntervalQ]) -> List[Tuple[Optional[IntervalQ], Optional[IntervalQ]]]:
    """(left root, right root) isolating intervals bounding each sub-interval; None is a branch end."""
    order = [roots[lab] for lab in ROOT_ORDER[branch]]
    bounds = [None] + order + [None]
    return list(zip(bounds, bounds[1:]))


def _strictly_between(x: Fraction, left: Optional[IntervalQ], right: Optional[IntervalQ], piv: IntervalQ) -> bool:
    lo_ok = piv.lo < x if left is None else left.hi <= x
    hi_ok = x < piv.hi if right is None else x <= right.lo
    return lo_ok and hi_ok


def check_subintervals(
    pp: ProofPolynomials,
    roots: Dict[str, IntervalQ],
    samples: Optional[Sequence[Fraction]] = None,
    map_fn=map,
) -> Step:
    """One exact root count of R2 per sub-interval cut out by the discriminant roots."""
    branch = pp.branch
    var, target = TARGET[branch]
    piv = branch_interval(branch)
    samples = list(DEFAULT_SAMPLES[branch] if samples is None else samples)
    pieces = _subintervals(branch, roots)
    if len(samples) != len(pieces):
        raise CertificateError(f"need {len(pieces)} samples, got {len(samples)}")
    chosen = []
    repairs = []
    for x, (left, right) in zip(samples, pieces):
        x = Fraction(x)
        if not _strictly_between(x, left, right, piv):
            lo = piv.lo if left is None else left.hi
            hi = piv.hi if right is None else right.lo
            repairs.append({"given": x, "replaced_by": (lo + hi) / 2})
            x = (lo + hi) / 2
        chosen.append(x)
    counts = list(map_fn(lambda d: count_open(pp.R2.subs("D", d), target), chosen))
    witness = {
        "variable": var,
        "target": target,
        "samples": chosen,
        "repairs": repairs,
        "root_counts": counts,
        "sub_intervals": [
            [piv.lo if l is None else l, piv.hi if r is None else r] for l, r in pieces
        ],
    }
    claim = f"R2 has no zero for {var} in {target} at one sample per sub-interval"
    return make_step("check_subintervals", claim, all(c == 0 for c in counts), witness, ["R2"])


def upper_bound_poly(R2: MPoly, var: str, iv: IntervalQ) -> MPoly:
    """U(x) = sum_j max over D in iv of the D-coefficient block of x^j, bounded monomialwise."""
    if not iv.bounded or iv.lo <= 0 <= iv.hi:
        raise CertificateError("bounding interval must be finite and avoid 0")
    lo, hi = iv.lo, iv.hi
    idx = 0 if var == "u" else 1
    coeffs: Dict[int, Fraction] = {}
    for e, c in R2.terms.items():
        j, m = e[idx], e[2]
        coeffs[j] = coeffs.get(j, Fraction(0)) + max(c * lo ** m, c * hi ** m)
    out = MPoly.const(0)
    x = MPoly.var(var)
    for j, c in coeffs.items():
        out = out + c * x ** j
    return out


def bounding_poly(
    R2: MPoly,
    iv: IntervalQ,
    target: IntervalQ = IntervalQ(0, 1),
    var: str = "u",
) -> Tuple[MPoly, Dict[str, object]]:
    """Polynomial U with R2(x; D) <= U(x) < 0 for x in ``target`` and D in ``iv``.

    A negative half-line target is reflected onto the positive one first so
    that every power of the variable is positive.  Raises BoundTooLoose.
    """
    reflected = target.hi is not None and target.hi <= 0
    P = R2
    tgt = target
    if reflected:
        P = R2.subs(var, -MPoly.var(var))
        tgt = IntervalQ(None if target.hi is None else -target.hi, None if target.lo is None else -target.lo)
    if tgt.lo is None or tgt.lo < 0:
        raise CertificateError("target must lie on one side of 0")
    U = upper_bound_poly(P, var, iv)
    probe = tgt.midpoint if tgt.bounded else tgt.lo + 1
    at_probe = U(**{var: probe})
    if not isinstance(at_probe, Fraction):
        at_probe = at_probe.constant_value()
    wit: Dict[str, object] = {
        "parameter_interval": iv,
        "reflected": reflected,
        "U": U,
        "probe": probe,
        "U_at_probe": at_probe,
    }
    if at_probe >= 0:
        raise BoundTooLoose(f"U({probe}) = {at_probe} is not negative")
    try:
        n = sturm_count(U, tgt)
    except EndpointRoot as exc:
        raise BoundTooLoose(f"U vanishes at the endpoint {exc}") from exc
    wit["roots_of_U"] = n
    if n != 0:
        raise BoundTooLoose(f"U has {n} roots in {tgt}")
    return U, wit


def spot_check_bound(R2: MPoly, U: MPoly, var: str, iv: IntervalQ, target: IntervalQ, reflected: bool, n: int = 20, seed: int = 0) -> bool:
    """U(x) >= R2(x; D) at random rational points of the box."""
    rng = random.Random(seed)
    lo_t = target.lo if target.lo is not None else target.hi - 10
    hi_t = target.hi if target.hi is not None else target.lo + 10
    for _ in range(n):
        x = lo_t + (hi_t - lo_t) * Fraction(rng.randint(1, 999), 1000)
        d = iv.lo + iv.width * Fraction(rng.randint(0, 1000), 1000)
        ux = -x if reflected else x
        if U(**{var: ux}) < R2.evaluate({var: x, "D": d}):
            return False
    return True


def bound_root(
    pp: ProofPolynomials, label: str, iv: IntervalQ, root_poly: MPoly, budget: int = RETRY_BUDGET
) -> Step:
    """Bounding-polynomial step around one discriminant root, shrinking on failure."""
    var, target = TARGET[pp.branch]
    name = f"bounding_poly_{label}"
    claim = f"R2 < U < 0 for {var} in {target} and D in an enclosure of {label}"
    attempts = []
    cur = iv
    for attempt in range(budget + 1):
        try:
            contains = count_open(root_poly, cur) == 1 and root_poly(D=cur.lo) * root_poly(D=cur.hi) < 0
        except EndpointRoot:
            contains = False
        if not contains:
            return make_step(
                name, claim, False, {"error": "enclosure does not isolate the root", "interval": cur}, ["R2"]
            )
        try:
            U, wit = bounding_poly(pp.R2, cur, target, var)
        except BoundTooLoose as exc:
            attempts.append({"interval": cur, "reason": str(exc)})
            cur = refine(root_poly, cur, 8)
            continue
        sound = spot_check_bound(pp.R2, U, var, cur, target, wit["reflected"])
        pp.U[label] = U
        wit.update(
            root=label,
            root_polynomial=ROOT_SOURCE[label],
            failed_attempts=attempts,
            root_isolated_in_interval=True,
            spot_check=sound,
        )
        return make_step(name, claim, sound, wit, ["R2", ROOT_SOURCE[label]])
    return make_step(
        name, claim, False, {"error": "retry budget exhausted", "failed_attempts": attempts}, ["R2"]
    )


def bounding_start(pp: ProofPolynomials, label: str, roots: Dict[str, IntervalQ]) -> IntervalQ:
    """Initial enclosure: the displayed one for the degree-22 root, else the isolating interval."""
    if pp.branch == "decreasing" and label == "D2":
        return IntervalQ(*D2_ENCLOSURE)
    return roots[label]
