"""The full certificate replay for one parameter branch."""

from __future__ import annotations

from typing import Callable, Optional, Tuple

from ..exactalg import ExactAlgebraError
from .errors import CertificateError
from .polys import BRANCHES, ProofPolynomials, build_proof_polys
from .report import CertificateReport, make_step
from .steps import (
    ROOT_ORDER,
    analyze_discriminant,
    bound_root,
    bounding_start,
    check_elementary_factors,
    check_P_negative,
    check_subintervals,
    compute_R2,
    replay_D13,
    replay_D23,
)

_ERRORS = (ExactAlgebraError, CertificateError, ValueError, ArithmeticError)


def _run(report: CertificateReport, name: str, claim: str, fn, *args):
    """Run a step, turning an exception into a failed step with the message as witness."""
    try:
        return report.add(fn(*args))
    except _ERRORS as exc:
        return report.add(make_step(name, claim, False, {"error": f"{type(exc).__name__}: {exc}"}))


def _skipped(report: CertificateReport, name: str, prerequisite: str):
    report.add(make_step(name, "not run", False, {"error": f"prerequisite {prerequisite} failed"}))


def certify_theoremB(
    branch: str, map_fn: Optional[Callable] = None, cross_check: bool = True
) -> Tuple[CertificateReport, Optional[ProofPolynomials]]:
    """Replay the monotonicity certificate on ``branch``.

    ``map_fn`` (a ``map``-like callable) may run the independent sub-interval
    and bounding steps concurrently.  With ``cross_check`` the heavy
    eliminations are recomputed by evaluation and interpolation as well.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    map_fn = map_fn or map
    report = CertificateReport(branch)
    try:
        pp, wit = build_proof_polys(branch)
    except _ERRORS as exc:
        report.add(make_step("build_proof_polys", "construction", False, {"error": str(exc)}))
        return report, None
    report.add(
        make_step(
            "build_proof_polys",
            "P2 and P3 are polynomials of total degree 7 and 11",
            True,
            dict(wit, P=pp.P, P2=pp.P2, P3=pp.P3),
        )
    )
    _run(report, "check_P_negative", "", check_P_negative, pp)
    if branch == "decreasing":
        _run(report, "replay_D13", "", replay_D13, pp)
    else:
        _run(report, "replay_D23", "", replay_D23, pp)
    step = _run(report, "compute_R2", "", compute_R2, pp, cross_check)
    if not step.passed:
        for name in ("elementary_factors", "analyze_discriminant", "check_subintervals", "bounding_poly"):
            _skipped(report, name, "compute_R2")
        return report, pp
    _run(report, "elementary_factors", "", check_elementary_factors, pp)
    try:
        step, roots = analyze_discriminant(pp, cross_check)
        report.add(step)
    except _ERRORS as exc:
        report.add(make_step("analyze_discriminant", "", False, {"error": str(exc)}))
        roots = {}
    if len(roots) != 3:
        _skipped(report, "check_subintervals", "analyze_discriminant")
        _skipped(report, "bounding_poly", "analyze_discriminant")
        return report, pp
    _run(report, "check_subintervals", "", check_subintervals, pp, roots, None, map_fn)
    polys = {"D0": pp.K0, "D1": pp.K1, "D2": pp.W}
    labels = ROOT_ORDER[branch]
    steps = list(
        map_fn(lambda lab: bound_root(pp, lab, bounding_start(pp, lab, roots), polys[lab]), labels)
    )
    for s in steps:
        report.add(s)
    return report, pp
