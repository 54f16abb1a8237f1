"""Command line entry point: period tables, criterion scans, certificate replay."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import dynsys as ds
from .exactalg import EndpointRoot, ExactAlgebraError, IntervalQ, PolyFormatError, read_poly, sturm_count

EXIT_OK, EXIT_CERT, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit status 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:lin|log:count`` with count >= 2 and start < stop."""
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"grid {text!r} is not start:stop:lin|log:count")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[3])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid {text!r} has a malformed number") from None
    kind = parts[2]
    if kind not in ("lin", "log"):
        raise argparse.ArgumentTypeError(f"grid spacing must be lin or log, got {kind!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("grid count must be at least 2")
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise argparse.ArgumentTypeError("grid needs finite start < stop")
    if kind == "log":
        if a <= 0:
            raise argparse.ArgumentTypeError("log grid needs start > 0")
        return np.geomspace(a, b, n)
    return np.linspace(a, b, n)


def parse_interval(text: str) -> IntervalQ:
    try:
        lo, hi = (s.strip() for s in text.split(","))
        lo_v = None if lo in ("-inf", "-oo") else Fraction(lo)
        hi_v = None if hi in ("inf", "+inf", "oo") else Fraction(hi)
        return IntervalQ(lo_v, hi_v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"interval {text!r} is not lo,hi with rational ends") from None


def thread_count() -> int:
    raw = os.environ.get("PERIOD_ATLAS_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"PERIOD_ATLAS_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise UsageError("PERIOD_ATLAS_THREADS must be >= 0")
    return n


def make_map(threads: int):
    """A ``map`` replacement; results keep input order, so output does not depend on threads."""
    if threads <= 1:
        return map

    def pmap(fn, items):
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, list(items)))

    return pmap


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def fmt(x: float) -> str:
    return "inf" if x == math.inf else f"{x:.17g}"


# -- period -------------------------------------------------------------


def _loud_rho_curve(p: ds.LoudParams, rhos, map_fn, on_error) -> ds.PeriodCurve:
    def point(r):
        st = ds.PlanarState("loud", float(r), 0.0)
        T = ds.period_returnmap(p, st)
        return T, abs(T - ds.period_returnmap(p, st, rtol=1e-10))

    curve = ds.PeriodCurve()
    for r, (val, exc) in zip(rhos, map_fn(lambda r: ds.sweep._safe(point, r), rhos)):
        if exc is not None:
            on_error(curve, r, exc)
            break
        curve.append(r, val[0], "returnmap", val[1])
    return curve


def cmd_period(args) -> int:
    failure: List[str] = []

    def on_error(curve, param, exc):
        failure.append(f"{type(exc).__name__} at param={fmt(float(param))}: {exc}")

    map_fn = make_map(thread_count())
    if args.system == "loud":
        if args.D is None:
            raise UsageError("--system loud needs --D")
        p = ds.LoudParams(args.D, args.F)
        if (args.h is None) == (args.rho is None):
            raise UsageError("give exactly one of --h (energy grid) or --rho (x-intercept grid)")
        if args.h is not None:
            if not p.on_line:
                raise UsageError("energy grids need F = D + 1")
            method = args.method or "quadrature"
            if method == "quadrature" and not -1 < p.D < 0:
                raise UsageError("quadrature needs D in (-1, 0); use --method returnmap")
            curve = ds.loud_curve(p.D, args.h, method, map_fn, on_error)
        else:
            if args.method == "quadrature":
                raise UsageError("--rho grids use the return map")
            curve = _loud_rho_curve(p, args.rho, map_fn, on_error)
        try:
            limit = ds.asymptotic_period(p)
        except ds.DomainError:
            limit = None
    else:
        if args.n is None or args.k is None:
            raise UsageError("--system zk needs --n and --k")
        if args.rho is None or args.h is not None:
            raise UsageError("--system zk takes a --rho grid")
        p = ds.ZkParams(args.n, args.k, complex(args.a_re, args.a_im))
        if p.a == 0:
            raise UsageError("a must be nonzero")
        curve = ds.zk_curve(p, args.rho, map_fn, on_error)
        try:
            limit = ds.asymptotic_period(p)
        except ds.DomainError:
            limit = None
    direction, where = curve.monotonicity()
    mono = direction if where is None else f"{direction} (first violation at row {where})"
    lim = "n/a" if limit is None else fmt(limit)
    if args.format == "json":
        obj = {
            "rows": [
                {"param": a, "period": b, "method": c, "err_estimate": d}
                for a, b, c, d in zip(curve.params, curve.periods, curve.methods, curve.errors)
            ],
            "limit": lim,
            "monotonicity": mono,
            "status": failure[0] if failure else "ok",
        }
        text = json.dumps(obj, indent=1) + "\n"
    else:
        text = curve.to_csv()
        if failure:
            text += f"# status: failed: {failure[0]}\n"
    emit(text, args.out)
    print(f"# rows: {len(curve)}")
    print(f"# limit: {lim}")
    print(f"# monotonicity: {mono}")
    if failure:
        print(f"# status: failed: {failure[0]}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


# -- criterion ----------------------------------------------------------


def cmd_criterion(args) -> int:
    D = args.D
    if not -1 < D < 0 or D == -0.5:
        raise UsageError("--D must lie in (-1, 0) without -1/2")
    us = args.u if args.u is not None else np.linspace(0.001, 0.999, 512)
    if np.any(us <= 0) or np.any(us >= 1):
        raise UsageError("u-grid must lie inside the open interval (0, 1)")
    vals = np.asarray(ds.pi_sigma(us, D), dtype=float)
    signs = set(np.sign(vals).tolist())
    single = signs in ({1.0}, {-1.0})
    lines = ["u,pi_sigma\n"] + [f"{a:.17g},{b:.17g}\n" for a, b in zip(us, vals)]
    emit("".join(lines), args.out)
    verdict = "yes" if single else "no"
    if single:
        verdict += " (positive)" if signs == {1.0} else " (negative)"
    print(f"# single-signed: {verdict}")
    return EXIT_OK


# -- certify ------------------------------------------------------------


def cmd_certify(args) -> int:
    from .certify import certify_theoremB
    from .exactalg import write_poly

    map_fn = make_map(thread_count())
    report, pp = certify_theoremB(args.branch, map_fn=map_fn, cross_check=not args.no_cross_check)
    emit(report.to_json(), args.out)
    if args.emit_polys and pp is not None:
        os.makedirs(args.emit_polys, exist_ok=True)
        for name, poly in pp.named().items():
            write_poly(os.path.join(args.emit_polys, f"{name}.txt"), poly)
    for s in report.steps:
        print(f"# {s.name}: {s.verdict}", file=sys.stderr)
    print(f"# overall: {report.overall}", file=sys.stderr)
    return EXIT_OK if report.overall == "pass" else EXIT_CERT


# -- map ----------------------------------------------------------------


def cmd_map(args) -> int:
    n, k = args.n, args.k
    if n < 0 or k < 0 or n + k < 1:
        raise UsageError("need n, k >= 0 with n + k >= 1")
    out: List[str] = [f"n = {n}", f"k = {k}"]
    if k == 0:
        alpha = args.alpha
        if alpha is None or alpha == 0:
            raise UsageError("k = 0 needs a nonzero --alpha (a = alpha i)")
        if alpha < 0:
            bound = (-1.0 / alpha) ** (1.0 / n)
            out.append(f"annulus: u = z zbar < {fmt(bound)}")
            out.append("period -> inf at the boundary (a circle of equilibria)")
            default = np.linspace(0.0, 0.95 * bound, 20)
        else:
            bound = math.inf
            out.append("annulus: the whole plane")
            out.append("period -> 0 as u -> inf")
            default = np.linspace(0.0, 10.0, 20)
        us = args.u if args.u is not None else default
        if np.any(us < 0) or np.any(us >= bound):
            raise UsageError("u-grid must lie in [0, annulus bound)")
        out.append("T(u) = 2 pi / (1 + alpha u^n)")
        out.append("u,period")
        out.extend(f"{fmt(x)},{fmt(ds.closed_form_period('kzero', alpha=alpha, n=n, u=float(x)))}" for x in us)
    elif n == 0:
        out.append("isochronous: T = 2 pi for every orbit")
    else:
        red = ds.zk_to_loud(n, k)
        out.append(f"b = {fmt(red.b)}")
        out.append(f"D = {fmt(red.D)}")
        out.append(f"F = {fmt(red.F)}")
        if args.rho is not None:
            if args.rho < 0:
                raise UsageError("--rho must be non-negative")
            m = ds.map_zk_orbit(ds.ZkParams(n, k, 1.0), args.rho)
            x, y = m.state.xy
            out.append(f"initial point (x, y) = ({fmt(x + 0.0)}, {fmt(y + 0.0)})")
        out.append(f"limit (Z_k) = {fmt(ds.asymptotic_period(ds.ZkParams(n, k, 1.0)))}")
        out.append(f"limit (Loud) = {fmt(ds.asymptotic_period(red.loud))}")
    emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


# -- sturm --------------------------------------------------------------


def cmd_sturm(args) -> int:
    p = read_poly(args.file)
    if len(p.variables()) > 1:
        raise UsageError(f"polynomial is not univariate (uses {p.variables()})")
    if p.is_zero():
        raise UsageError("the zero polynomial has no root count")
    print(sturm_count(p, args.interval))
    return EXIT_OK


# -- parser -------------------------------------------------------------


def build_parser() -> Parser:
    parser = Parser(prog="period-atlas", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", help="period table along an energy or radius grid")
    p.add_argument("--system", choices=("loud", "zk"), required=True)
    p.add_argument("--D", type=float, help="Loud coefficient of x^2")
    p.add_argument("--F", type=float, help="Loud coefficient of y^2 (default D + 1)")
    p.add_argument("--n", type=int, help="Z_k exponent n")
    p.add_argument("--k", type=int, help="Z_k symmetry order k")
    p.add_argument("--a-re", type=float, default=1.0, help="real part of a (default 1)")
    p.add_argument("--a-im", type=float, default=0.0, help="imaginary part of a (default 0)")
    p.add_argument("--h", type=parse_grid, help="energy grid start:stop:lin|log:count (Loud, F = D + 1)")
    p.add_argument("--rho", type=parse_grid, help="radius grid start:stop:lin|log:count")
    p.add_argument("--method", choices=("quadrature", "returnmap"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=cmd_period)

    c = sub.add_parser("criterion", help="sign scan of the criterion operator on (0, 1)")
    c.add_argument("--D", type=float, required=True)
    c.add_argument("--u", type=parse_grid, help="u-grid inside (0, 1) (default 512 points)")
    c.add_argument("--out", help="output file (default stdout)")
    c.set_defaults(fn=cmd_criterion)

    r = sub.add_parser("certify", help="exact replay of the monotonicity certificate")
    r.add_argument("--branch", choices=("decreasing", "increasing"), required=True)
    r.add_argument("--out", help="JSON report path (default stdout)")
    r.add_argument("--emit-polys", metavar="DIR", help="write every named polynomial to DIR")
    r.add_argument("--no-cross-check", action="store_true", help="skip the interpolation cross-checks")
    r.set_defaults(fn=cmd_certify)

    m = sub.add_parser("map", help="reduction of a Z_k equation to the Loud family")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--rho", type=float, help="radius of the orbit to map")
    m.add_argument("--alpha", type=float, help="a = alpha i for k = 0")
    m.add_argument("--u", type=parse_grid, help="u-grid for the k = 0 closed form")
    m.add_argument("--out", help="output file (default stdout)")
    m.set_defaults(fn=cmd_map)

    s = sub.add_parser("sturm", help="exact real-root count of a univariate polynomial file")
    s.add_argument("file", help="polynomial in the text or JSON format")
    s.add_argument(
        "--interval", type=parse_interval, required=True, help="open interval lo,hi (write --interval=-1,0 for negative lo)"
    )
    s.set_defaults(fn=cmd_sturm)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"period-atlas: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyFormatError as exc:
        print(f"period-atlas: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except EndpointRoot as exc:
        print(f"period-atlas: root at interval endpoint {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ds.DynsysError, ExactAlgebraError, ArithmeticError, ValueError, OSError) as exc:
        print(f"period-atlas: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
