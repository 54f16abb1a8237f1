"""Polynomials of the monotonicity certificate, built by exact denominator clearing."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..exactalg import MPoly, exact_divide
from ..exactalg.polynomial import D, u, w
from .errors import CertificateError

BRANCHES = ("decreasing", "increasing")

# parameter range of each branch
BRANCH_RANGE = {
    "decreasing": (Fraction(-1, 2), Fraction(0)),
    "increasing": (Fraction(-1), Fraction(-1, 2)),
}

# base parameter where the two curves are separated directly
BASE_D = {"decreasing": Fraction(-1, 3), "increasing": Fraction(-2, 3)}


def P_of(x: MPoly) -> MPoly:
    """P(x; D) = -1 - 4Dx - 2D(2D-1)x^2 - 2D(1+D+2D^2)x^3 + D^2(1+2D)x^4."""
    return (
        -1
        - 4 * D * x
        - 2 * D * (2 * D - 1) * x ** 2
        - 2 * D * (1 + D + 2 * D ** 2) * x ** 3
        + D ** 2 * (1 + 2 * D) * x ** 4
    )


def q_of(x: MPoly) -> MPoly:
    """The quadratic 1 + 2Dx + D(1+2D)x^2."""
    return 1 + 2 * D * x + D * (1 + 2 * D) * x ** 2


K0 = 22 * D ** 2 + 22 * D + 1
K1 = 128 * D ** 4 + 256 * D ** 3 + 112 * D ** 2 - 16 * D - 3
DELTA_W_QUARTIC = 304 * D ** 4 + 608 * D ** 3 + 296 * D ** 2 - 8 * D + 27
DELTA_W_DISPLAYED = -16 * (D + 1) ** 4 * D ** 4 * DELTA_W_QUARTIC
DELTA_U_CONSTANT = 33554432
DELTA_U_EXPONENTS = (43, 43, 32)

S_DISPLAYED = (
    -8
    * D ** 9
    * u ** 7
    * (u - 1) ** 3
    * (1 + 2 * D)
    * (D + 1) ** 9
    * (D * u + 1) ** 21
    * (D * (1 + 2 * D) * u ** 2 + 2 * D * u + 1)
)
R2_AT_0 = 54 * D * (D + 1)
R2_AT_1 = 4 * D * (1 + 2 * D) ** 4 * (D + 1) ** 9

# enclosure of the degree-22 block's root
D2_ENCLOSURE = (Fraction(-16, 125), Fraction(-267, 2086))

# the base case D = -1/3 as displayed
Q1_D13 = u ** 3 * (1 - w) ** 2 + w ** 3 * (1 - u) ** 2
Q2_D13 = (
    -9 * u * (u - 3) ** 3
    + 3 * (81 - 270 * u + 180 * u ** 2 - 36 * u ** 3 + 5 * u ** 4) * w
    + (-243 + 540 * u - 270 * u ** 2 + 18 * u ** 3 - 5 * u ** 4) * w ** 2
    - (u + 3) * (-27 + 45 * u - 21 * u ** 2 + u ** 3) * w ** 3
    - (u - 1) * (-9 + 6 * u + u ** 2) * w ** 4
)
R_D13_COEFFS = (
    531441, -3188646, 8148762, -11455506, 9546255, -4776408, 1487889,
    -406782, 143856, -32238, 1593, -180, -4,
)
R_D13 = MPoly.from_univariate(R_D13_COEFFS, "u")

# u^3 (1-w) + w^3 (1-u) = 0 is the cube of F1 = 0 at D = -2/3
Q1_D23 = u ** 3 * (1 - w) + w ** 3 * (1 - u)


class RatFunc:
    """Quotient num/den of polynomials; only what denominator clearing needs."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = num if isinstance(num, MPoly) else MPoly.const(num)
        self.den = den if isinstance(den, MPoly) else MPoly.const(den)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def clear(self, multiplier: MPoly) -> MPoly:
        """The polynomial multiplier * self; raises NotDivisible if it is not one."""
        return exact_divide(multiplier * self.num, self.den)


def F2_ratfunc() -> RatFunc:
    return RatFunc((1 - u) * q_of(u), u * (1 + D * u) ** 3) + RatFunc(
        (1 - w) * q_of(w), w * (1 + D * w) ** 3
    )


def F3_ratfunc() -> RatFunc:
    return RatFunc(w * (w - 1) * (1 + D * u), u * (u - 1) * (1 + D * w)) + RatFunc(
        P_of(u) * w ** 2 * (1 + D * w) ** 4, P_of(w) * u ** 2 * (1 + D * u) ** 4
    )


@dataclass
class ProofPolynomials:
    branch: str
    P: MPoly
    F1_num: MPoly
    P2: MPoly
    P3: MPoly
    S: Optional[MPoly] = None
    R2: Optional[MPoly] = None
    Delta_w: Optional[MPoly] = None
    Delta_u: Optional[MPoly] = None
    K0: MPoly = K0
    K1: MPoly = K1
    W: Optional[MPoly] = None
    U: Dict[str, MPoly] = field(default_factory=dict)

    def named(self) -> Dict[str, MPoly]:
        """Every polynomial that has been computed, by file-friendly name."""
        out = {}
        for name in ("P", "F1_num", "P2", "P3", "S", "R2", "Delta_w", "Delta_u", "K0", "K1", "W"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        for label, poly in sorted(self.U.items()):
            out[f"U_{label}"] = poly
        return out


def build_proof_polys(branch: str) -> Tuple[ProofPolynomials, Dict[str, object]]:
    """Construct P, P2, P3 by clearing the denominators of F2 and F3.

    P2 = u w (1+Du)^3 (1+Dw)^3 F2 and
    P3 = (u-1) u^2 (1+Du)^4 (1+Dw) P(w) F3 / w, where every division must be
    exact.  Returns the polynomials and a witness dict of checked facts.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    P = P_of(w)
    P2 = F2_ratfunc().clear(u * w * (1 + D * u) ** 3 * (1 + D * w) ** 3)
    m3 = (u - 1) * u ** 2 * (1 + D * u) ** 4 * (1 + D * w) * P_of(w)
    P3w = F3_ratfunc().clear(m3)
    P3 = exact_divide(P3w, w)
    deg2 = P2.total_degree("uw")
    deg3 = P3.total_degree("uw")
    witness = {
        "P(0;D)": str(P.subs("w", 0)),
        "total_degree_P2": deg2,
        "total_degree_P3": deg3,
        "division_by_w_exact": True,
    }
    if deg2 != 7 or deg3 != 11:
        raise CertificateError(f"unexpected degrees ({deg2}, {deg3}), expected (7, 11)")
    F1 = Q1_D13 if branch == "decreasing" else Q1_D23
    return ProofPolynomials(branch, P, F1, P2, P3), witness
