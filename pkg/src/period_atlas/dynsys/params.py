"""Parameter records, planar states and sampled period curves."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import DomainError

CHARTS = ("z", "polar", "RTheta", "XY", "loud", "potential")
METHODS = ("quadrature", "returnmap", "closedform")


@dataclass(frozen=True)
class LoudParams:
    """Reversible quadratic system x' = -y + xy, y' = x + D x^2 + F y^2."""

    D: float
    F: Optional[float] = None

    def __post_init__(self):
        F = self.D + 1.0 if self.F is None else self.F
        object.__setattr__(self, "F", float(F))
        object.__setattr__(self, "D", float(self.D))
        if not (math.isfinite(self.D) and math.isfinite(self.F)):
            raise DomainError("Loud parameters must be finite")

    @property
    def on_line(self) -> bool:
        """True on the sub-family F = D + 1."""
        return abs(self.F - (self.D + 1.0)) <= 1e-15 * max(1.0, abs(self.D))


@dataclass(frozen=True)
class ZkParams:
    """Equation z' = i z + a (z zbar)^n z^(k+1)."""

    n: int
    k: int
    a: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if self.n < 0 or self.k < 0 or self.n + self.k < 1:
            raise DomainError("need integers n, k >= 0 with n + k >= 1")

    @property
    def normalized(self) -> bool:
        return self.a == 1


@dataclass(frozen=True)
class PlanarState:
    chart: str
    a: float
    b: float

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise DomainError(f"unknown chart {self.chart!r}")
        if self.chart == "polar" and self.a < 0:
            raise DomainError("polar radius must be non-negative")

    @property
    def xy(self) -> Tuple[float, float]:
        return (self.a, self.b)


@dataclass
class PeriodCurve:
    params: List[float] = field(default_factory=list)
    periods: List[float] = field(default_factory=list)
    methods: List[str] = field(default_factory=list)
    errors: List[float] = field(default_factory=list)

    def append(self, param: float, period: float, method: str, err: float = float("nan")):
        if method not in METHODS:
            raise ValueError(f"unknown method tag {method!r}")
        if self.params and not param > self.params[-1]:
            raise ValueError("parameters must be strictly increasing")
        if not period > 0:
            raise ValueError(f"non-positive period {period!r}")
        self.params.append(float(param))
        self.periods.append(float(period))
        self.methods.append(method)
        self.errors.append(float(err))

    def __len__(self) -> int:
        return len(self.params)

    def monotonicity(self) -> Tuple[str, Optional[int]]:
        """``("decreasing" | "increasing" | "constant" | "mixed", first violation index)``.

        The direction is taken from the first non-equal pair.
        """
        p = self.periods
        if len(p) < 2:
            return "constant", None
        diffs = [b - a for a, b in zip(p, p[1:])]
        lead = next((d for d in diffs if d != 0), 0.0)
        if lead == 0:
            return "constant", None
        for i, d in enumerate(diffs):
            if (d > 0) != (lead > 0) or d == 0:
                return "mixed", i + 1
        return ("increasing" if lead > 0 else "decreasing"), None

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("param,period,method,err_estimate\n")
        for row in zip(self.params, self.periods, self.methods, self.errors):
            out.write(f"{row[0]:.17g},{row[1]:.17g},{row[2]},{row[3]:.17g}\n")
        return out.getvalue()
