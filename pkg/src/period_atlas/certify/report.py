"""Structured verdicts of the certificate replay and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from ..exactalg import IntervalQ, MPoly
from ..exactalg.io import to_json_obj


def jsonable(x: Any) -> Any:
    """Exact, deterministic JSON form of witness values."""
    if isinstance(x, MPoly):
        return to_json_obj(x)
    if isinstance(x, IntervalQ):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize witness value of type {type(x).__name__}")


@dataclass
class Step:
    name: str
    claim: str
    verdict: str
    witness: Dict[str, Any] = field(default_factory=dict)
    inputs: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "claim": self.claim,
            "inputs": list(self.inputs),
            "verdict": self.verdict,
            "witness": jsonable(self.witness),
        }


def make_step(name: str, claim: str, ok: bool, witness: Dict[str, Any], inputs=()) -> Step:
    return Step(name, claim, "pass" if ok else "fail", witness, list(inputs))


@dataclass
class CertificateReport:
    branch: str
    steps: List[Step] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if self.steps and all(s.passed for s in self.steps) else "fail"

    def add(self, step: Step) -> Step:
        self.steps.append(step)
        return step

    def step(self, name: str) -> Step:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def failed_steps(self) -> List[str]:
        return [s.name for s in self.steps if not s.passed]

    def to_obj(self) -> dict:
        return {
            "branch": self.branch,
            "steps": [s.to_obj() for s in self.steps],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=1, sort_keys=False) + "\n"
