"""Text and JSON serializations of MPoly.

Text form: one term per line, ``<num>/<den> <e_u> <e_w> <e_D>``, terms in
ascending lexicographic exponent order, LF line endings.  The zero
polynomial is the empty file.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .polynomial import VARS, MPoly


class PolyFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def to_text(p: MPoly) -> str:
    lines = []
    for e in sorted(p.terms):
        c = p.terms[e]
        lines.append(f"{c.numerator}/{c.denominator} {e[0]} {e[1]} {e[2]}\n")
    return "".join(lines)


def from_text(text: str) -> MPoly:
    terms = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 4:
            raise PolyFormatError(f"expected 4 fields, got {len(fields)}", lineno)
        coef, *exps = fields
        try:
            if "/" in coef:
                num, den = coef.split("/")
                c = Fraction(int(num), int(den))
            else:
                c = Fraction(int(coef))
            e = tuple(int(x) for x in exps)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyFormatError(f"malformed term {line!r} ({exc})", lineno) from None
        if min(e) < 0:
            raise PolyFormatError("negative exponent", lineno)
        if e in terms:
            raise PolyFormatError(f"duplicate exponent {e}", lineno)
        terms[e] = c
    return MPoly(terms)


def to_json_obj(p: MPoly) -> dict:
    return {
        "vars": list(VARS),
        "terms": [
            [p.terms[e].numerator, p.terms[e].denominator, *e] for e in sorted(p.terms)
        ],
    }


def from_json_obj(obj: dict) -> MPoly:
    if list(obj.get("vars", [])) != list(VARS):
        raise PolyFormatError(f"vars must be {list(VARS)}")
    terms = {}
    for t in obj.get("terms", []):
        if len(t) != 5:
            raise PolyFormatError(f"term {t!r} must have 5 entries")
        num, den, *e = t
        terms[tuple(int(x) for x in e)] = Fraction(int(num), int(den))
    return MPoly(terms)


def to_json(p: MPoly) -> str:
    return json.dumps(to_json_obj(p), separators=(",", ":"))


def from_json(text: str) -> MPoly:
    return from_json_obj(json.loads(text))


def read_poly(path) -> MPoly:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            return from_json(text)
        except json.JSONDecodeError as exc:
            raise PolyFormatError(f"bad JSON ({exc.msg})", exc.lineno) from None
    return from_text(text)


def write_poly(path, p: MPoly, fmt: Union[str, None] = "text") -> None:
    data = to_text(p) if fmt == "text" else to_json(p) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(data)
