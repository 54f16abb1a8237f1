"""Exact rational polynomial algebra: the substrate of the certificate."""

from fractions import Fraction as Rational

from .errors import EndpointRoot, ExactAlgebraError, NotDivisible, ZeroInput
from .io import PolyFormatError, from_json, from_text, read_poly, to_json, to_text, write_poly
from .polynomial import VARS, MPoly, divides, exact_divide, strip_factor
from .resultant import discriminant, interpolated_resultant, resultant
from .sturm import IntervalQ, SturmSeq, isolate_roots, refine, squarefree_decomposition, sturm_count

__all__ = [
    "Rational",
    "VARS",
    "MPoly",
    "IntervalQ",
    "SturmSeq",
    "exact_divide",
    "divides",
    "strip_factor",
    "resultant",
    "interpolated_resultant",
    "discriminant",
    "sturm_count",
    "isolate_roots",
    "refine",
    "squarefree_decomposition",
    "to_text",
    "from_text",
    "to_json",
    "from_json",
    "read_poly",
    "write_poly",
    "PolyFormatError",
    "ExactAlgebraError",
    "NotDivisible",
    "EndpointRoot",
    "ZeroInput",
]
