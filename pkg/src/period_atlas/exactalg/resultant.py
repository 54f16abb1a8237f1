"""Sylvester resultants and discriminants of MPoly.

``resultant`` is the exact Sylvester determinant.  Polynomial entries are
mapped injectively to integers by Kronecker substitution (every remaining
variable becomes a power of ``X = 2**k``, with ``k`` and the radices chosen
from a priori degree and coefficient bounds valid for every minor), the
determinant is taken by fraction-free Bareiss elimination on those
integers, and the result is unpacked back into a polynomial.

``interpolated_resultant`` is an independent route: it specializes one
parameter at rational points, takes the smaller resultants, and rebuilds
each coefficient by Newton interpolation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

from .errors import ZeroInput
from .polynomial import NVARS, MPoly, exact_divide, var_index

try:
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _bigint = int


def _abs_sum(terms: Dict[tuple, int]) -> int:
    return sum(abs(c) for c in terms.values())


def sylvester_rows(p_coeffs: Sequence, q_coeffs: Sequence) -> List[list]:
    """Sylvester matrix (highest coefficients first), entries taken from the inputs."""
    m = len(p_coeffs) - 1
    n = len(q_coeffs) - 1
    size = m + n
    zero = None
    rows = []
    ph = list(reversed(p_coeffs))
    qh = list(reversed(q_coeffs))
    for i in range(n):
        rows.append([zero] * i + ph + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qh + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(mat: List[list]):
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return _bigint(1)
    sign = 1
    prev = _bigint(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return _bigint(0)
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def _unpack(value, k: int) -> List[int]:
    """Balanced base-``2**k`` digits of an integer, lowest first."""
    digits = []
    base = 1 << k
    half = base >> 1
    v = int(value)
    while v:
        d = v & (base - 1)
        if d >= half:
            d -= base
        digits.append(d)
        v = (v - d) >> k
    return digits


def resultant(p: MPoly, q: MPoly, var) -> MPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``var``."""
    if p.is_zero() or q.is_zero():
        raise ZeroInput("resultant with a zero polynomial")
    vi = var_index(var)
    m = p.degree(vi)
    n = q.degree(vi)
    if m == 0 and n == 0:
        return MPoly.const(1)
    # Res(a p, b q) = a^n b^m Res(p, q)
    dp, p_int = p.integer_terms()
    dq, q_int = q.integer_terms()
    others = [i for i in range(NVARS) if i != vi]

    def split(terms):
        deg = max(e[vi] for e in terms)
        coeffs: List[Dict[tuple, int]] = [dict() for _ in range(deg + 1)]
        for e, c in terms.items():
            coeffs[e[vi]][tuple(e[i] for i in others)] = c
        return coeffs

    pc = split(p_int)
    qc = split(q_int)

    # degree bound of every minor in each remaining variable
    radices = []
    for j in range(len(others)):
        dpj = max((e[j] for c in pc for e in c), default=0)
        dqj = max((e[j] for c in qc for e in c), default=0)
        radices.append(n * dpj + m * dqj + 1)

    # coefficient bound of every minor: product of row L1 norms
    rp = sum(_abs_sum(c) for c in pc)
    rq = sum(_abs_sum(c) for c in qc)
    bound = rp ** n * rq ** m
    k = bound.bit_length() + 2

    def encode(terms: Dict[tuple, int]):
        if not terms:
            return None
        acc = 0
        for e, c in terms.items():
            shift = 0
            stride = 1
            for j, ej in enumerate(e):
                shift += ej * stride
                stride *= radices[j]
            acc += c << (k * shift)
        return _bigint(acc)

    rows = sylvester_rows([encode(c) for c in pc], [encode(c) for c in qc])
    zero = _bigint(0)
    mat = [[zero if x is None else x for x in r] for r in rows]
    det = bareiss_det(mat)

    terms: Dict[tuple, Fraction] = {}
    scale = Fraction(1, dp ** n * dq ** m)
    for shift, c in enumerate(_unpack(det, k)):
        if c:
            e = [0] * NVARS
            s = shift
            for j, i in enumerate(others):
                e[i] = s % radices[j]
                s //= radices[j]
            terms[tuple(e)] = c * scale
    return MPoly(terms)


def discriminant(p: MPoly, var) -> MPoly:
    """``(-1)^(n(n-1)/2) Res(p, dp/dvar) / lc(p)``."""
    if p.is_zero():
        raise ZeroInput("discriminant of the zero polynomial")
    n = p.degree(var)
    if n < 2:
        raise ValueError("discriminant needs degree >= 2 in the variable")
    r = resultant(p, p.deriv(var), var)
    if (n * (n - 1) // 2) % 2:
        r = -r
    return exact_divide(r, p.leading_coefficient(var))


def _degree_bound(p: MPoly, q: MPoly, var, param) -> int:
    m, n = p.degree(var), q.degree(var)
    dp = max((c.degree(param) for c in p.coefficients(var) if c), default=0)
    dq = max((c.degree(param) for c in q.coefficients(var) if c), default=0)
    return n * max(dp, 0) + m * max(dq, 0)


def interpolated_resultant(p: MPoly, q: MPoly, var, param) -> MPoly:
    """Resultant via specialization of ``param`` and Newton interpolation."""
    if p.is_zero() or q.is_zero():
        raise ZeroInput("resultant with a zero polynomial")
    if var_index(var) == var_index(param):
        raise ValueError("interpolation parameter must differ from the eliminated variable")
    bound = _degree_bound(p, q, var, param)
    if bound == 0:
        return resultant(p, q, var)
    lp = p.leading_coefficient(var)
    lq = q.leading_coefficient(var)
    m, n = p.degree(var), q.degree(var)
    xs: List[Fraction] = []
    ys: List[MPoly] = []
    t = 0
    while len(xs) <= bound:
        x = Fraction(t)
        t += 1
        # degree drops change the specialized resultant; skip those points
        if lp.subs(param, x).is_zero() or lq.subs(param, x).is_zero():
            continue
        ps, qs = p.subs(param, x), q.subs(param, x)
        if ps.degree(var) != m or qs.degree(var) != n:
            continue
        xs.append(x)
        ys.append(resultant(ps, qs, var))
    return _newton_interpolate(xs, ys, param)


def _newton_interpolate(xs: List[Fraction], ys: List[MPoly], param) -> MPoly:
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    x = MPoly.var(param)
    result = coef[-1]
    for i in range(n - 2, -1, -1):
        result = result * (x - xs[i]) + coef[i]
    return result
