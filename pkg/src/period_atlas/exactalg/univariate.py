"""Dense univariate kernel over the rationals.

Polynomials are lists of :class:`~fractions.Fraction`, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence

Dense = List[Fraction]


def trim(p: Sequence) -> Dense:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Dense) -> int:
    return len(p) - 1


def add(p: Dense, q: Dense) -> Dense:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Dense, q: Dense) -> Dense:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p: Dense, q: Dense) -> Dense:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: Dense, k) -> Dense:
    return trim([c * k for c in p])


def deriv(p: Dense) -> Dense:
    return trim([c * k for k, c in enumerate(p)][1:])


def divmod_(p: Dense, q: Dense):
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    p = list(p)
    dq = len(q) - 1
    lc = q[-1]
    if len(p) < len(q):
        return [], trim(p)
    quot = [Fraction(0)] * (len(p) - dq)
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k] / lc
        if c:
            quot[k - dq] = c
            for j in range(dq + 1):
                p[k - dq + j] -= c * q[j]
    return trim(quot), trim(p[:dq])


def rem(p: Dense, q: Dense) -> Dense:
    return divmod_(p, q)[1]


def monic(p: Dense) -> Dense:
    if not p:
        return []
    lc = p[-1]
    return [c / lc for c in p]


def primitive(p: Dense) -> Dense:
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    if not p:
        return []
    d = lcm(*(c.denominator for c in p))
    ints = [int(c * d) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [Fraction(c // g) for c in ints]


def poly_gcd(p: Dense, q: Dense) -> Dense:
    """Monic gcd; ``[]`` if both inputs are zero."""
    p, q = primitive(trim(p)), primitive(trim(q))
    while q:
        p, q = q, primitive(rem(p, q))
    return monic(p)


def exact_quotient(p: Dense, q: Dense) -> Dense:
    quot, r = divmod_(p, q)
    if r:
        from .errors import NotDivisible

        raise NotDivisible("nonzero remainder in univariate division")
    return quot


def evaluate(p: Dense, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_at(p: Dense, x: Optional[Fraction], at_infinity: int = 0) -> int:
    """Sign of ``p(x)``; ``x=None`` with ``at_infinity=+1/-1`` gives the sign at +/-infinity."""
    if not p:
        return 0
    if x is None:
        s = sign(p[-1])
        if at_infinity < 0 and (len(p) - 1) % 2:
            s = -s
        return s
    return sign(evaluate(p, x))


def squarefree_part(p: Dense) -> Dense:
    g = poly_gcd(p, deriv(p))
    if len(g) <= 1:
        return list(p)
    return exact_quotient(p, g)


def sturm_chain(p: Dense) -> List[Dense]:
    """Sturm sequence ``p, p', -rem(...), ...``.

    Elements after the first two are rescaled by positive constants, which
    leaves every sign variation count unchanged.
    """
    p = trim(p)
    chain = [p, deriv(p)]
    while chain[-1]:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in primitive(r)])
    if not chain[-1]:
        chain.pop()
    return chain


def variations(chain: Sequence[Dense], x: Optional[Fraction], at_infinity: int = 0) -> int:
    count = 0
    last = 0
    for q in chain:
        s = sign_at(q, x, at_infinity)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def yun(p: Dense) -> List[tuple]:
    """Squarefree decomposition: ``[(monic factor, multiplicity), ...]`` sorted by multiplicity."""
    p = trim(p)
    if len(p) <= 1:
        return []
    out = []
    dp = deriv(p)
    a = poly_gcd(p, dp)
    b = exact_quotient(p, a)
    c = exact_quotient(dp, a)
    d = sub(c, deriv(b))
    i = 1
    while len(b) > 1:
        a = poly_gcd(b, d)
        if len(a) > 1:
            out.append((monic(a), i))
        b = exact_quotient(b, a)
        c = exact_quotient(d, a)
        d = sub(c, deriv(b))
        i += 1
    return out

