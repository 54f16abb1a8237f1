"""Sparse polynomials with rational coefficients in the variables (u, w, D)."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import NotDivisible

Rational = Fraction

VARS = ("u", "w", "D")
NVARS = len(VARS)

Exps = Tuple[int, int, int]


def var_index(var: str | int) -> int:
    if isinstance(var, int):
        if not 0 <= var < NVARS:
            raise ValueError(f"variable index out of range: {var}")
        return var
    try:
        return VARS.index(var)
    except ValueError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARS}") from None


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, _RationalABC)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class MPoly:
    """Polynomial in ``u, w, D`` stored as ``{(e_u, e_w, e_D): Fraction}``.

    Zero coefficients are never stored, so equality is equality of term maps.
    Instances are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exps, object] | None = None):
        clean: Dict[Exps, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c:
                    if len(e) != NVARS or min(e) < 0:
                        raise ValueError(f"bad exponent tuple {e!r}")
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exps, Fraction]) -> "MPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _as_fraction(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, name: str | int, power: int = 1) -> "MPoly":
        e = [0] * NVARS
        e[var_index(name)] = power
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs: Iterable, var: str | int) -> "MPoly":
        """Build from a dense coefficient list, lowest degree first."""
        i = var_index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            c = _as_fraction(c)
            if c:
                e = [0] * NVARS
                e[i] = k
                terms[tuple(e)] = c
        return cls._raw(terms)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable["MPoly"], var: str | int) -> "MPoly":
        """Inverse of :meth:`coefficients`: ``sum(c_k * var**k)``."""
        i = var_index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            for e, v in _coerce(c).terms.items():
                e2 = list(e)
                e2[i] += k
                terms[tuple(e2)] = v
        return cls._raw(terms)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0, 0) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0, 0, 0), Fraction(0))

    def variables(self) -> List[str]:
        used = [False] * NVARS
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [VARS[i] for i in range(NVARS) if used[i]]

    def degree(self, var: str | int | None = None) -> int:
        """Degree in ``var``, or total degree; ``-1`` for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = var_index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self, variables: Iterable[str]) -> int:
        idx = [var_index(v) for v in variables]
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    def coefficients(self, var: str | int) -> List["MPoly"]:
        """Coefficients with respect to ``var`` (lowest first), as MPoly in the other variables."""
        i = var_index(var)
        n = self.degree(i)
        buckets: List[Dict[Exps, Fraction]] = [dict() for _ in range(n + 1)]
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            buckets[k][tuple(e2)] = c
        return [MPoly._raw(b) for b in buckets]

    def leading_coefficient(self, var: str | int) -> "MPoly":
        return self.coefficients(var)[-1]

    def univariate_coeffs(self, var: str | int | None = None) -> List[Fraction]:
        """Dense coefficient list of a univariate polynomial, lowest first."""
        used = self.variables()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"polynomial is not univariate (uses {used})")
            var = used[0] if used else VARS[0]
        elif any(v != var for v in used):
            raise ValueError(f"polynomial uses variables {used}, not only {var!r}")
        i = var_index(var)
        out = [Fraction(0)] * (self.degree(i) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def content_denominator(self) -> int:
        return lcm(*(c.denominator for c in self.terms.values())) if self.terms else 1

    def integer_terms(self) -> Tuple[int, Dict[Exps, int]]:
        """Return ``(d, terms)`` with ``d * self`` having integer coefficients ``terms``."""
        d = self.content_denominator()
        return d, {e: c.numerator * (d // c.denominator) for e, c in self.terms.items()}

    def leading_term(self) -> Tuple[Exps, Fraction]:
        """Leading term in lex order u > w > D."""
        e = max(self.terms)
        return e, self.terms[e]

    # -- arithmetic ----------------------------------------------------

    def __neg__(self) -> "MPoly":
        return MPoly._raw({e: -c for e, c in self.terms.items()})

    def __pos__(self) -> "MPoly":
        return self

    def __add__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return MPoly._raw({})
        if other.is_constant():
            k = other.constant_value()
            return MPoly._raw({e: c * k for e, c in self.terms.items()})
        if self.is_constant():
            return other * self
        out: Dict[Exps, Fraction] = {}
        get = out.get
        for (a0, a1, a2), ca in self.terms.items():
            for (b0, b1, b2), cb in other.terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                out[e] = get(e, 0) + ca * cb
        return MPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        # only division by a nonzero rational constant; use exact_divide otherwise
        k = _as_fraction(other)
        if not k:
            raise ZeroDivisionError("division of a polynomial by zero")
        return MPoly._raw({e: c / k for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitution ------------------------------------

    def deriv(self, var: str | int) -> "MPoly":
        i = var_index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = c * k
        return MPoly._raw(out)

    def subs(self, var: str | int, value) -> "MPoly":
        """Substitute a rational value (or another MPoly) for ``var``."""
        i = var_index(var)
        if isinstance(value, MPoly):
            return self._subs_poly(i, value)
        value = _as_fraction(value)
        powers = {}
        out: Dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            k = e[i]
            p = powers.get(k)
            if p is None:
                p = powers[k] = value ** k
            e2 = list(e)
            e2[i] = 0
            e2 = tuple(e2)
            out[e2] = out.get(e2, 0) + c * p
        return MPoly._raw({e: c for e, c in out.items() if c})

    def _subs_poly(self, i: int, value: "MPoly") -> "MPoly":
        coeffs = self.coefficients(i)
        result = MPoly._raw({})
        for c in reversed(coeffs):
            result = result * value + c
        return result

    def __call__(self, **values) -> "MPoly | Fraction":
        p = self
        for name, v in values.items():
            p = p.subs(name, v)
        return p.constant_value() if p.is_constant() else p

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        p = self
        for name, v in point.items():
            p = p.subs(name, v)
        return p.constant_value()

    def evaluate_float(self, **values: float) -> float:
        total = 0.0
        vals = [float(values.get(v, 0.0)) for v in VARS]
        for e, c in self.terms.items():
            t = float(c)
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def map_coefficients(self, fn) -> "MPoly":
        return MPoly({e: fn(c) for e, c in self.terms.items()})

    # -- display -------------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(VARS, e) if k
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def _coerce(x) -> MPoly:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, _RationalABC)):
        return MPoly.const(x)
    return NotImplemented


u = MPoly.var("u")
w = MPoly.var("w")
D = MPoly.var("D")


def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """Return ``r`` with ``p == q * r`` or raise :class:`NotDivisible`.

    Multivariate division with respect to lex order ``u > w > D``; the
    remainder must vanish.
    """
    if q.is_zero():
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    if p.is_zero():
        return MPoly._raw({})
    if q.is_constant():
        return p / q.constant_value()
    lq, cq = q.leading_term()
    q_rest = [(e, c) for e, c in q.terms.items() if e != lq]
    rem = dict(p.terms)
    quot: Dict[Exps, Fraction] = {}
    while rem:
        lr = max(rem)
        if lr[0] < lq[0] or lr[1] < lq[1] or lr[2] < lq[2]:
            raise NotDivisible(f"leading term exponent {lr} not divisible by {lq}")
        e = (lr[0] - lq[0], lr[1] - lq[1], lr[2] - lq[2])
        c = rem.pop(lr) / cq
        quot[e] = c
        for (b0, b1, b2), cb in q_rest:
            t = (e[0] + b0, e[1] + b1, e[2] + b2)
            v = rem.get(t, 0) - c * cb
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MPoly._raw(quot)


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


def strip_factor(p: MPoly, factor: MPoly) -> Tuple[MPoly, int]:
    """Divide out the maximal power of ``factor``; returns ``(cofactor, exponent)``."""
    if factor.is_constant():
        raise ValueError("cannot strip a constant factor")
    k = 0
    while not p.is_zero():
        try:
            p = exact_divide(p, factor)
        except NotDivisible:
            break
        k += 1
    return p, k
