"""Exact coefficients: Laurent polynomials in q over Z, the field Q(q), quantum numbers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

from .errors import DivZero, NegativeN, NotPolynomial, OutOfRange


class LaurentPoly:
    """Element of Z[q, q^-1], stored as a sparse exponent -> int map.

    Instances are immutable and hashable; zero coefficients are never stored,
    so structural equality is mathematical equality.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, value: int) -> "LaurentPoly":
        return cls.monomial(0, value)

    # -- inspection -------------------------------------------------------

    def items(self):
        return sorted(self._c.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def __bool__(self):
        return bool(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly.monomial(e * n, v ** (-n))
            raise NotPolynomial(f"negative power of non-unit {self}")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The ring involution q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def substitute_power(self, d: int) -> "LaurentPoly":
        """q -> q^d."""
        return LaurentPoly._raw({e * d: v for e, v in self._c.items()})

    def at_one(self) -> int:
        return sum(self._c.values())

    def divexact(self, other) -> "LaurentPoly":
        """Exact quotient in Z[q, q^-1]; raises NotPolynomial if there is none."""
        other = self._coerce(other)
        if not other:
            raise DivZero("division by zero Laurent polynomial")
        if not self:
            return self
        if other.is_monomial():
            (e, v), = other._c.items()
            out = {}
            for e1, v1 in self._c.items():
                qt, r = divmod(v1, v)
                if r:
                    raise NotPolynomial(f"{self} / {other} has non-integral coefficients")
                out[e1 - e] = qt
            return LaurentPoly._raw(out)
        a, alo = _to_dense(self)
        b, blo = _to_dense(other)
        quot, rem = _poly_divmod(a, b)
        if any(rem):
            raise NotPolynomial(f"{self} is not divisible by {other}")
        out = {}
        for k, v in enumerate(quot):
            if v:
                if v.denominator != 1:
                    raise NotPolynomial(f"{self} / {other} has non-integral coefficients")
                out[k + alo - blo] = int(v)
        return LaurentPoly._raw(out)

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- printing / serialization ----------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[e, str(v)] for e, v in sorted(self._c.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls({int(e): int(v) for e, v in data})


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


# -- dense polynomial helpers (Fraction coefficients, index = exponent) ----

def _to_dense(p: LaurentPoly) -> tuple[list[Fraction], int]:
    lo = p.min_exp()
    hi = p.max_exp()
    dense = [Fraction(0)] * (hi - lo + 1)
    for e, v in p._c.items():
        dense[e - lo] = Fraction(v)
    return dense, lo


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise DivZero("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        f = a[-1] / lead
        quot[k] = f
        for j, bj in enumerate(b):
            a[j + k] -= f * bj
        a.pop()
        _trim(a)
    return quot, a


def _poly_gcd(a: list, b: list) -> list:
    a = _trim(list(a))
    b = _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _trim(r)
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


class RatFunc:
    """Element of Q(q) kept in lowest terms.

    Canonical form: integer numerator and denominator with no common factor
    (polynomial or integer), denominator a polynomial in q with nonzero
    constant term and positive leading coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LaurentPoly._coerce(num)
        den = LaurentPoly._coerce(den)
        if not den:
            raise DivZero("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, LaurentPoly)):
            return RatFunc(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivZero("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_laurent(self) -> bool:
        return self.den.is_monomial() and self.den.coeff(self.den.min_exp()) in (1, -1)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise NotPolynomial(f"({self.num})/({self.den}) is not a Laurent polynomial")
        return self.num.divexact(self.den)

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not num:
        return ZERO, ONE
    a, alo = _to_dense(num)
    b, blo = _to_dense(den)
    g = _poly_gcd(a, b)
    if len(g) > 1:
        a, _ = _poly_divmod(a, g)
        b, _ = _poly_divmod(b, g)
    # clear denominators, then remove common integer content
    lcm = 1
    for c in a + b:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ai = [int(c * lcm) for c in a]
    bi = [int(c * lcm) for c in b]
    content = 0
    for c in ai + bi:
        content = gcd(content, c)
    ai = [c // content for c in ai]
    bi = [c // content for c in bi]
    _trim(bi)
    if bi[-1] < 0:
        ai = [-c for c in ai]
        bi = [-c for c in bi]
    # move the q-power of the denominator to the numerator
    shift = alo - blo
    k = 0
    while not bi[k]:
        k += 1
    bi = bi[k:]
    shift -= k
    n = LaurentPoly({e + shift: c for e, c in enumerate(ai)})
    d = LaurentPoly({e: c for e, c in enumerate(bi)})
    return n, d


# -- quantum numbers --------------------------------------------------------

@lru_cache(maxsize=None)
def qnum(n: int, d: int = 1) -> LaurentPoly:
    """[n]_{q^d} for any integer n, using [-n] = -[n]."""
    if n < 0:
        return -qnum(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


def qint(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise NegativeN(f"quantum integer needs n >= 0, got {n}")
    return qnum(n, d)


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise OutOfRange(f"quantum factorial needs n >= 0, got {n}")
    out = ONE
    for k in range(1, n + 1):
        out = out * qnum(k, d)
    return out


def qbinom(n: int, k: int, d: int = 1) -> LaurentPoly:
    if not 0 <= k <= n:
        raise OutOfRange(f"quantum binomial needs 0 <= k <= n, got n={n}, k={k}")
    return qfact(n, d).divexact(qfact(k, d) * qfact(n - k, d))
