"""Exact arithmetic in the quadratic field Q(beta), beta the positive root of
beta^2 = a0*beta + a1 with integers a0 >= a1 >= 1.

Every element is represented uniquely as p + q*beta with rational p, q.
Ordering and integer parts are decided algebraically; floats are only used
as a seed that is always confirmed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


@dataclass(frozen=True)
class BetaParams:
    """The pair (a0, a1) defining beta^2 = a0*beta + a1."""

    a0: int
    a1: int

    def __post_init__(self):
        if not (isinstance(self.a0, int) and isinstance(self.a1, int)):
            raise TypeError("a0 and a1 must be integers")
        if not self.a0 >= self.a1 >= 1:
            raise ValueError("need a0 >= a1 >= 1, got a0=%s a1=%s" % (self.a0, self.a1))

    @property
    def disc(self) -> int:
        # discriminant of t^2 - a0 t - a1; never a perfect square under a0 >= a1 >= 1
        return self.a0 * self.a0 + 4 * self.a1

    def beta(self) -> "QuadNum":
        return QuadNum(0, 1, self)

    def beta_float(self) -> float:
        return (self.a0 + math.sqrt(self.disc)) / 2.0

    def one(self) -> "QuadNum":
        return QuadNum(1, 0, self)

    def zero(self) -> "QuadNum":
        return QuadNum(0, 0, self)

    def rational(self, value) -> "QuadNum":
        return QuadNum(Fraction(value), 0, self)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (type(x),))


class QuadNum:
    """An element p + q*beta of Q(beta) with exact field arithmetic."""

    __slots__ = ("p", "q", "params")

    def __init__(self, p, q, params: BetaParams):
        self.p = _as_fraction(p)
        self.q = _as_fraction(q)
        self.params = params

    # -- coercion helpers -------------------------------------------------

    def _coerce(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            if other.params != self.params:
                raise ValueError("mixing QuadNum values from different fields: %s vs %s"
                                 % (self.params, other.params))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.params)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.p + o.p, self.q + o.q, self.params)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.p - o.p, self.q - o.q, self.params)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(o.p - self.p, o.q - self.q, self.params)

    def __neg__(self):
        return QuadNum(-self.p, -self.q, self.params)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # (p1 + q1 b)(p2 + q2 b) with b^2 = a0 b + a1
        cross = self.q * o.q
        return QuadNum(self.p * o.p + cross * self.params.a1,
                       self.p * o.q + self.q * o.p + cross * self.params.a0,
                       self.params)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        # 1/(p + q b) = (p + a0 q - q b) / (p^2 + a0 p q - a1 q^2)
        d = self.p * self.p + self.params.a0 * self.p * self.q - self.params.a1 * self.q * self.q
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(beta)")
        return QuadNum((self.p + self.params.a0 * self.q) / d, -self.q / d, self.params)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNum(1, 0, self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of p + q*beta."""
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        sp = 1 if p > 0 else -1
        sq = 1 if q > 0 else -1
        if sp == sq:
            return sp
        # sign(p + q b) = sign(q) * sign(b - r) with r = -p/q = a/b > 0 here;
        # for r >= 0: b > r iff r^2 - a0 r - a1 < 0 (b is the positive root),
        # i.e. a^2 - a0 a b - a1 b^2 < 0 in integers (no Fraction division)
        a = -p.numerator * q.denominator
        b = q.numerator * p.denominator
        if b < 0:
            a, b = -a, -b
        f = a * a - self.params.a0 * a * b - self.params.a1 * b * b
        return sq if f < 0 else -sq  # equality impossible: beta is irrational

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def is_rational(self) -> bool:
        return self.q == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.p == other and self.q == 0
        if not isinstance(other, QuadNum):
            return NotImplemented
        return self.params == other.params and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q, self.params))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    # -- conversions ---------------------------------------------------------

    def floor(self) -> int:
        """The unique integer m with m <= self < m+1."""
        m = math.floor(float(self))
        # float seed, then exact correction
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    def __float__(self) -> float:
        # Evaluate as r + s*sqrt(D) with an interval around sqrt(D) that is
        # narrowed until the result is correct to ~2^-60 relative error;
        # the naive float(p) + float(q)*beta cancels catastrophically when
        # p and q are large with opposite signs.
        if self.q == 0:
            return float(self.p)
        r = self.p + Fraction(self.q * self.params.a0, 2)
        s = Fraction(self.q, 2)
        D = self.params.disc
        m = 64
        while True:
            lo = Fraction(isqrt(D << (2 * m)), 1 << m)  # sqrt(D) within 2^-m
            val = r + s * lo
            err = abs(s) * Fraction(1, 1 << m)
            if abs(val) > err * (1 << 60):
                return float(val)
            m *= 2

    def to_decimal(self, digits: int) -> str:
        """Correctly rounded decimal string with `digits` digits after the point."""
        if digits < 1:
            raise ValueError("digits must be >= 1")
        scale = 10 ** digits
        if self.q == 0:
            n = round(self.p * scale)  # half-even on exact rationals
        else:
            # value = r + s*sqrt(D) with rational r, s
            r = self.p + Fraction(self.q * self.params.a0, 2)
            s = Fraction(self.q, 2)
            D = self.params.disc
            m = digits + 20
            while True:
                lo = Fraction(isqrt(D * 10 ** (2 * m)), 10 ** m)
                hi = lo + Fraction(1, 10 ** m)
                if s > 0:
                    vlo, vhi = r + s * lo, r + s * hi
                else:
                    vlo, vhi = r + s * hi, r + s * lo
                nlo = math.floor(vlo * scale + Fraction(1, 2))
                nhi = math.floor(vhi * scale + Fraction(1, 2))
                if nlo == nhi:
                    n = nlo
                    break
                m += 20
        sign = "-" if n < 0 else ""
        ip, fp = divmod(abs(n), scale)
        return "%s%d.%0*d" % (sign, ip, digits, fp)

    # -- formatting ----------------------------------------------------------

    def __repr__(self):
        return "QuadNum(%s + %s*beta; a0=%d, a1=%d)" % (
            self.p, self.q, self.params.a0, self.params.a1)

    def to_string(self) -> str:
        """Exact string form "p/q" or "p/q+r/s*beta" (lossless)."""
        if self.q == 0:
            return str(self.p)
        qs = str(abs(self.q)) + "*beta"
        op = "+" if self.q > 0 else "-"
        return "%s%s%s" % (self.p, op, qs)


def quadnum_from_string(text: str, params: BetaParams) -> QuadNum:
    """Parse the output of QuadNum.to_string."""
    text = text.strip()
    if "beta" not in text:
        return QuadNum(Fraction(text), 0, params)
    head, tail = text.split("*beta")
    if tail:
        raise ValueError("malformed QuadNum string: %r" % text)
    # split head into rational part and beta coefficient at the last +/- that
    # is not a leading sign or part of a fraction
    for i in range(len(head) - 1, 0, -1):
        if head[i] in "+-" and head[i - 1] not in "+-/":
            p_part = head[:i]
            q_part = head[i] + head[i + 1:]
            break
    else:
        p_part, q_part = "0", head
    if q_part in ("+", "-"):
        q_part += "1"
    return QuadNum(Fraction(p_part), Fraction(q_part), params)
