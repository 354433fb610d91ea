"""Exact rational slopes with infinity, and continued fractions.

A ``Frac`` is a reduced fraction p/q with q >= 0, where 1/0 encodes the
infinite slope.  Python's ``fractions.Fraction`` refuses zero denominators,
so we roll a tiny immutable class instead.
"""

from __future__ import annotations

from math import gcd


class Frac:
    """Reduced fraction p/q, q >= 0; infinity is Frac(1, 0)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if isinstance(num, Frac):
            num, den = num.num, num.den * den
        num = int(num)
        den = int(den)
        if num == 0 and den == 0:
            raise ZeroDivisionError("0/0 is not a slope")
        g = gcd(num, den)
        if g:
            num //= g
            den //= g
        if den < 0:
            num, den = -num, -den
        if den == 0:
            num = 1 if num > 0 else -1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("Frac is immutable")

    def __reduce__(self):
        return (Frac, (self.num, self.den))

    @property
    def is_infinite(self):
        return self.den == 0

    @property
    def is_integer(self):
        return self.den == 1

    def __eq__(self, other):
        other = as_frac(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _cmp_key(self):
        if self.den == 0:
            return (1, 0, self.num)
        return (0, self.num, self.den)

    def __lt__(self, other):
        other = as_frac(other)
        if self.den and other.den:
            return self.num * other.den < other.num * self.den
        return self._cmp_key() < other._cmp_key()

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return not self <= other

    def __ge__(self, other):
        return not self < other

    def __neg__(self):
        return Frac(-self.num, self.den)

    def __add__(self, other):
        other = as_frac(other)
        if self.is_infinite or other.is_infinite:
            if self.is_infinite and other.is_infinite:
                raise ZeroDivisionError("inf + inf")
            return INF
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_frac(other))

    def __rsub__(self, other):
        return as_frac(other) + (-self)

    def __mul__(self, other):
        other = as_frac(other)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        return Frac(self.den, self.num)

    def __repr__(self):
        if self.den == 0:
            return "1/0" if self.num > 0 else "-1/0"
        if self.den == 1:
            return str(self.num)
        return "%d/%d" % (self.num, self.den)


INF = Frac(1, 0)


def as_frac(x) -> Frac:
    if isinstance(x, Frac):
        return x
    if isinstance(x, int):
        return Frac(x, 1)
    if isinstance(x, tuple):
        return Frac(*x)
    raise TypeError("cannot interpret %r as a fraction" % (x,))


def parse_frac(text: str) -> Frac:
    text = text.strip()
    if "/" in text:
        a, b = text.split("/")
        return Frac(int(a), int(b))
    return Frac(int(text), 1)


def cf_expand(f: Frac) -> list:
    """Expansion [c1,...,cm] with f = 1/(c1 + 1/(c2 + ... + 1/cm)).

    Requires a finite nonzero input.  The expansion ends with |cm| >= 2
    (or m == 1) so that round-tripping through cf_eval is exact.
    """
    f = as_frac(f)
    if f.is_infinite:
        raise ZeroDivisionError("no continued fraction for 1/0")
    if f.num == 0:
        raise ZeroDivisionError("no continued fraction for 0")
    out = []
    p, q = f.num, f.den
    # invariant: remaining fraction is p/q, next coefficient strips 1/(c + rest)
    while p != 0:
        # p/q = 1/(q/p); peel the integer part of q/p
        c = q // p
        r = q - c * p
        # keep the tail in (0,1): r/p with 0 <= r < |p| when p>0
        out.append(c)
        q, p = p, r
    # canonical tail: [..., c, 1] -> [..., c+1]
    if len(out) > 1 and out[-1] == 1:
        out.pop()
        out[-1] += 1
    return out


def cf_eval(coeffs) -> Frac:
    """Inverse of cf_expand: [c1..cm] -> 1/(c1 + 1/(c2 + ... + 1/cm))."""
    if not coeffs:
        raise ValueError("empty continued fraction")
    p, q = 1, coeffs[-1]
    for c in reversed(coeffs[:-1]):
        # value v = p/q becomes 1/(c + v) = q/(c*q + p)
        p, q = q, c * q + p
    return Frac(p, q)
