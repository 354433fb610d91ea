"""Exact integer Laurent polynomials in one or two variables.

Exponents of one-variable polynomials are stored in *half units*: the key
``n`` stands for ``var^(n/2)``.  This lets Jones polynomials of links and
symmetrized Alexander polynomials live in one class without fractions.
All coefficients are arbitrary-precision integers; zero coefficients are
never stored.
"""

from __future__ import annotations


class LaurentPoly:
    """Laurent polynomial with integer coefficients, half-unit exponents."""

    __slots__ = ("var", "terms")

    def __init__(self, var="t", terms=None):
        self.var = var
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[int(e)] = int(c)

    @classmethod
    def const(cls, c, var="t"):
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, coeff, half_exp, var="t"):
        return cls(var, {half_exp: coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly(self.var)
            return LaurentPoly(self.var, {e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly.const(1, self.var)
        base = self
        if n < 0:
            base = base.invert_variable()
            n = -n
        for _ in range(n):
            out = out * base
        return out

    def shift(self, half_exp):
        """Multiply by var^(half_exp/2)."""
        return LaurentPoly(self.var, {e + half_exp: c for e, c in self.terms.items()})

    def invert_variable(self):
        """Substitute var -> 1/var (exact, exponent negation)."""
        return LaurentPoly(self.var, {-e: c for e, c in self.terms.items()})

    def eval_at_minus_one(self):
        """Evaluate at var = -1; requires all exponents in whole units."""
        total = 0
        for e, c in self.terms.items():
            if e % 2:
                raise ValueError("half-integer exponent; cannot evaluate at -1")
            total += c * (-1) ** ((e // 2) % 2)
        return total

    def eval_at_one(self):
        return sum(self.terms.values())

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    def breadth(self):
        """max - min exponent in whole variable units (may be half-integral)."""
        if not self.terms:
            return 0
        span = max(self.terms) - min(self.terms)
        if span % 2 == 0:
            return span // 2
        raise ValueError("breadth is not a whole number of variable units")

    def divide_exact(self, other):
        """Exact division; raises if the remainder is nonzero."""
        if other.is_zero():
            raise ZeroDivisionError
        rem = dict(self.terms)
        out = {}
        lead = max(other.terms) if other.terms else 0
        lc = other.terms[lead]
        while rem:
            e = max(rem)
            c = rem[e]
            if c % lc:
                raise ValueError("division is not exact")
            q = c // lc
            qe = e - lead
            out[qe] = out.get(qe, 0) + q
            for oe, oc in other.terms.items():
                k = qe + oe
                v = rem.get(k, 0) - q * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(self.var, out)

    def coefficient(self, half_exp):
        return self.terms.get(half_exp, 0)

    def substitute_power(self, k):
        """Substitute var -> var^k (exponent scaling by k)."""
        return LaurentPoly(self.var, {e * k: c for e, c in self.terms.items()})

    def text(self):
        """Bit-exact text form: sorted coeff*var^exp terms."""
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(str(c))
            elif e % 2 == 0:
                bits.append("%d*%s^%d" % (c, self.var, e // 2))
            else:
                bits.append("%d*%s^(%d/2)" % (c, self.var, e))
        return " + ".join(bits)

    def __repr__(self):
        return "LaurentPoly(%s)" % self.text()


class TwoVarPoly:
    """Integer polynomial in two Laurent variables (whole exponents)."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars=("a", "z"), terms=None):
        self.vars = tuple(vars)
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[(int(k[0]), int(k[1]))] = int(c)

    @classmethod
    def const(cls, c, vars=("a", "z")):
        return cls(vars, {(0, 0): c})

    @classmethod
    def monomial(cls, coeff, e1, e2, vars=("a", "z")):
        return cls(vars, {(e1, e2): coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly.const(other, self.vars)
        return isinstance(other, TwoVarPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly.const(other, self.vars)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TwoVarPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return TwoVarPoly(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TwoVarPoly.const(other, self.vars)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TwoVarPoly(self.vars, {k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                v = out.get(k, 0) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return TwoVarPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = TwoVarPoly.const(1, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def invert_first(self):
        """Substitute var1 -> 1/var1 (the mirror map for both skein polys)."""
        return TwoVarPoly(self.vars, {(-a, b): c for (a, b), c in self.terms.items()})

    def substitute_laurent(self, sub1, sub2):
        """Substitute var1 by a monomial and var2 by any Laurent polynomial.

        Negative powers of var2 are handled by clearing them first and
        dividing exactly at the end.
        """
        if not self.terms:
            return LaurentPoly(sub1.var)
        if len(sub1.terms) != 1:
            raise ValueError("first substitution must be a monomial")
        var = sub1.var
        shift2 = max(0, -min(b for (_a, b) in self.terms))
        out = LaurentPoly(var)
        cache1, cache2 = {}, {}

        def p1(n):
            if n not in cache1:
                cache1[n] = sub1 ** n
            return cache1[n]

        def p2(n):
            if n not in cache2:
                cache2[n] = sub2 ** n
            return cache2[n]

        for (a, b), c in self.terms.items():
            out = out + c * (p1(a) * p2(b + shift2))
        if shift2:
            out = out.divide_exact(p2(shift2))
        return out

    def text(self):
        if not self.terms:
            return "0"
        bits = []
        for k in sorted(self.terms):
            c = self.terms[k]
            bits.append("%d*%s^%d*%s^%d" % (c, self.vars[0], k[0], self.vars[1], k[1]))
        return " + ".join(bits)

    def __repr__(self):
        return "TwoVarPoly(%s)" % self.text()
