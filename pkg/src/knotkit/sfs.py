"""Slope arithmetic and the Seifert-fibered / lens-space calculus.

Seifert descriptors are tiny exact-arithmetic values: small Seifert fibered
spaces over S^2 or D^2, lens spaces, connected sums, S^3, S^1xS^2.
Normalization puts an SFS over S^2 into the form (b; p1/q1, ..., pn/qn)
with 0 < p_i < q_i, after reducing multiplicity-one and infinite fibers
away.  |H1| = |q1...qn (b + sum p_i/q_i)| with 0 encoding infinite first
homology.
"""

from __future__ import annotations

from .rationals import Frac, as_frac, parse_frac


class Slope:
    """A slope m/l on a torus: coprime pair, l >= 0; 1/0 is infinity."""

    __slots__ = ("m", "l")

    def __init__(self, m, l=1):
        if isinstance(m, Frac):
            m, l = m.num, m.den * l
        f = Frac(m, l)
        object.__setattr__(self, "m", f.num)
        object.__setattr__(self, "l", f.den)

    def __setattr__(self, *a):
        raise AttributeError("Slope is immutable")

    def frac(self):
        return Frac(self.m, self.l)

    def __eq__(self, other):
        other = as_slope(other)
        return self.m == other.m and self.l == other.l

    def __hash__(self):
        return hash((self.m, self.l))

    def __repr__(self):
        return "Slope(%d/%d)" % (self.m, self.l)


def as_slope(x) -> Slope:
    if isinstance(x, Slope):
        return x
    if isinstance(x, Frac):
        return Slope(x.num, x.den)
    if isinstance(x, int):
        return Slope(x, 1)
    if isinstance(x, tuple):
        return Slope(*x)
    raise TypeError("cannot interpret %r as a slope" % (x,))


def slope_distance(a, b) -> int:
    """Delta(a, b) = |m l' - m' l|; symmetric, 0 iff equal."""
    a, b = as_slope(a), as_slope(b)
    return abs(a.m * b.l - b.m * a.l)


# -- Seifert descriptors ---------------------------------------------------------


class SeifertDescriptor:
    """kind: 'sfs' (over S^2), 'lens', 'sum', 's3', 's1xs2', 'd2' (over D^2)."""

    __slots__ = ("kind", "fibers", "p", "q", "parts")

    def __init__(self, kind, fibers=(), p=0, q=0, parts=()):
        self.kind = kind
        self.fibers = tuple(as_frac(f) for f in fibers)
        self.p = int(p)
        self.q = int(q)
        self.parts = tuple(parts)

    @classmethod
    def sfs(cls, *fibers):
        return cls("sfs", fibers=fibers)

    @classmethod
    def lens(cls, p, q):
        return cls("lens", p=p, q=q)

    @classmethod
    def s3(cls):
        return cls("s3")

    @classmethod
    def s1_x_s2(cls):
        return cls("s1xs2")

    @classmethod
    def connected_sum(cls, *parts):
        return cls("sum", parts=parts)

    @classmethod
    def d2(cls, *fibers):
        return cls("d2", fibers=fibers)

    def __repr__(self):
        return "SeifertDescriptor(%s)" % descriptor_text(self)

    def __eq__(self, other):
        return isinstance(other, SeifertDescriptor) and sfs_equal(self, other)

    def __hash__(self):
        # hash on the coarse normalized class
        n = normalize(self)
        if n.kind == "sfs":
            key = ("sfs", tuple(sorted((f.num, f.den) for f in n.fibers)))
        elif n.kind == "lens":
            key = ("lens", abs(n.p))
        elif n.kind == "sum":
            key = ("sum", len(n.parts))
        else:
            key = (n.kind,)
        return hash(key)


def _lens_normal(p, q):
    """L(p, q) with p >= 0 and q reduced mod p."""
    if p == 0:
        return SeifertDescriptor.s1_x_s2()
    if p < 0:
        p, q = -p, -q
    q %= p
    if p == 1:
        return SeifertDescriptor.s3()
    return SeifertDescriptor("lens", p=p, q=q)


def normalize(s: SeifertDescriptor) -> SeifertDescriptor:
    """Canonical form; idempotent, preserves b + sum of fiber fractions."""
    if s.kind in ("s3", "s1xs2"):
        return SeifertDescriptor(s.kind)
    if s.kind == "lens":
        return _lens_normal(s.p, s.q)
    if s.kind == "sum":
        parts = [normalize(p) for p in s.parts]
        flat = []
        for p in parts:
            if p.kind == "sum":
                flat.extend(p.parts)
            elif p.kind == "s3":
                continue
            else:
                flat.append(p)
        if not flat:
            return SeifertDescriptor.s3()
        if len(flat) == 1:
            return flat[0]
        key = sorted(flat, key=descriptor_text)
        return SeifertDescriptor("sum", parts=key)
    if s.kind == "d2":
        return SeifertDescriptor("d2", fibers=sorted(s.fibers, key=lambda f: (f.den, f.num)))
    if s.kind != "sfs":
        raise ValueError("unknown descriptor kind %r" % (s.kind,))

    # SFS over S^2: infinite fiber (1/0) makes a connected sum of lens spaces
    fibers = list(s.fibers)
    infinite = [f for f in fibers if f.is_infinite]
    if infinite:
        rest = [f for f in fibers if not f.is_infinite]
        if len(infinite) > 1:
            parts = [SeifertDescriptor.s1_x_s2()] * (len(infinite) - 1)
        else:
            parts = []
        parts.extend(_lens_normal(f.den, f.num) for f in rest)
        return normalize(SeifertDescriptor.connected_sum(*parts)) if parts else SeifertDescriptor.s1_x_s2()

    b = 0
    norm = []
    for f in fibers:
        p, q = f.num, f.den
        whole = p // q
        b += whole
        p -= whole * q
        if p:
            norm.append(Frac(p, q))
    # multiplicity-one fibers fold into b (p/1 was fully absorbed above)
    genuine = sorted(norm, key=lambda f: (f.den, f.num))
    if len(genuine) <= 2:
        return _two_fiber_lens(genuine, b)
    return SeifertDescriptor("sfs", fibers=tuple([genuine[0] + b] + genuine[1:]))


def _two_fiber_lens(fibers, b):
    """S^2(b; b1/a1, b2/a2) as a lens space.

    L(a1 b2 + a2 b1, a2 d + b2 g) with b1 g - a1 d = 1; calibrated against
    double branched covers of two-bridge closures of Montesinos sums.
    """
    fs = list(fibers) + [Frac(0, 1)] * (2 - len(fibers))
    a1, b1 = fs[0].den, fs[0].num
    f2 = fs[1] + b
    a2, b2 = f2.den, f2.num
    g, d = _bezout(b1, -a1)
    p = a1 * b2 + a2 * b1
    q = a2 * d + b2 * g
    return _lens_normal(p, q)


def _bezout(x, y):
    """(g, d) with x g + y d = 1 for coprime x, y."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r == -1:
        old_s, old_t = -old_s, -old_t
        old_r = 1
    if old_r != 1:
        raise ValueError("inputs are not coprime")
    return old_s, old_t


def _mod_inverse_or(a, m):
    a %= m
    for x in range(1, m + 1):
        if (a * x) % m == 1 % m:
            return x
    return 1


def normal_parts(s: SeifertDescriptor):
    """(b, [p/q fibers with 0<p<q]) of a normalized SFS descriptor."""
    n = normalize(s)
    if n.kind != "sfs":
        raise ValueError("not an honest SFS over S^2 after normalization")
    b = 0
    fibers = []
    for f in n.fibers:
        p, q = f.num, f.den
        whole = p // q
        b += whole
        p -= whole * q
        fibers.append(Frac(p, q))
    return b, sorted(fibers, key=lambda f: (f.den, f.num))


def sfs_equal(a: SeifertDescriptor, b: SeifertDescriptor, allow_mirror=True) -> bool:
    """Equality of normalized descriptors; unoriented by default, oriented
    comparison with allow_mirror=False."""
    na, nb = normalize(a), normalize(b)
    if _equal_oriented(na, nb):
        return True
    if allow_mirror:
        return _equal_oriented(normalize(mirror_descriptor(a)), nb)
    return False


def _equal_oriented(na, nb):
    if na.kind != nb.kind:
        return False
    if na.kind in ("s3", "s1xs2"):
        return True
    if na.kind == "lens":
        return lens_equal(na.p, na.q, nb.p, nb.q, oriented=True)
    if na.kind == "sum":
        if len(na.parts) != len(nb.parts):
            return False
        used = set()
        for p in na.parts:
            hit = None
            for k, q in enumerate(nb.parts):
                if k in used:
                    continue
                if _equal_oriented(normalize(p), normalize(q)):
                    hit = k
                    break
            if hit is None:
                return False
            used.add(hit)
        return True
    if na.kind == "d2":
        return na.fibers == nb.fibers
    ba, fa = normal_parts(na)
    bb, fb = normal_parts(nb)
    return ba == bb and fa == fb


def mirror_descriptor(s: SeifertDescriptor) -> SeifertDescriptor:
    if s.kind in ("s3", "s1xs2"):
        return s
    if s.kind == "lens":
        return SeifertDescriptor("lens", p=s.p, q=-s.q)
    if s.kind == "sum":
        return SeifertDescriptor("sum", parts=[mirror_descriptor(p) for p in s.parts])
    return SeifertDescriptor(s.kind, fibers=[-f for f in s.fibers])


def h1_order(s: SeifertDescriptor) -> int:
    """Order of H1 (0 for infinite)."""
    n = normalize(s)
    if n.kind == "s3":
        return 1
    if n.kind == "s1xs2":
        return 0
    if n.kind == "lens":
        return abs(n.p)
    if n.kind == "sum":
        total = 1
        for p in n.parts:
            total *= h1_order(p)
        return total
    if n.kind == "d2":
        return 0
    total = Frac(0)
    den = 1
    for f in n.fibers:
        total = total + f
        den *= f.den
    val = total * den
    assert val.den == 1
    return abs(val.num)


def lens_equal(p, q, p2, q2, oriented=True) -> bool:
    """L(p,q) = L(p2,q2) iff q2 = q or q*q2 = 1 (mod p).

    This is the orientation-preserving relation; reversing orientation is
    handled by negating q (mirror_descriptor), never silently here.
    """
    if abs(p) != abs(p2):
        return False
    p = abs(p)
    if p == 0:
        return True
    q %= p
    q2 %= p
    if p == 1:
        return True
    if q2 == q:
        return True
    return (q * q2) % p == 1 % p


def d2_fill(a, b, seifert_slope, filling) -> SeifertDescriptor:
    """Filling D^2(a, b) along a slope at distance d from the Seifert slope:
    S^2(a, b, d) if d >= 2; L(m, l b^2) if d = 1; L(a, b) # L(b, a) if d = 0.
    """
    seifert_slope = as_slope(seifert_slope)
    filling = as_slope(filling)
    d = slope_distance(filling, seifert_slope)
    if d == 0:
        return SeifertDescriptor.connected_sum(
            SeifertDescriptor.lens(a, b), SeifertDescriptor.lens(b, a)
        )
    if d == 1:
        return _lens_normal(filling.m, filling.l * b * b)
    return SeifertDescriptor.sfs(Frac(1, a), Frac(1, b), Frac(1, d))


def dbc_montesinos(fracs, b=0) -> SeifertDescriptor:
    """Double branched cover of the Montesinos link K[b; f1..fn]."""
    fs = [as_frac(f) for f in fracs]
    if b:
        fs.append(Frac(b, 1))
    return normalize(SeifertDescriptor.sfs(*fs))


def torus_surgery(p, q, r, s=1) -> SeifertDescriptor:
    """r/s surgery on the torus knot T(p,q) (Moser's classification)."""
    d = abs(r - p * q * s)
    if d == 0:
        return SeifertDescriptor.connected_sum(
            SeifertDescriptor.lens(p, q), SeifertDescriptor.lens(q, p)
        )
    if d == 1:
        return _lens_normal(abs(r), q * q * s % max(abs(r), 1))
    # small SFS with multiplicities (p, q, d); the fiber fractions solve
    # |p q d (b1/p + b2/q + b3/d)| = |r| with total sum +-r/(p q d)
    for sign in (1, -1):
        for bp in range(-p + 1, p):
            if p > 1 and _gcd(bp, p) != 1:
                continue
            for bq in range(-q + 1, q):
                if q > 1 and _gcd(bq, q) != 1:
                    continue
                rem = Frac(sign * r, p * q * d) - Frac(bp, p) - Frac(bq, q)
                scaled = rem * d
                if scaled.den == 1 and (d == 1 or _gcd(scaled.num, d) == 1):
                    cand = SeifertDescriptor.sfs(Frac(bp, p), Frac(bq, q), Frac(scaled.num, d))
                    if h1_order(cand) == abs(r):
                        return normalize(cand)
    raise ArithmeticError("no Seifert form found for torus surgery")


def _gcd(a, b):
    from math import gcd
    return gcd(abs(a), abs(b))


def period2_filter(factor_knot, k, r, s=1) -> bool:
    """Arithmetic surgery-slope filters from order-two cyclic symmetries.

    factor_knot: 'unknot' or ('torus', p, q).  k: cone points upstairs (0/1).
    True iff the slope r/s passes the corresponding constraint.
    """
    if _gcd(r, s) != 1:
        raise ValueError("slope must be reduced")
    if factor_knot == "unknot":
        if k == 0:
            return abs(r) <= 2
        if k == 1:
            return abs(r) >= 3
        raise ValueError("k must be 0 or 1")
    if isinstance(factor_knot, tuple) and factor_knot[0] == "torus":
        _t, p, q = factor_knot
        if r % 2 == 0:
            return abs(r - 2 * s * p * q) == 2
        return abs(r - 2 * s * p * q) == 1
    raise ValueError("unsupported factor knot %r" % (factor_knot,))


# -- descriptor text form ----------------------------------------------------------


def descriptor_text(s: SeifertDescriptor) -> str:
    if s.kind == "s3":
        return "S3"
    if s.kind == "s1xs2":
        return "S1xS2"
    if s.kind == "lens":
        return "L(%d,%d)" % (s.p, s.q)
    if s.kind == "sum":
        return " # ".join(descriptor_text(p) for p in s.parts)
    tag = "S2" if s.kind == "sfs" else "D2"
    return "%s(%s)" % (tag, ",".join(repr(f) for f in s.fibers))


def parse_descriptor(text: str) -> SeifertDescriptor:
    text = text.strip()
    if "#" in text:
        return SeifertDescriptor.connected_sum(
            *[parse_descriptor(p) for p in text.split("#")]
        )
    if text == "S3":
        return SeifertDescriptor.s3()
    if text == "S1xS2":
        return SeifertDescriptor.s1_x_s2()
    if text.startswith("L(") and text.endswith(")"):
        p, q = text[2:-1].split(",")
        return SeifertDescriptor.lens(int(p), int(q))
    for tag, kind in (("S2(", "sfs"), ("D2(", "d2")):
        if text.startswith(tag) and text.endswith(")"):
            fibers = [parse_frac(f) for f in text[len(tag):-1].split(",")]
            return SeifertDescriptor(kind, fibers=fibers)
    raise ValueError("cannot parse descriptor %r" % text)
