"""Seifert matrices and Alexander polynomials, with the Burau oracle."""
from math import gcd

from knotkit.laurent import LaurentPoly
from knotkit.polyinv import determinant, _int_det
from knotkit.rationals import Frac
from knotkit.seifert import (alexander, seifert_matrix, seifert_matrix_from_braid,
                             braid_word, seifert_genus, vogel_braid_form)
from knotkit.tangle import two_bridge, torus_link, pretzel, montesinos_link, braid_diagram


def lp(terms):
    return LaurentPoly("t", {2 * k: v for k, v in terms.items()})


def burau_alexander(word, n):
    """Alexander polynomial via the reduced Burau representation (oracle)."""
    one = LaurentPoly.const(1, "t")
    t = LaurentPoly.monomial(1, 2, "t")
    tinv = LaurentPoly.monomial(1, -2, "t")
    m = n - 1

    def mat_id(sz):
        return [[one * (1 if i == j else 0) for j in range(sz)] for i in range(sz)]

    def mat_mul(a, b):
        sz = len(a)
        return [[sum((a[i][k] * b[k][j] for k in range(sz)), LaurentPoly("t"))
                 for j in range(sz)] for i in range(sz)]

    rho = mat_id(m)
    for letter in word:
        i = abs(letter)
        g = mat_id(m)
        if letter > 0:
            if i - 2 >= 0:
                g[i - 1][i - 2] = t
            g[i - 1][i - 1] = LaurentPoly("t", {2: -1})
            if i < m:
                g[i - 1][i] = one
        else:
            if i - 2 >= 0:
                g[i - 1][i - 2] = one
            g[i - 1][i - 1] = LaurentPoly("t", {-2: -1})
            if i < m:
                g[i - 1][i] = tinv
        rho = mat_mul(rho, g)
    for i in range(m):
        rho[i][i] = rho[i][i] - 1

    def det(mat):
        sz = len(mat)
        if sz == 0:
            return LaurentPoly.const(1, "t")
        total = LaurentPoly("t")
        for j in range(sz):
            if mat[0][j].is_zero():
                continue
            minor = [[mat[i][jj] for jj in range(sz) if jj != j] for i in range(1, sz)]
            term = mat[0][j] * det(minor)
            total = total + (term if j % 2 == 0 else -term)
        return total

    d = det(rho) * LaurentPoly("t", {0: 1, 2: -1})
    q = d.divide_exact(LaurentPoly("t", {0: 1, 2 * n: -1}))
    return _normalize(q)


def _normalize(p):
    if p.is_zero():
        return p
    lo, hi = min(p.terms), max(p.terms)
    p = p.shift(-(lo + hi) // 2)
    if p.eval_at_one() < 0:
        p = -p
    elif p.eval_at_one() == 0 and p.terms[max(p.terms)] < 0:
        p = -p
    return p


def test_trefoil_matrix_and_alexander():
    # the standard genus-1 Seifert matrix, up to the symmetries Delta ignores
    v = seifert_matrix(torus_link(2, 3))
    assert len(v) == 2
    assert alexander(torus_link(2, 3)) == lp({-1: 1, 0: -1, 1: 1})


def test_known_alexander_values():
    assert alexander(two_bridge(Frac(2, 5))) == lp({-1: -1, 0: 3, 1: -1})
    assert alexander(torus_link(3, 4)) == lp({-3: 1, -2: -1, 0: 1, 2: -1, 3: 1})
    assert alexander(torus_link(2, 5)) == lp({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})


def test_alexander_symmetric_and_at_one():
    knots = [torus_link(2, 3), two_bridge(Frac(3, 7)), pretzel(-2, 3, 7),
             montesinos_link(0, [Frac(1, 3), Frac(1, 4), Frac(-3, 5)])]
    for d in knots:
        a = alexander(d)
        assert a == a.invert_variable()
        assert a.eval_at_one() == 1
    # links: symmetric up to sign, vanish at 1
    link = alexander(two_bridge(Frac(5, 12)))
    assert link == -link.invert_variable()
    assert link.eval_at_one() == 0


def test_determinant_cross_check():
    for d in [torus_link(2, 3), two_bridge(Frac(2, 5)), two_bridge(Frac(43, 95)),
              pretzel(3, -3, 4), montesinos_link(0, [Frac(2, 3), Frac(-2, 5), Frac(1, 4)])]:
        v = seifert_matrix(d)
        n = len(v)
        sym = [[v[i][j] + v[j][i] for j in range(n)] for i in range(n)]
        assert abs(_int_det(sym)) == determinant(d)


def test_alexander_split_is_zero():
    from knotkit.diagram import unknot
    assert alexander(unknot().disjoint_union(unknot())).is_zero()


def test_braid_word_roundtrip():
    # the closure of the extracted word reproduces the invariants
    from knotkit.polyinv import jones
    for d in [two_bridge(Frac(3, 7)), pretzel(3, -3, 4)]:
        word, strands = braid_word(d)
        closed = braid_diagram(word, strands)
        assert jones(closed) in (jones(d), jones(d.mirror()))


def test_collins_vs_burau_random_words():
    import random
    random.seed(77)
    count = 0
    while count < 25:
        n = random.choice([2, 3, 3, 4])
        L = random.randint(3, 9)
        word = [random.choice([1, -1]) * random.randint(1, n - 1) for _ in range(L)]
        if {abs(x) for x in word} != set(range(1, n)):
            continue
        count += 1
        v = seifert_matrix_from_braid(word, n)
        got = _alex_from_matrix(v)
        assert got == burau_alexander(word, n), (word, n)


def _alex_from_matrix(v):
    from fractions import Fraction
    n = len(v)
    if n == 0:
        return LaurentPoly.const(1, "t")
    pts = []
    for k in range(n + 1):
        tv = k + 2
        m = [[v[i][j] - tv * v[j][i] for j in range(n)] for i in range(n)]
        pts.append((tv, _int_det(m)))
    coeffs = [Fraction(0)] * (n + 1)
    for (tk, yk) in pts:
        num = [Fraction(1)]
        den = Fraction(1)
        for (tj, _) in pts:
            if tj == tk:
                continue
            out = [Fraction(0)] * (len(num) + 1)
            for i, c in enumerate(num):
                out[i] += c * (-tj)
                out[i + 1] += c
            num = out
            den *= Fraction(tk - tj)
        sc = Fraction(yk) / den
        for i in range(len(num)):
            coeffs[i] += sc * num[i]
    return _normalize(LaurentPoly("t", {2 * i - n: int(c) for i, c in enumerate(coeffs) if c}))


def test_genus_of_positive_diagrams():
    # (p-1)(q-1)/2 for positive torus braid closures
    assert seifert_genus(torus_link(2, 3)) == 1
    assert seifert_genus(torus_link(2, 5)) == 2
    assert seifert_genus(torus_link(3, 4)) == 3
    assert seifert_genus(pretzel(-2, 3, 7)) == 5


def test_vogel_terminates_on_two_bridge_sweep():
    for q in range(3, 16):
        for p in range(1, q):
            if gcd(p, q) == 1:
                b = vogel_braid_form(two_bridge(Frac(p, q)))
                assert len(b.faces()) == len(b.crossings) + 2
