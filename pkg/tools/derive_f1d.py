"""Tree search for the first family's quotient tangle.

Candidates: arborescent trees with one X slot (filling) and one Y slot
(the q twist box, R(1/q)), filtered by the signed determinant-vector
calculus against det = |4q + 8 + c0 - x|, then battery-checked.
"""
import itertools, time, sys
from knotkit.rationals import Frac
from knotkit.tangle import (rational_tangle, hsum, vstack, rot90, tangle_mirror,
                            twist_east, twist_south, numerator_closure, montesinos_link)
from knotkit.polyinv import determinant, jones

# ---------- vector calculus on trees with numeric leaves ----------
def vec(expr, xv, yv):
    op = expr[0]
    if op == "X":
        return xv
    if op == "Y":
        return yv
    if op == "R":
        return (expr[1].num, expr[1].den)
    if op == "htw":
        n, d = vec(expr[2], xv, yv); return (n + expr[1] * d, d)
    if op == "vtw":
        n, d = vec(expr[2], xv, yv); return (n, d + expr[1] * n)
    if op == "rot":
        n, d = vec(expr[1], xv, yv); return (-d, n)
    if op == "mir":
        n, d = vec(expr[1], xv, yv); return (-n, d)
    if op == "hsum":
        n, d = vec(expr[1], xv, yv)
        for e in expr[2:]:
            n2, d2 = vec(e, xv, yv)
            n, d = n * d2 + d * n2, d * d2
        return n, d
    if op == "vstack":
        n, d = vec(expr[1], xv, yv)
        for e in expr[2:]:
            n2, d2 = vec(e, xv, yv)
            n, d = n * n2, n * d2 + d * n2
        return n, d
    raise ValueError(op)

def build(expr, x, y):
    op = expr[0]
    if op == "X": return rational_tangle(x)
    if op == "Y": return rational_tangle(y)
    if op == "R": return rational_tangle(expr[1])
    if op == "htw": return twist_east(build(expr[2], x, y), expr[1])
    if op == "vtw": return twist_south(build(expr[2], x, y), expr[1])
    if op == "rot": return rot90(build(expr[1], x, y))
    if op == "mir": return tangle_mirror(build(expr[1], x, y))
    if op == "hsum":
        t = build(expr[1], x, y)
        for e in expr[2:]: t = hsum(t, build(e, x, y))
        return t
    if op == "vstack":
        t = build(expr[1], x, y)
        for e in expr[2:]: t = vstack(t, build(e, x, y))
        return t
    raise ValueError(op)

# ---------- grammar ----------
def wrap_words():
    words = [()]
    ks = [-3, -2, -1, 1, 2, 3]
    words += [(("rot",),)]
    for k in ks:
        words.append((("htw", k),))
        words.append((("vtw", k),))
        words.append((("rot",), ("htw", k)))
        words.append((("htw", k), ("rot",)))
        words.append((("rot",), ("vtw", k)))
        words.append((("vtw", k), ("rot",)))
    for k in ks:
        for l in ks:
            words.append((("htw", k), ("vtw", l)))
            words.append((("vtw", k), ("htw", l)))
    return words

def apply_word(leaf, word):
    e = leaf
    for op in word:
        e = (op[0], op[1], e) if op[0] in ("htw", "vtw") else (op[0], e)
    return e

FIX = [Frac(a, b) for (a, b) in [(1,2),(-1,2),(1,3),(-1,3),(2,3),(-2,3),(1,4),(-1,4),
                                  (2,5),(-2,5),(1,1),(-1,1),(2,1),(-2,1),(0,1),(1,0),(3,1),(-3,1)]]

def shapes():
    # positions labeled 0..n-1; yield (skeleton function, n_leaves)
    S = []
    S.append((lambda L: ("hsum", L[0], L[1], L[2]), 3))
    S.append((lambda L: ("hsum", L[0], ("vstack", L[1], L[2])), 3))
    S.append((lambda L: ("vstack", L[0], ("hsum", L[1], L[2])), 3))
    S.append((lambda L: ("vstack", ("hsum", L[0], L[1]), L[2]), 3))
    S.append((lambda L: ("hsum", L[0], L[1], L[2], L[3]), 4))
    S.append((lambda L: ("hsum", L[0], L[1], ("vstack", L[2], L[3])), 4))
    S.append((lambda L: ("hsum", L[0], ("vstack", L[1], L[2]), L[3]), 4))
    S.append((lambda L: ("hsum", ("vstack", L[0], L[1]), ("vstack", L[2], L[3])), 4))
    S.append((lambda L: ("hsum", L[0], ("vstack", L[1], ("hsum", L[2], L[3]))), 4))
    S.append((lambda L: ("hsum", L[0], ("vstack", ("hsum", L[1], L[2]), L[3])), 4))
    S.append((lambda L: ("vstack", ("hsum", L[0], L[1]), ("hsum", L[2], L[3])), 4))
    S.append((lambda L: ("vstack", L[0], ("hsum", L[1], ("vstack", L[2], L[3]))), 4))
    return S

def det_filter(expr):
    """Check n(x,q) = sigma (4q + 8 + c0 - x); returns c0, sigma or None."""
    vals = {}
    for (x, q) in ((0, 3), (1, 3), (0, 4), (1, 4)):
        n, d = vec(expr, (x, 1), (1, q))
        vals[(x, q)] = n
    u = vals[(1, 3)] - vals[(0, 3)]
    if abs(u) != 1: return None
    v = vals[(0, 4)] - vals[(0, 3)]
    if abs(v) != 4: return None
    sigma = -u
    if v != 4 * sigma: return None
    if vals[(1, 4)] - vals[(0, 4)] != u: return None
    # meridian
    for q in (3, 4):
        n, d = vec(expr, (1, 0), (1, q))
        if abs(n) != 1: return None
    c0 = sigma * vals[(0, 3)] - 20
    # extra probe: x = 5, q = 6
    n, d = vec(expr, (5, 1), (1, 6))
    if n != sigma * (4 * 6 + 8 + c0 - 5): return None
    return c0, sigma

def battery(expr, c0):
    M = {}
    for q in (3, 4, 5):
        M[(1, q)] = jones(montesinos_link(0, [Frac(2,3), Frac(-2,5), Frac(1, q-2)]))
        M[(2, q)] = jones(montesinos_link(0, [Frac(1,2), Frac(-1,4), Frac(2, 2*q-5)]))
    for mirror in (False, True):
        ok = True
        for q in (3, 4, 5):
            for rr in (1, 2):
                x = c0 + rr
                L = numerator_closure(build(expr, Frac(x), Frac(1, q)))
                vL = jones(L)
                want = M[(rr, q)]
                if mirror:
                    want = want.invert_variable()
                if vL != want:
                    ok = False
                    break
            if not ok: break
        if ok:
            return ("mirror" if mirror else "direct")
    return None

def main():
    words = wrap_words()
    print("wrapper words:", len(words), flush=True)
    t0 = time.time()
    tried = 0
    hits = []
    for skel, n in shapes():
        positions = range(n)
        for xi in positions:
            for yi in positions:
                if yi == xi: continue
                rest = [p for p in positions if p not in (xi, yi)]
                for fixes in itertools.product(FIX, repeat=len(rest)):
                    for wx in words:
                        Xe = apply_word(("X",), wx)
                        for wy in words:
                            Ye = apply_word(("Y",), wy)
                            L = [None] * n
                            L[xi] = Xe; L[yi] = Ye
                            for p, f in zip(rest, fixes):
                                L[p] = ("R", f)
                            expr = skel(L)
                            tried += 1
                            got = det_filter(expr)
                            if got is None: continue
                            c0, sigma = got
                            which = battery(expr, c0)
                            if which:
                                print("MATCH[%s] c0=%d sigma=%d: %s" % (which, c0, sigma, expr), flush=True)
                                hits.append(expr)
                                if len(hits) >= 6:
                                    print("tried", tried); return
        print("# shape done, tried %d, %.0fs" % (tried, time.time() - t0), flush=True)
    print("total tried", tried)

main()
