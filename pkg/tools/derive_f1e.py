"""Optimized tree search: precomputed probe vectors, inlined shape arithmetic."""
import itertools, time
from knotkit.rationals import Frac

# probes: (x, q) pairs; X-leaf vector at x; Y-leaf vector (1, q)
XVALS = [(0, 1), (1, 1), (5, 1), (1, 0)]
QVALS = [3, 4, 6]
PROBES = [(0, 3), (1, 3), (0, 4), (1, 4), (5, 6)]
MER_PROBES = [((1, 0), 3), ((1, 0), 4)]

def mob_apply(M, v):
    a, b, c, d = M
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])

def word_matrix(word):
    M = (1, 0, 0, 1)
    for op in word:
        if op[0] == "htw":
            k = op[1]; M = (M[0] + k * M[2], M[1] + k * M[3], M[2], M[3])
        elif op[0] == "vtw":
            k = op[1]; M = (M[0], M[1], M[2] + k * M[0], M[3] + k * M[1])
        elif op[0] == "rot":
            M = (-M[2], -M[3], M[0], M[1])
        elif op[0] == "mir":
            M = (-M[0], -M[1], M[2], M[3])
    return M

def wrap_words():
    words = [(), (("rot",),)]
    ks = [-3, -2, -1, 1, 2, 3]
    for k in ks:
        words.append((("htw", k),))
        words.append((("vtw", k),))
        words.append((("rot",), ("htw", k)))
        words.append((("htw", k), ("rot",)))
        words.append((("rot",), ("vtw", k)))
        words.append((("vtw", k), ("rot",)))
    return words

# shape evaluators: fold over leaf vectors
def hs(u, v): return (u[0] * v[1] + u[1] * v[0], u[1] * v[1])
def vs(u, v): return (u[0] * v[0], u[0] * v[1] + u[1] * v[0])

SHAPES = [
    ("hs(vs(L0,L1),vs(L2,L3))", 4, lambda L: hs(vs(L[0], L[1]), vs(L[2], L[3]))),
    ("hs(hs(vs(L0,L1),vs(L2,L3)),L4)", 5, lambda L: hs(hs(vs(L[0], L[1]), vs(L[2], L[3])), L[4])),
    ("hs(hs(L0,L1),L2)", 3, lambda L: hs(hs(L[0], L[1]), L[2])),
    ("hs(L0,vs(L1,L2))", 3, lambda L: hs(L[0], vs(L[1], L[2]))),
    ("vs(L0,hs(L1,L2))", 3, lambda L: vs(L[0], hs(L[1], L[2]))),
    ("vs(vs(L0,L1),L2)", 3, lambda L: vs(vs(L[0], L[1]), L[2])),
    ("hs(hs(L0,L1),vs(L2,L3))", 4, lambda L: hs(hs(L[0], L[1]), vs(L[2], L[3]))),
    ("hs(hs(L0,vs(L1,L2)),L3)", 4, lambda L: hs(hs(L[0], vs(L[1], L[2])), L[3])),
    ("hs(L0,vs(L1,hs(L2,L3)))", 4, lambda L: hs(L[0], vs(L[1], hs(L[2], L[3])))),
    ("hs(L0,vs(hs(L1,L2),L3))", 4, lambda L: hs(L[0], vs(hs(L[1], L[2]), L[3]))),
    ("vs(hs(L0,L1),hs(L2,L3))", 4, lambda L: vs(hs(L[0], L[1]), hs(L[2], L[3]))),
    ("vs(L0,hs(L1,vs(L2,L3)))", 4, lambda L: vs(L[0], hs(L[1], vs(L[2], L[3])))),
    ("hs(hs(hs(L0,L1),L2),L3)", 4, lambda L: hs(hs(hs(L[0], L[1]), L[2]), L[3])),
    ("vs(vs(L0,L1),hs(L2,L3))", 4, lambda L: vs(vs(L[0], L[1]), hs(L[2], L[3]))),
]

FIX = [Frac(a, b) for (a, b) in [(1,2),(-1,2),(1,3),(-1,3),(2,3),(-2,3),(1,4),(-1,4),
                                  (2,5),(-2,5),(1,1),(-1,1),(2,1),(-2,1),(0,1),(1,0),(3,1),(-3,1)]]

def main():
    words = wrap_words()
    xmats = [word_matrix(w) for w in words]
    # precompute probe vectors
    xvecs = [[mob_apply(M, xv) for xv in XVALS] for M in xmats]
    yvecs = [[mob_apply(M, (1, q)) for q in QVALS] for M in xmats]
    fixv = [(f.num, f.den) for f in FIX]
    XI = {0: 0, 1: 1, 5: 2, (1, 0): 3}
    QI = {3: 0, 4: 1, 6: 2}

    t0 = time.time()
    tried = 0
    hits = []
    for sname, n, ev in SHAPES:
        npos = list(range(n))
        for xi in npos:
            for yi in npos:
                if yi == xi: continue
                rest = [p for p in npos if p not in (xi, yi)]
                for fixes in itertools.product(range(len(FIX)), repeat=len(rest)):
                    base = [None] * n
                    for p, fi in zip(rest, fixes):
                        base[p] = fixv[fi]
                    for wxi in range(len(words)):
                        xv = xvecs[wxi]
                        for wyi in range(len(words)):
                            yv = yvecs[wyi]
                            tried += 1
                            L = list(base)
                            # probe (0,3) and (1,3): x-coeff
                            L[xi] = xv[XI[0]]; L[yi] = yv[QI[3]]
                            n03 = ev(L)[0]
                            L[xi] = xv[XI[1]]
                            n13 = ev(L)[0]
                            u = n13 - n03
                            if u != 1 and u != -1: continue
                            sigma = -u
                            L[xi] = xv[XI[0]]; L[yi] = yv[QI[4]]
                            n04 = ev(L)[0]
                            if n04 - n03 != 4 * sigma: continue
                            L[xi] = xv[XI[1]]
                            if ev(L)[0] - n04 != u: continue
                            c0 = sigma * n03 - 20
                            L[xi] = xv[XI[5]]; L[yi] = yv[QI[6]]
                            if ev(L)[0] != sigma * (4*6 + 8 + c0 - 5): continue
                            L[xi] = xv[XI[(1, 0)]]
                            L[yi] = yv[QI[3]]
                            if abs(ev(L)[0]) != 1: continue
                            L[yi] = yv[QI[4]]
                            if abs(ev(L)[0]) != 1: continue
                            hits.append((sname, xi, yi, [FIX[f] for f in fixes],
                                         words[wxi], words[wyi], c0, sigma))
                            if len(hits) % 20 == 1:
                                print("det-hit", len(hits), hits[-1], flush=True)
        print("# shape %s done: tried %dk, hits %d, %.0fs" %
              (sname, tried // 1000, len(hits), time.time() - t0), flush=True)
    import pickle
    with open("/tmp/f1_hits.pkl", "wb") as fh:
        pickle.dump(hits, fh)
    print("TOTAL det hits:", len(hits))

main()
