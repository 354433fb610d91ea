"""Filter det-law hits through the remaining degeneration identities, then
battery-check survivors with Jones."""
import pickle, time, itertools
from knotkit.rationals import Frac
from knotkit.tangle import (rational_tangle, hsum, vstack, rot90, tangle_mirror,
                            twist_east, twist_south, numerator_closure, montesinos_link)
from knotkit.polyinv import determinant, jones

def mob_apply(M, v): a,b,c,d = M; return (a*v[0]+b*v[1], c*v[0]+d*v[1])
def word_matrix(word):
    M = (1,0,0,1)
    for op in word:
        if op[0] == "htw": k=op[1]; M = (M[0]+k*M[2], M[1]+k*M[3], M[2], M[3])
        elif op[0] == "vtw": k=op[1]; M = (M[0], M[1], M[2]+k*M[0], M[3]+k*M[1])
        elif op[0] == "rot": M = (-M[2], -M[3], M[0], M[1])
        elif op[0] == "mir": M = (-M[0], -M[1], M[2], M[3])
    return M
def hs(u,v): return (u[0]*v[1]+u[1]*v[0], u[1]*v[1])
def vs(u,v): return (u[0]*v[0], u[0]*v[1]+u[1]*v[0])
SHAPE_EVAL = {
 "hs(vs(L0,L1),vs(L2,L3))": (4, lambda L: hs(vs(L[0],L[1]),vs(L[2],L[3]))),
 "hs(hs(vs(L0,L1),vs(L2,L3)),L4)": (5, lambda L: hs(hs(vs(L[0],L[1]),vs(L[2],L[3])),L[4])),
 "hs(hs(L0,L1),L2)": (3, lambda L: hs(hs(L[0],L[1]),L[2])),
 "hs(L0,vs(L1,L2))": (3, lambda L: hs(L[0],vs(L[1],L[2]))),
 "vs(L0,hs(L1,L2))": (3, lambda L: vs(L[0],hs(L[1],L[2]))),
 "vs(vs(L0,L1),L2)": (3, lambda L: vs(vs(L[0],L[1]),L[2])),
 "hs(hs(L0,L1),vs(L2,L3))": (4, lambda L: hs(hs(L[0],L[1]),vs(L[2],L[3]))),
 "hs(hs(L0,vs(L1,L2)),L3)": (4, lambda L: hs(hs(L[0],vs(L[1],L[2])),L[3])),
 "hs(L0,vs(L1,hs(L2,L3)))": (4, lambda L: hs(L[0],vs(L[1],hs(L[2],L[3])))),
 "hs(L0,vs(hs(L1,L2),L3))": (4, lambda L: hs(L[0],vs(hs(L[1],L[2]),L[3]))),
 "vs(hs(L0,L1),hs(L2,L3))": (4, lambda L: vs(hs(L[0],L[1]),hs(L[2],L[3]))),
 "vs(L0,hs(L1,vs(L2,L3)))": (4, lambda L: vs(L[0],hs(L[1],vs(L[2],L[3])))),
 "hs(hs(hs(L0,L1),L2),L3)": (4, lambda L: hs(hs(hs(L[0],L[1]),L[2]),L[3])),
 "vs(vs(L0,L1),hs(L2,L3))": (4, lambda L: vs(vs(L[0],L[1]),hs(L[2],L[3]))),
}

_orig_setattr = Frac.__setattr__
Frac.__setattr__ = object.__setattr__  # old pickle wrote per-slot state
hits = pickle.load(open("/tmp/f1_hits.pkl", "rb"))
Frac.__setattr__ = _orig_setattr
print("loaded", len(hits))
t0 = time.time()
stage2 = []
for (sname, xi, yi, fixes, wx, wy, c0, sigma) in hits:
    n, ev = SHAPE_EVAL[sname]
    Mx, My = word_matrix(wx), word_matrix(wy)
    L = [None]*n
    rest = [p for p in range(n) if p not in (xi, yi)]
    for p, f in zip(rest, fixes):
        L[p] = (f.num, f.den)
    ok = True
    for (x, yv, tgt_fn) in [
        ((0,1), (0,1), lambda x_, c0_: 4),
        ((3,1), (0,1), lambda x_, c0_: 4),
        ((0,1), (1,1), lambda x_, c0_: abs(0 - c0_ - 12)),
        ((3,1), (1,1), lambda x_, c0_: abs(3 - c0_ - 12)),
        ((0,1), (1,2), lambda x_, c0_: abs(0 - c0_ - 16)),
        ((3,1), (1,2), lambda x_, c0_: abs(3 - c0_ - 16)),
    ]:
        L[xi] = mob_apply(Mx, x)
        L[yi] = mob_apply(My, yv)
        if abs(ev(L)[0]) != tgt_fn(x[0], c0):
            ok = False; break
    if ok:
        stage2.append((sname, xi, yi, fixes, wx, wy, c0, sigma))
print("stage2 (degeneration filters):", len(stage2), "%.0fs" % (time.time()-t0))
pickle.dump(stage2, open("/tmp/f1_stage2.pkl", "wb"))

# battery stage
def build_leaf(kind, wx, x):
    t = rational_tangle(x)
    for op in wx:
        if op[0] == "htw": t = twist_east(t, op[1])
        elif op[0] == "vtw": t = twist_south(t, op[1])
        elif op[0] == "rot": t = rot90(t)
        elif op[0] == "mir": t = tangle_mirror(t)
    return t

def build(sname, xi, yi, fixes, wx, wy, x, y):
    n, _ = SHAPE_EVAL[sname]
    rest = [p for p in range(n) if p not in (xi, yi)]
    leaves = [None]*n
    leaves[xi] = build_leaf("X", wx, x)
    leaves[yi] = build_leaf("Y", wy, y)
    for p, f in zip(rest, fixes):
        leaves[p] = rational_tangle(f)
    s = sname
    # evaluate the shape structurally
    import re
    def parse(expr):
        if expr.startswith("hs(") or expr.startswith("vs("):
            opn = expr[:2]
            inner = expr[3:-1]
            parts = []
            depth = 0; start = 0
            for i, ch in enumerate(inner):
                if ch == "(": depth += 1
                elif ch == ")": depth -= 1
                elif ch == "," and depth == 0:
                    parts.append(inner[start:i]); start = i+1
            parts.append(inner[start:])
            ts = [parse(p) for p in parts]
            t = ts[0]
            for z in ts[1:]:
                t = hsum(t, z) if opn == "hs" else vstack(t, z)
            return t
        return leaves[int(expr[1:])]
    return parse(s)

M1 = {}
for q in (3, 4, 5):
    M1[(1, q)] = jones(montesinos_link(0, [Frac(2,3), Frac(-2,5), Frac(1, q-2)]))
    M1[(2, q)] = jones(montesinos_link(0, [Frac(1,2), Frac(-1,4), Frac(2, 2*q-5)]))

t0 = time.time()
matches = []
for k, cand in enumerate(stage2):
    (sname, xi, yi, fixes, wx, wy, c0, sigma) = cand
    try:
        L1 = numerator_closure(build(sname, xi, yi, fixes, wx, wy, Frac(c0+1), Frac(1,3)))
        v = jones(L1)
        if v != M1[(1,3)] and v != M1[(1,3)].invert_variable():
            continue
        ok = True
        mirror = v != M1[(1,3)]
        for q in (3,4,5):
            for rr in (1,2):
                Lx = numerator_closure(build(sname, xi, yi, fixes, wx, wy, Frac(c0+rr), Frac(1,q)))
                w = M1[(rr,q)].invert_variable() if mirror else M1[(rr,q)]
                if jones(Lx) != w: ok = False; break
            if not ok: break
        if ok:
            print("FULL MATCH:", cand, "mirror:", mirror, flush=True)
            matches.append((cand, mirror))
    except Exception as e:
        pass
    if k % 2000 == 0:
        print("...", k, "of", len(stage2), "%.0fs" % (time.time()-t0), flush=True)
print("battery matches:", len(matches))
pickle.dump(matches, open("/tmp/f1_matches.pkl", "wb"))
