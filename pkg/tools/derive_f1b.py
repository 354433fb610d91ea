"""Solve the determinant law for a Montesinos-chain ansatz of the first
pretzel family's quotient tangle, then battery-check realizations.

Chain: N(hsum(Xcol, Ycol, fixed...)) with column fractions:
  Xcol: (a x + b)/(c x + d),  det +-1
  Ycol: (alpha y + beta)/(gamma y + delta), det +-1, y = 1/q
  fixed columns combined: n0/d0
Determinant law: d0(ax+b)(gamma+delta q) + d0(alpha+beta q)(cx+d)
               + n0(cx+d)(gamma+delta q) = sigma (4q + 8 - x)  identically.
"""
import itertools, math, time

sols = []
t0 = time.time()
rng = range(-9, 10)
for alpha, beta, gamma, delta in itertools.product(rng, repeat=4):
    dm = alpha*delta - beta*gamma
    if dm not in (1, -1):
        continue
    for d0 in range(1, 16):
        for n0 in range(-24, 25):
            if math.gcd(abs(n0), d0) != 1 and n0 != 0:
                continue
            A11, A12 = d0*delta, d0*beta + n0*delta
            A21, A22 = d0*gamma, d0*alpha + n0*gamma
            det = A11*A22 - A12*A21
            if det == 0:
                continue
            for sigma in (1, -1):
                # (1) A11 a + A12 c = 0 ; (2) A21 a + A22 c = -sigma
                a_num = (0*A22 - A12*(-sigma)); c_num = (A11*(-sigma) - 0*A21)
                if a_num % det or c_num % det:
                    continue
                a, c = a_num//det, c_num//det
                # (3) A11 b + A12 d = 4 sigma ; (4) A21 b + A22 d = 8 sigma
                b_num = (4*sigma*A22 - A12*8*sigma); d_num = (A11*8*sigma - 4*sigma*A21)
                if b_num % det or d_num % det:
                    continue
                b, d = b_num//det, d_num//det
                if a*d - b*c in (1, -1):
                    sols.append(((a,b,c,d), (alpha,beta,gamma,delta), (n0,d0), sigma))
print("solutions:", len(sols), "in %.1fs" % (time.time()-t0))
# canonicalize: the X/Y columns can absorb sign flips (negating num&den)
canon = {}
for s in sols:
    (a,b,c,d), (al,be,ga,de), (n0,d0), sigma = s
    key = ((a,b,c,d) if (c,d) > (0,0) or (c > 0 or (c==0 and d>0)) else (-a,-b,-c,-d),
           (al,be,ga,de) if (ga > 0 or (ga==0 and de>0)) else (-al,-be,-ga,-de),
           (n0,d0))
    canon.setdefault(key, s)
print("canonical classes:", len(canon))
import collections
by_fixed = collections.Counter(k[2] for k in canon)
print("by fixed fraction:", dict(by_fixed))
for k in sorted(canon)[:40]:
    print(k)
