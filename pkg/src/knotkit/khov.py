"""Khovanov homology over a characteristic-zero field.

Two routes:

* ``kh_brute``: the full cube of resolutions with exact rank computations;
  exponential, capped, used as the oracle.
* ``khovanov``: a scanning computation that adds one crossing at a time to
  a complex of formal crossingless tangles, delooping closed circles and
  cancelling invertible matrix entries as it goes.  Morphism entries are
  formal sums of dotted genus-zero cobordisms with rational coefficients.
  The same machinery with the relation dot^2 = 1 instead of dot^2 = 0
  computes the Lee deformation, whose quantum filtration yields the
  s-invariant.

Gradings: generator label 1 has degree +1, x has degree -1; a generator at
cube vertex v gets homological degree |v| - n_minus and quantum degree
(label degree) + |v| + n_plus - 2 n_minus.  Unknot: ranks 1 at (0, -1) and
(0, 1).  Mirroring transposes (i, j) -> (-i, -j).
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import Diagram
from .laurent import LaurentPoly
from .polyinv import CapExceeded


class BigradedRanks:
    """Finitely supported rank function (i, j) -> nonnegative integer."""

    __slots__ = ("ranks",)

    def __init__(self, ranks=None):
        self.ranks = {}
        if ranks:
            for k, v in ranks.items():
                if v:
                    self.ranks[(int(k[0]), int(k[1]))] = int(v)

    def __eq__(self, other):
        return isinstance(other, BigradedRanks) and self.ranks == other.ranks

    def __hash__(self):
        return hash(frozenset(self.ranks.items()))

    def total_rank(self):
        return sum(self.ranks.values())

    def rank(self, i, j):
        return self.ranks.get((i, j), 0)

    def mirror(self):
        return BigradedRanks({(-i, -j): r for (i, j), r in self.ranks.items()})

    def shifted(self, di, dj):
        return BigradedRanks({(i + di, j + dj): r for (i, j), r in self.ranks.items()})

    def diagonals(self):
        return {j - 2 * i for (i, j) in self.ranks}

    def width(self):
        if not self.ranks:
            raise ValueError("empty bigraded group has no width")
        return len(self.diagonals())

    def graded_euler(self) -> LaurentPoly:
        terms = {}
        for (i, j), r in self.ranks.items():
            c = r if i % 2 == 0 else -r
            terms[2 * j] = terms.get(2 * j, 0) + c
        return LaurentPoly("q", terms)

    def text(self):
        bits = ["(%d,%d):%d" % (i, j, r) for (i, j), r in sorted(self.ranks.items())]
        return "{" + ", ".join(bits) + "}"

    def __repr__(self):
        return "BigradedRanks(%s)" % self.text()


def kh_width(r: BigradedRanks) -> int:
    return r.width()


def diagonals(r: BigradedRanks):
    return r.diagonals()


def graded_euler(r: BigradedRanks) -> LaurentPoly:
    return r.graded_euler()


# -- full cube (oracle) ----------------------------------------------------------


def _resolution_circles(d: Diagram, state):
    """Union-find circles of a full resolution; returns (circle ids per edge)."""
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for ci, cr in enumerate(d.crossings):
        if (state >> ci) & 1 == 0:
            union(cr[0], cr[1])
            union(cr[2], cr[3])
        else:
            union(cr[0], cr[3])
            union(cr[1], cr[2])
    return find


def kh_brute(d: Diagram, cap=12) -> BigradedRanks:
    """Khovanov ranks over Q via the full cube; exponential oracle."""
    n = len(d.crossings)
    if n > cap:
        raise CapExceeded("kh_brute capped at %d crossings" % cap)
    n_plus, n_minus = d.positive_negative()

    # enumerate generators: (state, labeling); labeling = bitmask over circles
    # generator index per (i, j) bucket
    gens = {}  # (state) -> (circle list, edge->circle)
    edge_list = sorted(d.edges()) if d.crossings else []
    by_ij = {}
    index = {}
    for state in range(1 << n):
        find = _resolution_circles(d, state)
        circles = sorted({find(e) for e in edge_list})
        for extra in range(d.free_loops):
            circles.append(("free", extra))
        gens[state] = (circles, find)
        r = bin(state).count("1")
        i = r - n_minus
        for lab in range(1 << len(circles)):
            # bit 1 on a circle means label x (degree -1)
            deg = len(circles) - 2 * bin(lab).count("1")
            j = deg + r + n_plus - 2 * n_minus
            key = (i, j)
            index[(state, lab)] = len(by_ij.setdefault(key, []))
            by_ij[key].append((state, lab))

    # sparse differential: d(state, lab) = sum over crossings with bit 0
    def edge_sign(state, ci):
        s = 0
        for k in range(ci):
            if (state >> k) & 1:
                s += 1
        return -1 if s % 2 else 1

    columns = {}  # (i, j) -> dict[(row_gen)] per column? build per-bucket matrices
    mats = {}
    for (i, j), bucket in by_ij.items():
        target = by_ij.get((i + 1, j))
        if not target:
            continue
        rows = {g: k for k, g in enumerate(target)}
        mat = []
        for (state, lab) in bucket:
            col = {}
            circles, find = gens[state]
            cpos = {c: k for k, c in enumerate(circles)}
            for ci in range(n):
                if (state >> ci) & 1:
                    continue
                nstate = state | (1 << ci)
                ncircles, nfind = gens[nstate]
                ncpos = {c: k for k, c in enumerate(ncircles)}
                sg = edge_sign(state, ci)
                cr = d.crossings[ci]
                results = _apply_saddle(circles, cpos, ncircles, ncpos, find, nfind, lab, cr)
                for nlab, coeff in results:
                    g2 = (nstate, nlab)
                    k2 = rows[g2]
                    col[k2] = col.get(k2, 0) + sg * coeff
            mat.append(col)
        mats[(i, j)] = (mat, len(target))

    # ranks: h(i,j) = dim(i,j) - rank d_{(i,j)} - rank d_{(i-1,j)}
    ranks_of = {}
    for key, (mat, nrows) in mats.items():
        ranks_of[key] = _sparse_rank(mat, nrows)
    out = {}
    for (i, j), bucket in by_ij.items():
        dim = len(bucket)
        r1 = ranks_of.get((i, j), 0)
        r0 = ranks_of.get((i - 1, j), 0)
        h = dim - r1 - r0
        if h:
            out[(i, j)] = h
    return BigradedRanks(out)


def _apply_saddle(circles, cpos, ncircles, ncpos, find, nfind, lab, cr):
    """TQFT map for one saddle: returns [(new labeling, coeff)]."""
    # old circles touched: those containing cr[0] and cr[2]
    a, b = find(cr[0]), find(cr[2])
    # transfer labels of untouched circles through the resolution change
    out_common = {}
    for c in circles:
        if c in (a, b):
            continue
        if isinstance(c, tuple) and c and c[0] == "free":
            out_common[c] = (lab >> cpos[c]) & 1
            continue
        nc = nfind(c) if not isinstance(c, tuple) else c
        out_common[nc] = (lab >> cpos[c]) & 1
    na, nb = nfind(cr[0]), nfind(cr[2])
    if a == b:
        # split: comultiplication
        v = (lab >> cpos[a]) & 1
        results = []
        if na == nb:
            raise AssertionError("split must produce two circles")
        if v == 0:
            # 1 -> 1 x + x 1
            for assign in ((0, 1), (1, 0)):
                results.append(_pack(ncircles, ncpos, out_common, {na: assign[0], nb: assign[1]}))
        else:
            # x -> x x
            results.append(_pack(ncircles, ncpos, out_common, {na: 1, nb: 1}))
        return [(r, 1) for r in results]
    else:
        # merge: multiplication
        v1 = (lab >> cpos[a]) & 1
        v2 = (lab >> cpos[b]) & 1
        if na != nb:
            raise AssertionError("merge must produce one circle")
        if v1 and v2:
            return []
        return [(_pack(ncircles, ncpos, out_common, {na: v1 | v2}), 1)]


def _pack(ncircles, ncpos, common, touched):
    lab = 0
    for c in ncircles:
        if c in touched:
            v = touched[c]
        elif c in common:
            v = common[c]
        else:
            raise AssertionError("circle %r unaccounted" % (c,))
        if v:
            lab |= 1 << ncpos[c]
    return lab


def _sparse_rank(cols, nrows):
    """Rank over Q of a matrix given as list of {row: int} columns."""
    pivots = {}  # row -> reduced column (dict row->Fraction)
    rank = 0
    for col in cols:
        cur = {r: Fraction(v) for r, v in col.items() if v}
        while cur:
            r = min(cur)
            if r in pivots:
                piv = pivots[r]
                factor = cur[r] / piv[r]
                for rr, vv in piv.items():
                    nv = cur.get(rr, Fraction(0)) - factor * vv
                    if nv:
                        cur[rr] = nv
                    else:
                        cur.pop(rr, None)
            else:
                pivots[r] = cur
                rank += 1
                break
        # zero column: contributes nothing
    return rank


# -- scanning computation -----------------------------------------------------
#
# The complex of the scanned part of the diagram is held as formal objects
# (crossingless matching of the open edge labels, closed-circle tokens,
# quantum shift, homological degree) with differential entries that are
# Fraction-weighted formal sums of dotted genus-zero cobordisms.  Crossings
# are glued in one at a time; closed circles are delooped away and
# invertible entries cancelled immediately, which keeps the complex small
# for diagrams with long twist regions.  dot^2 = 0 gives the Khovanov
# theory; dot^2 = 1 gives the Lee deformation.
#
# Cycle ids inside a cobordism between objects (M1,C1) -> (M2,C2):
# ("m", p) for the alternating-arc cycle with minimal boundary token p,
# ("s", tok) for a source circle, ("t", tok) for a target circle.
# A cobordism key is (partition, dotted): partition is a frozenset of
# frozensets of cycle ids, dotted the frozenset of min-ids of the dotted
# components.


class _Obj:
    __slots__ = ("matching", "circles", "q", "h")

    def __init__(self, matching, circles, q, h):
        self.matching = matching  # frozenset of 2-frozensets of edge labels
        self.circles = circles  # frozenset of circle tokens
        self.q = q
        self.h = h


def _cycles(m1, c1, m2, c2):
    """cycle-id lookup for a cobordism; keys: raw tokens, ('s',tok), ('t',tok)."""
    nbr1 = {}
    nbr2 = {}
    for arc in m1:
        a, b = tuple(arc)
        nbr1[a] = b
        nbr1[b] = a
    for arc in m2:
        a, b = tuple(arc)
        nbr2[a] = b
        nbr2[b] = a
    cyc = {}
    for start in nbr1:
        if start in cyc:
            continue
        members = [start]
        p = nbr1[start]
        use1 = False
        while p != start:
            members.append(p)
            p = (nbr1 if use1 else nbr2)[p]
            use1 = not use1
        cid = ("m", min(members))
        for t in members:
            cyc[t] = cid
    for tok in c1:
        cyc[("s", tok)] = ("s", tok)
    for tok in c2:
        cyc[("t", tok)] = ("t", tok)
    return cyc


def _identity_cob(ob):
    cyc = _cycles(ob.matching, ob.circles, ob.matching, ob.circles)
    part = set()
    for arc in ob.matching:
        part.add(frozenset([cyc[min(arc)]]))
    for tok in ob.circles:
        part.add(frozenset([("s", tok), ("t", tok)]))
    return (frozenset(part), frozenset())


class _UF:
    __slots__ = ("parent",)

    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        r = x
        while p.get(r, r) != r:
            r = p[r]
        while p.get(x, x) != x:
            p[x], x = r, p[x]
        return r

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


class _Complex:
    """Chain complex of formal matchings with cobordism differential."""

    def __init__(self, dot_square=0):
        self.objs = {}
        self.out = {}
        self.inn = {}
        self.next_id = 0
        self.next_token = 0
        self.dot_square = dot_square

    def fresh_token(self):
        self.next_token += 1
        return ("c", self.next_token)

    def add_obj(self, ob):
        oid = self.next_id
        self.next_id += 1
        self.objs[oid] = ob
        self.out[oid] = {}
        self.inn[oid] = {}
        return oid

    def add_entry(self, src, tgt, cob):
        cob = {k: v for k, v in cob.items() if v}
        if not cob:
            return
        cur = self.out[src].get(tgt)
        if cur is None:
            self.out[src][tgt] = cob
            self.inn[tgt][src] = cob
        else:
            for k, v in cob.items():
                nv = cur.get(k, 0) + v
                if nv:
                    cur[k] = nv
                else:
                    cur.pop(k, None)
            if not cur:
                del self.out[src][tgt]
                del self.inn[tgt][src]

    def remove_obj(self, oid):
        for tgt in list(self.out[oid]):
            del self.inn[tgt][oid]
        for src in list(self.inn[oid]):
            del self.out[src][oid]
        del self.out[oid]
        del self.inn[oid]
        del self.objs[oid]

    # -- composition of cobordisms ------------------------------------------

    def _finish_components(self, merged, coeff):
        """Normalize merged components; returns (key, coeff) or None."""
        new_comps = []
        for rec in merged.values():
            k_ab = len(rec["ab"])
            genus2 = 2 - k_ab - rec["chi"]
            if genus2 < 0 or genus2 % 2:
                raise AssertionError("impossible euler characteristic")
            g_extra = genus2 // 2
            dots = rec["dots"] + g_extra
            coeff *= 2 ** g_extra
            if self.dot_square == 1:
                dots %= 2
            elif dots >= 2:
                return None
            if k_ab == 0:
                if dots != 1:
                    return None
            else:
                new_comps.append((frozenset(rec["ab"]), dots))
        part = frozenset(c for c, _dd in new_comps)
        dotted = frozenset(min(c) for c, dd in new_comps if dd)
        return (part, dotted), coeff

    def compose(self, obA, obM, obB, f, g):
        """g after f, where f: A -> M and g: M -> B."""
        cycAM = _cycles(obA.matching, obA.circles, obM.matching, obM.circles)
        cycMB = _cycles(obM.matching, obM.circles, obB.matching, obB.circles)
        cycAB = _cycles(obA.matching, obA.circles, obB.matching, obB.circles)

        out = {}
        for (part_f, dots_f), coef_f in f.items():
            comp_f = {}
            for comp in part_f:
                cid_min = min(comp)
                for cid in comp:
                    comp_f[cid] = cid_min
            f_dotted = set(dots_f)
            for (part_g, dots_g), coef_g in g.items():
                comp_g = {}
                for comp in part_g:
                    cid_min = min(comp)
                    for cid in comp:
                        comp_g[cid] = cid_min
                uf = _UF()
                chi_add = {}
                # glue along every arc (chi 1) and circle (chi 0) of M
                for arc in obM.matching:
                    p = min(arc)
                    nf = ("f", comp_f[cycAM[p]])
                    ng = ("g", comp_g[cycMB[p]])
                    uf.union(nf, ng)
                    chi_add[uf.find(nf)] = None  # ensure presence
                glue_arcs = {}
                for arc in obM.matching:
                    p = min(arc)
                    root = uf.find(("f", comp_f[cycAM[p]]))
                    glue_arcs[root] = glue_arcs.get(root, 0) + 1
                for tok in obM.circles:
                    nf = ("f", comp_f[("t", tok)])
                    ng = ("g", comp_g[("s", tok)])
                    uf.union(nf, ng)

                merged = {}

                def rec_of(node, ncycles, ndots):
                    root = uf.find(node)
                    rec = merged.setdefault(root, {"chi": 0, "dots": 0, "ab": set()})
                    rec["chi"] += 2 - ncycles
                    rec["dots"] += ndots
                    return rec

                for comp in part_f:
                    rec_of(("f", min(comp)), len(comp), 1 if min(comp) in dots_f else 0)
                for comp in part_g:
                    rec_of(("g", min(comp)), len(comp), 1 if min(comp) in dots_g else 0)
                for root, cnt in glue_arcs.items():
                    merged[uf.find(root)]["chi"] -= cnt

                # assign composite boundary cycles
                seen_ab = set()
                for key_tok, cid in cycAB.items():
                    if cid in seen_ab:
                        continue
                    seen_ab.add(cid)
                    if isinstance(key_tok, tuple) and len(key_tok) == 2 and key_tok[0] == "s":
                        node = ("f", comp_f[key_tok])
                    elif isinstance(key_tok, tuple) and len(key_tok) == 2 and key_tok[0] == "t":
                        node = ("g", comp_g[key_tok])
                    else:
                        node = ("f", comp_f[cycAM[key_tok]])
                    merged[uf.find(node)]["ab"].add(cid)

                res = self._finish_components(merged, coef_f * coef_g)
                if res is None:
                    continue
                key, coeff = res
                nv = out.get(key, 0) + coeff
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    # -- gluing a crossing ----------------------------------------------------

    def _build_extension(self, new1, new2, node_of, node_chi, node_dots, weld_nodes, coeff):
        """Cobordism for an extended entry.

        node_of: maps a representative token (or ('s'/'t', tok) circle id) to
        a surface node; node_chi/node_dots: per-node Euler characteristic and
        dot count; weld_nodes: list of node pairs, each gluing along one
        vertical arc (chi -1).
        """
        uf = _UF()
        for n1, n2 in weld_nodes:
            uf.union(n1, n2)
        merged = {}
        for node, chi in node_chi.items():
            root = uf.find(node)
            rec = merged.setdefault(root, {"chi": 0, "dots": 0, "ab": set()})
            rec["chi"] += chi
            rec["dots"] += node_dots.get(node, 0)
        for n1, n2 in weld_nodes:
            merged[uf.find(n1)]["chi"] -= 1
        cyc = _cycles(new1.matching, new1.circles, new2.matching, new2.circles)
        seen = set()
        for tok, cid in cyc.items():
            if cid in seen:
                continue
            seen.add(cid)
            merged[uf.find(node_of(tok))]["ab"].add(cid)
        res = self._finish_components(merged, coeff)
        if res is None:
            return {}
        key, c = res
        return {key: c}

    def glue_crossing(self, cr, open_edges):
        """Tensor the complex with one crossing's two-object complex."""
        from collections import Counter

        counts = Counter(cr)
        toks = []
        welds_raw = []  # pairs of raw tokens
        seen_twice = {}
        for s in range(4):
            lbl = cr[s]
            if counts[lbl] == 2 and lbl not in open_edges:
                if lbl in seen_twice:
                    t = self._fresh_int()
                    welds_raw.append((seen_twice[lbl], t))
                    toks.append(t)
                else:
                    t = self._fresh_int()
                    seen_twice[lbl] = t
                    toks.append(t)
            elif lbl in open_edges:
                t = self._fresh_int()
                welds_raw.append((lbl, t))
                toks.append(t)
            else:
                toks.append(lbl)  # future open edge keeps its label
        sm = {
            "A": [(toks[0], toks[1]), (toks[2], toks[3])],
            "B": [(toks[0], toks[3]), (toks[1], toks[2])],
        }

        old_objs = dict(self.objs)
        old_out = {k: dict(v) for k, v in self.out.items()}

        # rebuild: for each old object two new ones, with glue data
        glue_info = {}
        mapping = {}
        for oid, ob in old_objs.items():
            for kind in ("A", "B"):
                nm, ncirc, circ_rep, arc_of_tok = self._glue_matching(ob, sm[kind], welds_raw)
                nq = ob.q + (1 if kind == "B" else 0)
                nh = ob.h + (1 if kind == "B" else 0)
                nid = self.add_obj(_Obj(nm, ncirc, nq, nh))
                mapping[(oid, kind)] = nid
                glue_info[(oid, kind)] = (circ_rep, arc_of_tok)

        # old entries extended over identity strips of the smoothing
        for src, row in old_out.items():
            for tgt, cob in row.items():
                ob1, ob2 = old_objs[src], old_objs[tgt]
                fcyc = _cycles(ob1.matching, ob1.circles, ob2.matching, ob2.circles)
                for kind in ("A", "B"):
                    n1 = mapping[(src, kind)]
                    n2 = mapping[(tgt, kind)]
                    new1, new2 = self.objs[n1], self.objs[n2]
                    rep1, _ = glue_info[(src, kind)]
                    rep2, _ = glue_info[(tgt, kind)]
                    arcs = sm[kind]
                    arc_idx = {}
                    for k, (u, v) in enumerate(arcs):
                        arc_idx[u] = k
                        arc_idx[v] = k
                    total = {}
                    for key, coef in cob.items():
                        part_f, dots_f = key
                        comp_min = {}
                        for comp in part_f:
                            m = min(comp)
                            for cid in comp:
                                comp_min[cid] = m
                        node_chi = {}
                        node_dots = {}
                        for comp in part_f:
                            m = min(comp)
                            node_chi[("f", m)] = 2 - len(comp)
                            node_dots[("f", m)] = 1 if m in dots_f else 0
                        for k in range(len(arcs)):
                            node_chi[("st", k)] = 1

                        def node_of(tok, comp_min=comp_min, fcyc=fcyc, arc_idx=arc_idx,
                                    rep1=rep1, rep2=rep2, ob1=ob1, ob2=ob2):
                            if isinstance(tok, tuple) and tok and tok[0] in ("s", "t"):
                                side, ct = tok
                                old_circles = ob1.circles if side == "s" else ob2.circles
                                if ct in old_circles:
                                    return ("f", comp_min[tok])
                                rep = (rep1 if side == "s" else rep2)[ct]
                                return node_of(rep)
                            if tok in fcyc:
                                return ("f", comp_min[fcyc[tok]])
                            return ("st", arc_idx[tok])

                        weld_nodes = []
                        for (x, y) in welds_raw:
                            weld_nodes.append((node_of(x), node_of(y)))
                        got = self._build_extension(new1, new2, node_of, node_chi, node_dots,
                                                    weld_nodes, coef)
                        for kk, vv in got.items():
                            nv = total.get(kk, 0) + vv
                            if nv:
                                total[kk] = nv
                            else:
                                total.pop(kk, None)
                    self.add_entry(n1, n2, total)

        # saddle entries id_O (x) (A -> B), with Koszul sign (-1)^h
        for oid, ob in old_objs.items():
            n1 = mapping[(oid, "A")]
            n2 = mapping[(oid, "B")]
            new1, new2 = self.objs[n1], self.objs[n2]
            rep1, _ = glue_info[(oid, "A")]
            rep2, _ = glue_info[(oid, "B")]
            arcsA, arcsB = sm["A"], sm["B"]
            arc_node = {}
            for arc in ob.matching:
                m = min(arc)
                for t in arc:
                    arc_node[t] = ("arc", m)
            node_chi = {("sdl", 0): 1}
            node_dots = {}
            for arc in ob.matching:
                node_chi[("arc", min(arc))] = 1
            for tok in ob.circles:
                node_chi[("tube", tok)] = 0
            sm_toks = {t for pair in arcsA for t in pair}

            def node_of(tok, arc_node=arc_node, sm_toks=sm_toks, rep1=rep1, rep2=rep2, ob=ob):
                if isinstance(tok, tuple) and tok and tok[0] in ("s", "t"):
                    side, ct = tok
                    if ct in ob.circles:
                        return ("tube", ct)
                    rep = (rep1 if side == "s" else rep2)[ct]
                    return node_of(rep)
                if tok in arc_node:
                    return arc_node[tok]
                return ("sdl", 0)

            weld_nodes = [(node_of(x), node_of(y)) for (x, y) in welds_raw]
            cob = self._build_extension(new1, new2, node_of, node_chi, node_dots,
                                        weld_nodes, Fraction(1 if ob.h % 2 == 0 else -1))
            self.add_entry(n1, n2, cob)

        for oid in old_objs:
            self.remove_obj(oid)

    def _fresh_int(self):
        self.next_token += 1
        return 10 ** 9 + self.next_token

    def _glue_matching(self, ob, sm_arcs, welds_raw):
        """Glue smoothing arcs onto an object; returns
        (matching, circles, new-circle reps, arc index per sm token)."""
        uf = _UF()
        for x, y in welds_raw:
            uf.union(x, y)
        segs = [tuple(arc) for arc in ob.matching] + list(sm_arcs)
        adj = {}
        for si, (u, v) in enumerate(segs):
            ru, rv = uf.find(u), uf.find(v)
            adj.setdefault(ru, []).append((si, rv, u))
            adj.setdefault(rv, []).append((si, ru, v))
        new_matching = set()
        new_circles = set(ob.circles)
        circ_rep = {}
        seen_seg = set()
        # open paths start at degree-1 classes
        for node, nbrs in adj.items():
            if len(nbrs) != 1:
                continue
            si, nxt, orig = nbrs[0]
            if si in seen_seg:
                continue
            start_tok = node
            seen_seg.add(si)
            cur = nxt
            prev_seg = si
            while len(adj[cur]) == 2:
                a, b = adj[cur]
                si2, nxt2, _orig2 = a if a[0] != prev_seg else b
                seen_seg.add(si2)
                cur, prev_seg = nxt2, si2
            new_matching.add(frozenset([start_tok, cur]))
        # remaining segments form closed circles
        for si, (u, v) in enumerate(segs):
            if si in seen_seg:
                continue
            tok = self.fresh_token()[1] + 2 * 10 ** 9  # int token
            members = []
            cur_seg = si
            cur = uf.find(u)
            while cur_seg not in seen_seg:
                seen_seg.add(cur_seg)
                members.append(segs[cur_seg][0])
                a, b = adj[cur]
                si2, nxt2, _o = a if a[0] != cur_seg else b
                cur = nxt2
                cur_seg = si2
            new_circles.add(tok)
            circ_rep[tok] = members[0]
        arc_idx = {}
        for k, (u, v) in enumerate(sm_arcs):
            arc_idx[u] = k
            arc_idx[v] = k
        return frozenset(new_matching), frozenset(new_circles), circ_rep, arc_idx

    # -- delooping and cancellation --------------------------------------------

    def _deloop_maps(self, oid, tok):
        """Replace object oid (containing circle tok) by q+1 / q-1 copies."""
        ob = self.objs[oid]
        rest = frozenset(t for t in ob.circles if t != tok)
        plus = self.add_obj(_Obj(ob.matching, rest, ob.q + 1, ob.h))
        minus = self.add_obj(_Obj(ob.matching, rest, ob.q - 1, ob.h))

        def tube_part(side_tok_key, dotted_cap):
            part = set()
            for arc in ob.matching:
                part.add(frozenset([("m", min(arc))]))
            for t in rest:
                part.add(frozenset([("s", t), ("t", t)]))
            part.add(frozenset([side_tok_key]))
            dots = frozenset([side_tok_key]) if dotted_cap else frozenset()
            return {(frozenset(part), dots): Fraction(1)}

        phi_plus = tube_part(("s", tok), True)    # O -> O+, dotted death
        phi_minus = tube_part(("s", tok), False)  # O -> O-, death
        psi_plus = tube_part(("t", tok), False)   # O+ -> O, birth
        psi_minus = tube_part(("t", tok), True)   # O- -> O, dotted birth

        ob_plus, ob_minus = self.objs[plus], self.objs[minus]
        for src, cob in list(self.inn[oid].items()):
            ob_src = self.objs[src]
            self.add_entry(src, plus, self.compose(ob_src, ob, ob_plus, cob, phi_plus))
            self.add_entry(src, minus, self.compose(ob_src, ob, ob_minus, cob, phi_minus))
        for tgt, cob in list(self.out[oid].items()):
            ob_tgt = self.objs[tgt]
            self.add_entry(plus, tgt, self.compose(ob_plus, ob, ob_tgt, psi_plus, cob))
            self.add_entry(minus, tgt, self.compose(ob_minus, ob, ob_tgt, psi_minus, cob))
        self.remove_obj(oid)

    def deloop_all(self):
        again = True
        while again:
            again = False
            for oid in list(self.objs):
                if oid not in self.objs:
                    continue
                ob = self.objs[oid]
                if ob.circles:
                    self._deloop_maps(oid, next(iter(ob.circles)))
                    again = True

    def _find_pivot(self):
        best = None
        for src, row in self.out.items():
            ob1 = self.objs[src]
            for tgt, cob in row.items():
                if len(cob) != 1:
                    continue
                ob2 = self.objs[tgt]
                if ob1.matching != ob2.matching or ob1.circles != ob2.circles:
                    continue
                if self.dot_square == 1 and ob1.q != ob2.q:
                    continue
                (key, c), = cob.items()
                if key != _identity_cob(ob1):
                    continue
                if abs(c) == 1:
                    return src, tgt, c
                if best is None:
                    best = (src, tgt, c)
        return best

    def cancel_all(self):
        while True:
            piv = self._find_pivot()
            if piv is None:
                return
            x, y, c = piv
            obx, oby = self.objs[x], self.objs[y]
            ins = [(a, dict(cob)) for a, cob in self.inn[y].items() if a != x]
            outs = [(b, dict(cob)) for b, cob in self.out[x].items() if b != y]
            for a, g in ins:
                ob_a = self.objs[a]
                for b, h in outs:
                    ob_b = self.objs[b]
                    prod = self.compose(ob_a, obx, ob_b, g, h)
                    scaled = {k: -v / c for k, v in prod.items()}
                    self.add_entry(a, b, scaled)
            self.remove_obj(x)
            self.remove_obj(y)

    def size(self):
        return len(self.objs)


def _scan_order(d: Diagram):
    """Crossing order keeping the open boundary small (greedy tangle sweep)."""
    n = len(d.crossings)
    if n == 0:
        return []
    remaining = set(range(n))
    order = []
    open_edges = set()

    def boundary_delta(ci):
        cr = d.crossings[ci]
        from collections import Counter
        cnt = Counter(cr)
        closed = sum(1 for e, k in cnt.items() if e in open_edges)
        newly = sum(1 for e, k in cnt.items() if e not in open_edges and k == 1)
        return newly - closed, -closed

    while remaining:
        if not open_edges:
            ci = min(remaining)
        else:
            ci = min(remaining, key=lambda c: (boundary_delta(c), c))
        order.append(ci)
        remaining.discard(ci)
        from collections import Counter
        cnt = Counter(d.crossings[ci])
        for e, k in cnt.items():
            if e in open_edges:
                open_edges.discard(e)
            elif k == 1:
                open_edges.add(e)
    return order


def _scan(d: Diagram, dot_square, progress=None):
    comp = _Complex(dot_square)
    loops = frozenset(comp.fresh_token()[1] + 2 * 10 ** 9 for _ in range(d.free_loops))
    comp.add_obj(_Obj(frozenset(), loops, 0, 0))
    comp.deloop_all()
    open_edges = set()
    from collections import Counter
    for ci in _scan_order(d):
        cr = d.crossings[ci]
        comp.glue_crossing(cr, open_edges)
        cnt = Counter(cr)
        for e, k in cnt.items():
            if e in open_edges:
                open_edges.discard(e)
            elif k == 1:
                open_edges.add(e)
        comp.deloop_all()
        comp.cancel_all()
        if progress is not None:
            progress(ci, comp.size())
    return comp


def khovanov(d: Diagram, cap=40) -> BigradedRanks:
    """Khovanov ranks over a characteristic-zero field via scanning."""
    from .diagram import simplify as _simplify

    dd, _flag = _simplify(d)
    if len(dd.crossings) > cap:
        raise CapExceeded("khovanov cap %d exceeded (%d crossings)" % (cap, len(dd.crossings)))
    n_plus, n_minus = dd.positive_negative()
    comp = _scan(dd, 0)
    # over a field every invertible entry cancels; nothing may remain
    if any(comp.out[s] for s in comp.out):
        raise AssertionError("scan left uncancelled differential entries")
    out = {}
    for ob in comp.objs.values():
        i = ob.h - n_minus
        j = ob.q + n_plus - 2 * n_minus
        out[(i, j)] = out.get((i, j), 0) + 1
    return BigradedRanks(out)


# -- Lee deformation and the s-invariant ------------------------------------------


def _lee_complex(d: Diagram):
    """Scan the Lee complex; returns (generators [(h, q)], entries, n+, n-)."""
    from .diagram import simplify as _simplify

    dd, _flag = _simplify(d)
    n_plus, n_minus = dd.positive_negative()
    comp = _scan(dd, 1)
    ids = sorted(comp.objs)
    pos = {oid: k for k, oid in enumerate(ids)}
    gens = [(comp.objs[oid].h, comp.objs[oid].q) for oid in ids]
    entries = {}
    for src, row in comp.out.items():
        for tgt, cob in row.items():
            if not cob:
                continue
            (key, c), = cob.items()
            if key != (frozenset(), frozenset()):
                raise AssertionError("nonscalar entry in final Lee complex")
            entries[(pos[src], pos[tgt])] = c
    return gens, entries, n_plus, n_minus


def s_invariant(d: Diagram, cap=36) -> int:
    """Rasmussen s-invariant of a knot from the Lee filtration."""
    if d.n_components() != 1:
        raise ValueError("s-invariant needs a one-component diagram")
    from .diagram import simplify as _simplify
    dd, _flag = _simplify(d)
    if len(dd.crossings) > cap:
        raise CapExceeded("s_invariant cap %d exceeded" % cap)
    gens, entries, n_plus, n_minus = _lee_complex(dd)
    hs = [h - n_minus for (h, q) in gens]
    qs = [q + n_plus - 2 * n_minus for (h, q) in gens]
    n = len(gens)

    # homology in homological degree 0 with the quantum filtration
    zero = [k for k in range(n) if hs[k] == 0]
    prev = [k for k in range(n) if hs[k] == -1]

    def dmatrix(cols_idx, rows_idx):
        rows = {k: i for i, k in enumerate(rows_idx)}
        mat = []
        for k in cols_idx:
            col = {}
            for (a, b), c in entries.items():
                if a == k and b in rows:
                    col[rows[b]] = c
            mat.append(col)
        return mat

    def rank_of(mat):
        return _sparse_rank(mat, 0)

    levels = sorted({qs[k] for k in zero}, reverse=True)
    dims = {}
    all_rows = list(range(n))
    b_cols = dmatrix(prev, all_rows)  # image of d^{-1}
    rank_b = rank_of(b_cols)
    for s in levels:
        sub = [k for k in zero if qs[k] >= s]
        # Z_s: kernel of d restricted to filtration-level generators
        mat = dmatrix(sub, all_rows)
        rank_d = rank_of(mat)
        z_dim = len(sub) - rank_d
        # dim(Z_s + B) = dim span(columns of B and kernel basis of sub)...
        # easier: dim F_s H0 = dim Z_s - dim(Z_s cap B)
        # compute via rank([B | Zbasis]) = rank_b + dim Z_s - dim(Z_s cap B)
        zbasis = _kernel_basis(mat, len(sub))
        cols = [dict(col) for col in b_cols]
        for vec in zbasis:
            col = {}
            for i, k in enumerate(sub):
                if vec[i]:
                    col[k] = vec[i]
            cols.append(col)
        r = rank_of(cols)
        dims[s] = z_dim - (rank_b + z_dim - r)
    jumps = []
    seen = 0
    for s in levels:
        if dims[s] > seen:
            jumps.extend([s] * (dims[s] - seen))
            seen = dims[s]
    if seen != 2 or len(jumps) != 2 or jumps[0] - jumps[1] != 2:
        raise AssertionError("Lee homology filtration not of knot type: %r" % (jumps,))
    return (jumps[0] + jumps[1]) // 2


def _kernel_basis(cols, ncols):
    """Kernel basis of a sparse column matrix over Q."""
    # augment: track combination rows below
    aug = []
    for i, col in enumerate(cols):
        c = {r: Fraction(v) for r, v in col.items()}
        c[("aug", i)] = Fraction(1)
        aug.append(c)
    pivots = {}
    basis = []
    for col in aug:
        cur = dict(col)
        while True:
            rows = [r for r in cur if not (isinstance(r, tuple) and r and r[0] == "aug")]
            if not rows:
                vec = [Fraction(0)] * ncols
                for r, v in cur.items():
                    vec[r[1]] = v
                basis.append(vec)
                break
            r = min(rows)
            if r in pivots:
                piv = pivots[r]
                factor = cur[r] / piv[r]
                for rr, vv in piv.items():
                    nv = cur.get(rr, Fraction(0)) - factor * vv
                    if nv:
                        cur[rr] = nv
                    else:
                        cur.pop(rr, None)
            else:
                pivots[r] = cur
                break
    return basis
