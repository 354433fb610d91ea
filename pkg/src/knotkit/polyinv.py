"""Polynomial invariants: Kauffman bracket, Jones, determinant, breadth.

Conventions (see docs/conventions.md):

* bracket variable A, delta = -A^2 - A^-2, <unknot> = 1
* V(L) = (-A^3)^(-w) <L> with A = t^(-1/4); stored in half-powers of t
* right-handed trefoil: V = -t^4 + t^3 + t
* determinant via the Goeritz matrix of a checkerboard surface

The skein-tree Jones and the 2^n state sum are independent routes and are
tested against each other on the whole small-diagram corpus.
"""

from __future__ import annotations

from .diagram import Diagram
from .laurent import LaurentPoly
from .tangle import _fuse, orient_closed


class CapExceeded(Exception):
    """A configured crossing-count cap was exceeded."""


# -- crossing smoothing ----------------------------------------------------------


def smooth(d: Diagram, ci: int, kind: str) -> Diagram:
    """Replace crossing ci by its A- or B-smoothing (unoriented surgery).

    A joins slots (0,1) and (2,3); B joins slots (0,3) and (1,2).  The result
    is reoriented from scratch.
    """
    cr = d.crossings[ci]
    if kind == "A":
        joins = [(cr[0], cr[1]), (cr[2], cr[3])]
    elif kind == "B":
        joins = [(cr[0], cr[3]), (cr[1], cr[2])]
    else:
        raise ValueError("smoothing kind must be 'A' or 'B'")
    rest = [c for i, c in enumerate(d.crossings) if i != ci]
    crossings, _open, loops = _fuse(rest, d.free_loops, joins, [])
    return orient_closed(crossings, loops)


def oriented_smoothing_kind(sign: int) -> str:
    """The Seifert smoothing: A for positive crossings, B for negative."""
    return "A" if sign == 1 else "B"


# -- Kauffman bracket ------------------------------------------------------------

_A = LaurentPoly.monomial(1, 2, "A")
_A_INV = LaurentPoly.monomial(1, -2, "A")
_DELTA = LaurentPoly("A", {4: -1, -4: -1})
_MINUS_A3 = LaurentPoly("A", {6: -1})
_MINUS_A_MINUS3 = LaurentPoly("A", {-6: -1})


def _kink_factor(sign: int) -> LaurentPoly:
    # removing a positive curl multiplies the bracket by -A^3
    return _MINUS_A3 if sign == 1 else _MINUS_A_MINUS3


def _reduce_for_bracket(d: Diagram):
    """Strip R1 kinks (tracking unit factors) and reducible R2 bigons."""
    factor = LaurentPoly.const(1, "A")
    from . import diagram as _dg

    current = d
    while True:
        # R1 first, with its bracket factor
        found = False
        for ci, cr in enumerate(current.crossings):
            for s in range(4):
                if cr[s] == cr[(s + 1) % 4]:
                    factor = factor * _kink_factor(current.signs[ci])
                    other = (cr[(s + 2) % 4], cr[(s + 3) % 4])
                    current = _dg._merge_and_rebuild(current, {ci}, [other])
                    found = True
                    break
            if found:
                break
        if found:
            continue
        nxt = _dg._try_r2(current)
        if nxt is None:
            return current, factor
        current = nxt


def _pick_skein_crossing(d: Diagram) -> int:
    """Prefer a crossing on a small face; ties broken by index."""
    best = 0
    best_size = None
    try:
        faces = d.faces()
    except ValueError:
        return 0
    size_at = {}
    for face in faces:
        for (ci, _slot) in face:
            size_at[ci] = min(size_at.get(ci, 99), len(face))
    for ci in range(len(d.crossings)):
        sz = size_at.get(ci, 99)
        if best_size is None or sz < best_size:
            best, best_size = ci, sz
    return best


def bracket(d: Diagram, cache=None, cap=60) -> LaurentPoly:
    """Kauffman bracket, normalized so the 1-loop diagram gives 1."""
    if d.n_components() == 0:
        raise ValueError("bracket of the empty diagram is not defined")
    if cache is None:
        cache = {}

    def go(dd: Diagram) -> LaurentPoly:
        dd, factor = _reduce_for_bracket(dd)
        if not dd.crossings:
            return factor * (_DELTA ** (dd.free_loops - 1))
        if len(dd.crossings) > cap:
            raise CapExceeded("bracket cap %d exceeded (%d crossings)" % (cap, len(dd.crossings)))
        key = dd.canonical_key()
        hit = cache.get(key)
        if hit is None:
            ci = _pick_skein_crossing(dd)
            hit = _A * go(smooth(dd, ci, "A")) + _A_INV * go(smooth(dd, ci, "B"))
            cache[key] = hit
        return factor * hit

    return go(d)


def bracket_statesum(d: Diagram) -> LaurentPoly:
    """Full 2^n state sum for the bracket; independent oracle."""
    n = len(d.crossings)
    if n > 20:
        raise CapExceeded("state sum capped at 20 crossings")
    if d.n_components() == 0:
        raise ValueError("bracket of the empty diagram is not defined")
    total = LaurentPoly("A")
    for state in range(1 << n):
        joins = []
        a_count = 0
        for ci, cr in enumerate(d.crossings):
            if (state >> ci) & 1 == 0:
                a_count += 1
                joins.append((cr[0], cr[1]))
                joins.append((cr[2], cr[3]))
            else:
                joins.append((cr[0], cr[3]))
                joins.append((cr[1], cr[2]))
        circles = _count_circles(joins) + d.free_loops
        term = LaurentPoly.monomial(1, 2 * (2 * a_count - n), "A") * (_DELTA ** (circles - 1))
        total = total + term
    return total


def _count_circles(joins):
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != x:
            parent[x], x = root, parent[x]
        return root

    for x, y in joins:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    roots = {find(x) for pair in joins for x in pair}
    return len(roots)


def _jones_from_bracket(br: LaurentPoly, writhe: int) -> LaurentPoly:
    corr = (_MINUS_A3 ** (-writhe)) if writhe <= 0 else (_MINUS_A_MINUS3 ** writhe)
    # (-A^3)^(-w): for w>0 use (-A^-3)^w
    poly = br * corr
    terms = {}
    for e, c in poly.terms.items():
        # A-exponent e/2 (half-units); t-exponent = -(e/2)/4 -> half-units of t: -e/4
        if e % 4:
            raise ValueError("bracket exponent not divisible by 4 after writhe correction")
        terms[-e // 4] = c
    return LaurentPoly("t", terms)


def jones(d: Diagram, cache=None, cap=60) -> LaurentPoly:
    """Jones polynomial via the memoized skein tree; unknot -> 1."""
    return _jones_from_bracket(bracket(d, cache=cache, cap=cap), d.writhe())


def jones_brute(d: Diagram, cap=16) -> LaurentPoly:
    """Jones polynomial via the full state sum (oracle route)."""
    if len(d.crossings) > cap:
        raise CapExceeded("jones_brute capped at %d crossings" % cap)
    return _jones_from_bracket(bracket_statesum(d), d.writhe())


def breadth(p: LaurentPoly):
    """Breadth in whole variable units."""
    return p.breadth()


# -- Goeritz determinant -----------------------------------------------------------


def _checkerboard(d: Diagram):
    """2-color the faces; returns (faces, color list, dart->face index)."""
    faces = d.faces()
    dart_face = {}
    for fi, face in enumerate(faces):
        for dart in face:
            dart_face[dart] = fi
    # adjacency across each edge: the two darts of an edge lie in the two faces
    color = [None] * len(faces)
    if not faces:
        return faces, color, dart_face
    color[0] = 0
    queue = [0]
    adj = {fi: set() for fi in range(len(faces))}
    occ = d.edges()
    for e, ends in occ.items():
        (c1, s1), (c2, s2) = ends
        f1 = dart_face[(c1, s1)]
        f2 = dart_face[(c2, s2)]
        adj[f1].add(f2)
        adj[f2].add(f1)
    while queue:
        f = queue.pop()
        for g in adj[f]:
            if color[g] is None:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f]:
                raise ValueError("diagram is not checkerboard colorable")
    return faces, color, dart_face


def _is_connected(d: Diagram) -> bool:
    if not d.crossings:
        return d.free_loops <= 1
    if d.free_loops:
        return False
    seen = {0}
    queue = [0]
    occ = d.edges()
    while queue:
        ci = queue.pop()
        for e in d.crossings[ci]:
            for (cj, _s) in occ[e]:
                if cj not in seen:
                    seen.add(cj)
                    queue.append(cj)
    return len(seen) == len(d.crossings)


def _int_det(rows):
    """Fraction-free Bareiss determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def goeritz_matrix(d: Diagram):
    """Goeritz matrix for the white checkerboard surface (full size)."""
    faces, color, dart_face = _checkerboard(d)
    white = [fi for fi in range(len(faces)) if color[fi] == 0]
    windex = {fi: k for k, fi in enumerate(white)}
    n = len(white)
    g = [[0] * n for _ in range(n)]
    for ci, cr in enumerate(d.crossings):
        corners = [dart_face[(ci, (k + 1) % 4)] for k in range(4)]
        # corners k sits between slots k and k+1; white corners are an
        # opposite pair: {0,2} -> eta +1, {1,3} -> eta -1
        if color[corners[0]] == 0:
            eta = 1
            w1, w2 = corners[0], corners[2]
        else:
            eta = -1
            w1, w2 = corners[1], corners[3]
        i, j = windex[w1], windex[w2]
        if i == j:
            continue
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return g


def determinant(d: Diagram) -> int:
    """|H1| of the double branched cover; 0 for split links."""
    if not d.crossings:
        return 1 if d.free_loops == 1 else 0
    if not _is_connected(d):
        return 0
    g = goeritz_matrix(d)
    n = len(g)
    if n <= 1:
        # a single white face: happens for reduced alternating-ish curls only
        return 1
    minor = [row[1:] for row in g[1:]]
    return abs(_int_det(minor))
