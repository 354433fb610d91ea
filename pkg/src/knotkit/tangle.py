"""Rational tangles, tangle composition, and Montesinos links.

A tangle is an unoriented 2-string diagram in a disk with boundary points
NW, NE, SE, SW.  Crossings use the same counterclockwise 4-tuple encoding
as diagrams, with the under-strand on slots 0 and 2; no orientation or sign
is carried until a closure produces a Diagram.

Twist conventions (calibrated by the invariant test suite):

* positive horizontal twist: over-strand on the SW-NE diagonal,
* positive vertical twist: over-strand on the NE-SW diagonal,

so that the numerator closure of q positive vertical twists is the
right-handed (2, q) torus link, and tangle fractions obey

    F(twist_east(T, n))  = F(T) + n
    F(twist_south(T, n)) = 1 / (n + 1/F(T))
    F(rot90(T))          = -1 / F(T).
"""

from __future__ import annotations

from .diagram import Diagram
from .rationals import Frac, as_frac, cf_expand

NW, NE, SE, SW = 0, 1, 2, 3


class Tangle:
    """Unoriented 2-string tangle diagram; boundary = (nw, ne, se, sw) labels."""

    __slots__ = ("crossings", "boundary", "free_loops")

    def __init__(self, crossings, boundary, free_loops=0):
        self.crossings = tuple(tuple(c) for c in crossings)
        self.boundary = tuple(boundary)
        self.free_loops = int(free_loops)

    def max_label(self):
        m = 0
        for c in self.crossings:
            m = max(m, max(c))
        return max(m, max(self.boundary))

    def shifted(self, offset):
        return Tangle(
            [tuple(e + offset for e in c) for c in self.crossings],
            tuple(e + offset for e in self.boundary),
            self.free_loops,
        )

    def __repr__(self):
        return "Tangle(%d crossings, boundary=%s, loops=%d)" % (
            len(self.crossings),
            self.boundary,
            self.free_loops,
        )


def trivial_horizontal():
    """The 0-tangle: NW-NE strand over nothing, SW-SE strand."""
    return Tangle([], (1, 1, 2, 2))


def trivial_vertical():
    """The infinity-tangle: NW-SW and NE-SE strands."""
    return Tangle([], (1, 2, 2, 1))


# -- gluing machinery ----------------------------------------------------------


def _fuse(crossings, free_loops, joins, open_labels):
    """Union-find fusion of edge labels.

    joins: pairs of labels to identify.  open_labels: labels that remain on
    the boundary.  Returns (crossings, boundary-map, free_loops).
    """
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

    for x, y in joins:
        union(x, y)

    new_crossings = [tuple(find(e) for e in c) for c in crossings]
    used = set()
    for c in new_crossings:
        used.update(c)
    open_roots = [find(x) for x in open_labels]
    used.update(open_roots)

    orbit_roots = {find(x) for pair in joins for x in pair}
    loops = sum(1 for r in orbit_roots if r not in used)
    return new_crossings, open_roots, free_loops + loops


def hsum(t1, t2):
    """Horizontal sum: t1 to the west of t2."""
    t2 = t2.shifted(t1.max_label() + 1)
    joins = [(t1.boundary[NE], t2.boundary[NW]), (t1.boundary[SE], t2.boundary[SW])]
    open_labels = [t1.boundary[NW], t2.boundary[NE], t2.boundary[SE], t1.boundary[SW]]
    crossings, openr, loops = _fuse(
        t1.crossings + t2.crossings, t1.free_loops + t2.free_loops, joins, open_labels
    )
    return Tangle(crossings, openr, loops)


def vstack(t1, t2):
    """Vertical stack: t1 above t2."""
    t2 = t2.shifted(t1.max_label() + 1)
    joins = [(t1.boundary[SW], t2.boundary[NW]), (t1.boundary[SE], t2.boundary[NE])]
    open_labels = [t1.boundary[NW], t1.boundary[NE], t2.boundary[SE], t2.boundary[SW]]
    crossings, openr, loops = _fuse(
        t1.crossings + t2.crossings, t1.free_loops + t2.free_loops, joins, open_labels
    )
    return Tangle(crossings, openr, loops)


def rot90(t):
    """Rotate counterclockwise by a quarter turn; F -> -1/F."""
    b = t.boundary
    return Tangle(t.crossings, (b[NE], b[SE], b[SW], b[NW]), t.free_loops)


def tangle_mirror(t):
    """Switch every crossing (reflection through the projection plane)."""
    return Tangle(
        [(c[1], c[2], c[3], c[0]) for c in t.crossings], t.boundary, t.free_loops
    )


def twist_east(t, n):
    """Append |n| horizontal half-twists at the NE/SE ends; F -> F + n."""
    t2 = t
    for _ in range(abs(n)):
        base = t2.max_label()
        ne, se = t2.boundary[NE], t2.boundary[SE]
        new_ne, new_se = base + 1, base + 2
        if n > 0:
            # over-strand on the SW-NE diagonal, under on NW-SE
            crossing = (new_se, new_ne, ne, se)
        else:
            crossing = (new_ne, ne, se, new_se)
        t2 = Tangle(
            t2.crossings + (crossing,),
            (t2.boundary[NW], new_ne, new_se, t2.boundary[SW]),
            t2.free_loops,
        )
    return t2


def twist_south(t, n):
    """Append |n| vertical half-twists at the SW/SE ends; F -> 1/(n + 1/F)."""
    t2 = t
    for _ in range(abs(n)):
        base = t2.max_label()
        sw, se = t2.boundary[SW], t2.boundary[SE]
        new_sw, new_se = base + 1, base + 2
        if n > 0:
            # over-strand on the NE-SW diagonal
            crossing = (sw, new_sw, new_se, se)
        else:
            crossing = (se, sw, new_sw, new_se)
        t2 = Tangle(
            t2.crossings + (crossing,),
            (t2.boundary[NW], t2.boundary[NE], new_se, new_sw),
            t2.free_loops,
        )
    return t2


def rational_tangle(f) -> Tangle:
    """Rational tangle with Conway fraction f (a Frac or int)."""
    f = as_frac(f)
    if f.is_infinite:
        return trivial_vertical()
    if f.num == 0:
        return trivial_horizontal()
    coeffs = cf_expand(f)
    m = len(coeffs)
    t = trivial_vertical() if m % 2 == 1 else trivial_horizontal()
    for k in range(m, 0, -1):
        c = coeffs[k - 1]
        if k % 2 == 1:
            t = twist_south(t, c)
        else:
            t = twist_east(t, c)
    return t


# -- closures and orientation --------------------------------------------------


def orient_closed(crossings, free_loops, reverse=frozenset()) -> Diagram:
    """Assign orientations to a closed unoriented diagram.

    Components are ordered by their minimal edge label; indices listed in
    ``reverse`` get the opposite direction.  Crossing tuples are rotated so
    slot 0 is the incoming under-strand and signs are derived.
    """
    occ = {}
    for ci, c in enumerate(crossings):
        for slot, e in enumerate(c):
            occ.setdefault(e, []).append((ci, slot))
    for e, ends in occ.items():
        if len(ends) != 2:
            raise ValueError("edge %r occurs %d times; diagram is not closed" % (e, len(ends)))

    # trace unoriented components: entering a crossing at slot s exits at s+2
    unseen = set(occ)
    comps = []
    while unseen:
        start = min(unseen)
        cycle = []
        e = start
        # direction choice: leave through the *second* occurrence of `start`
        prev_end = occ[start][0]
        while True:
            cycle.append(e)
            unseen.discard(e)
            ends = occ[e]
            nxt = ends[1] if ends[0] == prev_end else ends[0]
            ci, slot = nxt
            out_slot = (slot + 2) % 4
            e2 = crossings[ci][out_slot]
            prev_end = (ci, out_slot)
            e = e2
            if e == start:
                break
            if e not in unseen:
                raise ValueError("bad strand traversal")
        comps.append(cycle)
    comps.sort(key=lambda c: c[0])

    # walk each component again, recording the head endpoint of every edge
    head_of = {}
    for idx, cycle in enumerate(comps):
        e = cycle[0]
        prev_end = occ[e][0]
        for _ in range(len(cycle)):
            ends = occ[e]
            nxt = ends[1] if ends[0] == prev_end else ends[0]
            head_of[e] = nxt
            ci, slot = nxt
            out_slot = (slot + 2) % 4
            prev_end = (ci, out_slot)
            e = crossings[ci][out_slot]
        if idx in reverse:
            for edge in cycle:
                ends = occ[edge]
                head_of[edge] = ends[1] if ends[0] == head_of[edge] else ends[0]

    new_crossings = []
    signs = []
    for ci, c in enumerate(crossings):
        # find incoming under slot: slot 0 or 2 whose edge heads into (ci, slot)
        if head_of[c[0]] == (ci, 0):
            rot = 0
        elif head_of[c[2]] == (ci, 2):
            rot = 2
        else:
            raise ValueError("under-strand of crossing %d has no incoming edge" % ci)
        rc = tuple(c[(rot + k) % 4] for k in range(4))
        # over-strand: incoming at slot 3 -> sign +1, at slot 1 -> sign -1
        if head_of[rc[3]] == (ci, (rot + 3) % 4):
            signs.append(1)
        elif head_of[rc[1]] == (ci, (rot + 1) % 4):
            signs.append(-1)
        else:
            raise ValueError("over-strand of crossing %d has no incoming edge" % ci)
        new_crossings.append(rc)
    return Diagram(new_crossings, signs, free_loops)


def numerator_closure(t, reverse=frozenset()) -> Diagram:
    joins = [(t.boundary[NW], t.boundary[NE]), (t.boundary[SW], t.boundary[SE])]
    crossings, _openr, loops = _fuse(t.crossings, t.free_loops, joins, [])
    return orient_closed(crossings, loops, reverse)


def denominator_closure(t, reverse=frozenset()) -> Diagram:
    joins = [(t.boundary[NW], t.boundary[SW]), (t.boundary[NE], t.boundary[SE])]
    crossings, _openr, loops = _fuse(t.crossings, t.free_loops, joins, [])
    return orient_closed(crossings, loops, reverse)


def reorient(d: Diagram, reverse) -> Diagram:
    """Reverse the orientation of the given component indices of a Diagram."""
    return d.reverse_components(reverse)


# -- standard link constructions -----------------------------------------------


def two_bridge(f) -> Diagram:
    """The 2-bridge link K[p/q]: denominator closure of R(p/q); det = q."""
    f = as_frac(f)
    return denominator_closure(rational_tangle(f))


def montesinos_link(b, fracs) -> Diagram:
    """Montesinos link K[b; f1, ..., fn]: numerator closure of the tangle sum
    R(f1) + ... + R(fn) with b extra horizontal half-twists."""
    fracs = [as_frac(f) for f in fracs]
    if not fracs:
        raise ValueError("need at least one tangle")
    t = rational_tangle(fracs[0])
    for f in fracs[1:]:
        t = hsum(t, rational_tangle(f))
    if b:
        t = twist_east(t, b)
    return numerator_closure(t)


def pretzel(*qs) -> Diagram:
    """Pretzel link P(q1, ..., qn) = K[1/q1, ..., 1/qn]."""
    if not qs:
        raise ValueError("empty pretzel")
    return montesinos_link(0, [Frac(1, q) for q in qs])


def braid_diagram(word, strands) -> Diagram:
    """Closure of a braid word (list of nonzero ints, |i| < strands)."""
    top = list(range(1, strands + 1))
    cur = list(top)
    crossings = []
    nxt = strands
    for letter in word:
        i = abs(letter) - 1
        if not (0 <= i < strands - 1):
            raise ValueError("bad braid letter %r" % (letter,))
        a, b = cur[i], cur[i + 1]
        c, d = nxt + 1, nxt + 2
        nxt += 2
        if letter > 0:
            # positive: strand entering NE passes over to SW
            crossings.append((a, c, d, b))
        else:
            crossings.append((b, a, c, d))
        cur[i], cur[i + 1] = c, d
    # close up: bottom position k joins top position k
    joins = list(zip(cur, top))
    crossings2, _openr, loops = _fuse(crossings, 0, joins, [])
    return orient_closed(crossings2, loops)


def torus_link(p, q) -> Diagram:
    """The (p, q) torus link as the closure of (s1 s2 ... s_{p-1})^q."""
    if p < 2:
        return Diagram([], [], 1)
    word = []
    for _ in range(abs(q)):
        row = list(range(1, p))
        if q < 0:
            row = [-x for x in row]
        word.extend(row)
    return braid_diagram(word, p)
