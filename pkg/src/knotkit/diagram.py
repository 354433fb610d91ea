"""Oriented planar link diagrams.

A crossing is a 4-tuple of edge labels (a, b, c, d) listed counterclockwise
starting at the incoming under-strand, together with a sign:

    slot 0 = a : under-strand, incoming
    slot 2 = c : under-strand, outgoing
    sign +1    : over-strand runs d -> b  (enters at slot 3)
    sign -1    : over-strand runs b -> d  (enters at slot 1)

Sign +1 is the right-handed crossing.  Crossingless unknot components are
tracked by an explicit counter, since skein resolutions create them
constantly.

Smoothing conventions (used by the bracket and Khovanov engines):
the A-smoothing joins slots (0,1) and (2,3); the B-smoothing joins
slots (0,3) and (1,2).  The A-smoothing of a positive crossing is its
oriented smoothing.
"""

from __future__ import annotations

import re


class MoveBudget:
    """Budget for simplification passes."""

    def __init__(self, max_passes=100, allow_detour=False, max_crossings_intermediate=10_000):
        if max_passes < 0 or max_crossings_intermediate < 0:
            raise ValueError("budget counts must be nonnegative")
        self.max_passes = max_passes
        self.allow_detour = allow_detour
        self.max_crossings_intermediate = max_crossings_intermediate


class Diagram:
    """Immutable oriented link diagram."""

    __slots__ = ("crossings", "signs", "free_loops", "_edges", "_components", "_key")

    def __init__(self, crossings, signs, free_loops=0):
        self.crossings = tuple(tuple(int(x) for x in c) for c in crossings)
        self.signs = tuple(int(s) for s in signs)
        self.free_loops = int(free_loops)
        if len(self.crossings) != len(self.signs):
            raise ValueError("need one sign per crossing")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        if self.free_loops < 0:
            raise ValueError("free loop count must be nonnegative")
        self._edges = None
        self._components = None
        self._key = None

    # -- basic structure ---------------------------------------------------

    def in_slots(self, ci):
        return (0, 3) if self.signs[ci] == 1 else (0, 1)

    def out_slots(self, ci):
        return (2, 1) if self.signs[ci] == 1 else (2, 3)

    def edges(self):
        """label -> list of (crossing index, slot)."""
        if self._edges is None:
            occ = {}
            for ci, cr in enumerate(self.crossings):
                for slot, e in enumerate(cr):
                    occ.setdefault(e, []).append((ci, slot))
            self._edges = occ
        return self._edges

    def edge_endpoints(self):
        """label -> (tail=(ci,slot), head=(ci,slot)) using orientation roles."""
        out = {}
        for e, occs in self.edges().items():
            if len(occs) != 2:
                raise ValueError("edge %r occurs %d times" % (e, len(occs)))
            tails = [o for o in occs if o[1] in self.out_slots(o[0])]
            heads = [o for o in occs if o[1] in self.in_slots(o[0])]
            if len(tails) != 1 or len(heads) != 1:
                raise ValueError("edge %r has inconsistent orientation" % (e,))
            out[e] = (tails[0], heads[0])
        return out

    def validate(self):
        """Return a list of violation messages; empty iff the diagram is valid."""
        problems = []
        for e, occs in sorted(self.edges().items()):
            if len(occs) != 2:
                problems.append("edge %r occurs %d times (expected 2)" % (e, len(occs)))
                continue
            tails = [o for o in occs if o[1] in self.out_slots(o[0])]
            heads = [o for o in occs if o[1] in self.in_slots(o[0])]
            if len(tails) != 1 or len(heads) != 1:
                problems.append("edge %r is not coherently oriented" % (e,))
        if not problems:
            try:
                self.components()
            except Exception as exc:  # pragma: no cover - guarded by edge checks
                problems.append("component traversal failed: %s" % exc)
        return problems

    def components(self):
        """Oriented components as tuples of edge labels, deterministic order."""
        if self._components is None:
            ends = self.edge_endpoints()
            unseen = set(ends)
            comps = []
            while unseen:
                start = min(unseen)
                cycle = []
                e = start
                while True:
                    cycle.append(e)
                    unseen.discard(e)
                    _, (ci, slot) = ends[e]
                    nxt_slot = (slot + 2) % 4
                    e = self.crossings[ci][nxt_slot]
                    if e == start:
                        break
                    if e not in unseen:
                        raise ValueError("strand traversal left the unseen set")
                comps.append(tuple(cycle))
            comps.sort(key=lambda c: c[0])
            self._components = tuple(comps)
        return self._components

    def n_components(self):
        return len(self.components()) + self.free_loops

    def component_of(self):
        """edge label -> component index (free loops not included)."""
        out = {}
        for i, comp in enumerate(self.components()):
            for e in comp:
                out[e] = i
        return out

    # -- diagram-level quantities ------------------------------------------

    def writhe(self):
        return sum(self.signs)

    def positive_negative(self):
        p = sum(1 for s in self.signs if s == 1)
        return p, len(self.signs) - p

    def linking_number(self, c1, c2):
        comps = self.components()
        if not (0 <= c1 < len(comps)) or not (0 <= c2 < len(comps)):
            raise KeyError("unknown component id")
        if c1 == c2:
            raise ValueError("linking number needs two distinct components")
        comp_of = self.component_of()
        total = 0
        for ci, cr in enumerate(self.crossings):
            under = comp_of[cr[0]]
            over = comp_of[cr[1]]
            if {under, over} == {c1, c2}:
                total += self.signs[ci]
        if total % 2:
            raise ValueError("crossing signs between components do not pair up")
        return total // 2

    def is_positive(self):
        return all(s == 1 for s in self.signs)

    def mirror(self):
        """Reverse all crossings (reflection through the projection plane)."""
        crossings = []
        signs = []
        for cr, s in zip(self.crossings, self.signs):
            a, b, c, d = cr
            if s == 1:
                crossings.append((d, a, b, c))
            else:
                crossings.append((b, c, d, a))
            signs.append(-s)
        return Diagram(crossings, signs, self.free_loops)

    def reverse_all(self):
        """Reverse the orientation of every component (signs unchanged)."""
        crossings = []
        for cr in self.crossings:
            a, b, c, d = cr
            crossings.append((c, d, a, b))
        return Diagram(crossings, self.signs, self.free_loops)

    def reverse_components(self, which):
        """Reverse the orientation of the given component indices."""
        which = set(which)
        comp_of = self.component_of()
        crossings = []
        signs = []
        for cr, s in zip(self.crossings, self.signs):
            under_rev = comp_of[cr[0]] in which
            over_rev = comp_of[cr[1]] in which
            a, b, c, d = cr
            if under_rev:
                a, b, c, d = c, d, a, b
            if under_rev != over_rev:
                s = -s
            crossings.append((a, b, c, d))
            signs.append(s)
        return Diagram(crossings, signs, self.free_loops)

    def disjoint_union(self, other):
        shift = 1 + max((max(c) for c in self.crossings), default=0)
        moved = [tuple(e + shift for e in c) for c in other.crossings]
        return Diagram(
            self.crossings + tuple(moved),
            self.signs + other.signs,
            self.free_loops + other.free_loops,
        )

    # -- planar faces --------------------------------------------------------

    def faces(self):
        """Faces as tuples of darts (ci, slot); a dart leaves ci through slot."""
        other_end = {}
        occ = self.edges()
        for e, ends in occ.items():
            if len(ends) != 2:
                raise ValueError("faces need a valid diagram")
            (c1, s1), (c2, s2) = ends
            other_end[(c1, s1)] = (c2, s2)
            other_end[(c2, s2)] = (c1, s1)
        seen = set()
        faces = []
        for start in sorted(other_end):
            if start in seen:
                continue
            face = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                ci, slot = other_end[dart]
                dart = (ci, (slot + 1) % 4)
            faces.append(tuple(face))
        return faces

    # -- serialization -------------------------------------------------------

    def text(self):
        """Bit-exact one-line record; see docs/diagram_format.md."""
        bits = []
        for cr, s in zip(self.crossings, self.signs):
            bits.append("X[%d,%d,%d,%d]%s" % (cr[0], cr[1], cr[2], cr[3], "+" if s == 1 else "-"))
        bits.append("O%d" % self.free_loops)
        return " ".join(bits)

    @classmethod
    def from_text(cls, line):
        line = line.strip()
        crossings = []
        signs = []
        loops = 0
        for token in line.split():
            m = re.fullmatch(r"X\[(-?\d+),(-?\d+),(-?\d+),(-?\d+)\]([+-])", token)
            if m:
                crossings.append(tuple(int(m.group(i)) for i in range(1, 5)))
                signs.append(1 if m.group(5) == "+" else -1)
                continue
            m = re.fullmatch(r"O(\d+)", token)
            if m:
                loops = int(m.group(1))
                continue
            raise ValueError("cannot parse diagram token %r" % token)
        return cls(crossings, signs, loops)

    def __repr__(self):
        return "Diagram(%s)" % self.text()

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.crossings == other.crossings
            and self.signs == other.signs
            and self.free_loops == other.free_loops
        )

    def __hash__(self):
        return hash((self.crossings, self.signs, self.free_loops))

    # -- canonical key ---------------------------------------------------------

    def canonical_key(self):
        """Digest invariant under edge relabeling and crossing reordering."""
        if self._key is not None:
            return self._key
        n = len(self.crossings)
        if n == 0:
            self._key = "U%d" % self.free_loops
            return self._key
        best = None
        adjacency = self.edges()
        for start in range(n):
            encoding = _bfs_encoding(self, start, adjacency)
            if best is None or encoding < best:
                best = encoding
        self._key = "D" + str(self.free_loops) + ":" + best
        return self._key


def _bfs_encoding(d, start, adjacency):
    order = [start]
    placed = {start: 0}
    relabel = {}
    out = []
    i = 0
    while i < len(order):
        ci = order[i]
        i += 1
        cr = d.crossings[ci]
        slots = []
        for e in cr:
            if e not in relabel:
                relabel[e] = len(relabel)
                for (cj, _slot) in adjacency[e]:
                    if cj not in placed:
                        placed[cj] = len(order)
                        order.append(cj)
            slots.append(relabel[e])
        out.append("%d,%d,%d,%d;%+d" % (slots[0], slots[1], slots[2], slots[3], d.signs[ci]))
    if len(order) < len(d.crossings):
        # disconnected diagram: encode remaining parts from their min-index start
        rest = [ci for ci in range(len(d.crossings)) if ci not in placed]
        sub = min(
            _bfs_encoding(d, r, adjacency) for r in rest
        )
        return "|".join(out) + "//" + sub
    return "|".join(out)


# -- Reidemeister I/II reduction ---------------------------------------------


def _merge_and_rebuild(d, removed, joins):
    """Remove crossings and fuse edge label pairs; count emerging free loops."""
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    labels = set()
    for cr in d.crossings:
        labels.update(cr)
    for x, y in joins:
        union(x, y)

    keep = [i for i in range(len(d.crossings)) if i not in removed]
    new_crossings = []
    used_roots = set()
    for i in keep:
        cr = tuple(find(e) for e in d.crossings[i])
        used_roots.update(cr)
        new_crossings.append(cr)
    new_signs = [d.signs[i] for i in keep]

    # every join-orbit that no longer touches a crossing became a closed loop
    orbit_roots = {find(x) for pair in joins for x in pair}
    loops = sum(1 for r in orbit_roots if r not in used_roots)
    return Diagram(new_crossings, new_signs, d.free_loops + loops)


def _try_r1(d):
    for ci, cr in enumerate(d.crossings):
        for s in range(4):
            if cr[s] == cr[(s + 1) % 4]:
                other = (cr[(s + 2) % 4], cr[(s + 3) % 4])
                return _merge_and_rebuild(d, {ci}, [other])
    return None


def _try_r2(d):
    occ = d.edges()
    for ci in range(len(d.crossings)):
        cr1 = d.crossings[ci]
        for s1 in range(4):
            e = cr1[s1]
            f = cr1[(s1 + 1) % 4]
            if e == f:
                continue
            ends_e = [o for o in occ[e] if o[0] != ci]
            ends_f = [o for o in occ[f] if o[0] != ci]
            if len(ends_e) != 1 or len(ends_f) != 1:
                continue
            cj, s2 = ends_e[0]
            if cj == ci or ends_f[0][0] != cj:
                continue
            if cj < ci:
                continue
            cr2 = d.crossings[cj]
            # bigon: e and f adjacent at cj as well, in the opposite cyclic sense
            if cr2[(s2 + 1) % 4] == f or cr2[(s2 - 1) % 4] == f:
                e_over_1 = s1 in (1, 3)
                e_over_2 = s2 in (1, 3)
                if e_over_1 != e_over_2:
                    continue  # clasp, not a reducible bigon
                joins = []
                u_a = cr1[(s1 + 2) % 4]
                sf1 = (s1 + 1) % 4
                u_b = cr1[(sf1 + 2) % 4]
                sf2 = [t for t in range(4) if cr2[t] == f][0]
                v_a = cr2[(s2 + 2) % 4]
                v_b = cr2[(sf2 + 2) % 4]
                joins.append((u_a, e))
                joins.append((e, v_a))
                joins.append((u_b, f))
                joins.append((f, v_b))
                return _merge_and_rebuild(d, {ci, cj}, joins)
    return None


def simplify(d, budget=None):
    """Greedy Reidemeister I/II reduction to a local fixpoint.

    Returns (diagram, exhausted) where exhausted is True when max_passes ran
    out before reaching the fixpoint.  Never increases the crossing count.
    """
    if budget is None:
        budget = MoveBudget()
    current = d
    for _ in range(budget.max_passes):
        nxt = _try_r1(current)
        if nxt is None:
            nxt = _try_r2(current)
        if nxt is None:
            return current, False
        current = nxt
    return current, not (_try_r1(current) is None and _try_r2(current) is None)


# -- tiny built-in diagrams (used everywhere in tests) -------------------------


def unknot(loops=1):
    return Diagram([], [], loops)


def empty_diagram():
    return Diagram([], [], 0)
