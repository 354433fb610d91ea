import pytest

from knotkit.diagram import Diagram, MoveBudget, simplify, unknot
from knotkit.rationals import Frac
from knotkit.tangle import (two_bridge, torus_link, pretzel, numerator_closure,
                            rational_tangle, twist_east, trivial_horizontal,
                            denominator_closure)
from knotkit.polyinv import jones, determinant


def test_unknot_valid():
    d = unknot()
    assert d.validate() == []
    assert d.n_components() == 1


def test_trefoil_valid_and_writhe():
    t = torus_link(2, 3)
    assert t.validate() == []
    assert t.n_components() == 1
    assert t.writhe() == 3
    assert t.is_positive()


def test_validate_catches_bad_edge():
    t = torus_link(2, 3)
    crossings = list(t.crossings)
    crossings[0] = (crossings[0][0],) * 3 + (crossings[0][3],)
    bad = Diagram(crossings, t.signs, 0)
    problems = bad.validate()
    assert problems
    assert any("edge" in p for p in problems)


def test_mirror_involution_and_writhe():
    for d in [torus_link(2, 3), two_bridge(Frac(2, 5)), pretzel(-2, 3, 7)]:
        m = d.mirror()
        assert m.writhe() == -d.writhe()
        assert m.mirror() == d


def test_mirror_on_unknot():
    assert unknot().mirror() == unknot()


def test_linking_number_hopf():
    hopf = two_bridge(Frac(1, 2))
    assert hopf.n_components() == 2
    assert hopf.linking_number(0, 1) == 1
    assert hopf.mirror().linking_number(0, 1) == -1


def test_linking_number_torus_link():
    t24 = torus_link(2, 4)
    assert abs(t24.linking_number(0, 1)) == 2


def test_linking_number_split():
    split = unknot().disjoint_union(unknot())
    assert split.n_components() == 2


def test_linking_unknown_component():
    with pytest.raises(KeyError):
        torus_link(2, 4).linking_number(0, 5)


def test_simplify_r1():
    # braid closure with a removable kink on the extra strand
    from knotkit.tangle import braid_diagram
    d = braid_diagram([1, 1, 1, 2], 3)
    s, flag = simplify(d)
    assert len(s.crossings) == 3
    assert not flag


def test_simplify_r2():
    t = twist_east(twist_east(trivial_horizontal(), 1), -1)
    d = denominator_closure(t)
    s, _ = simplify(d)
    assert len(s.crossings) == 0
    assert s.free_loops == 1


def test_simplify_preserves_jones():
    from knotkit.tangle import braid_diagram
    for word, n in [([1, 1, 1, 2], 3), ([1, -2, 1, -2, 3], 4)]:
        d = braid_diagram(word, n)
        s, _ = simplify(d)
        assert jones(s) == jones(d)
        assert determinant(s) == determinant(d)
        assert s.n_components() == d.n_components()


def test_canonical_key_relabeling():
    d = torus_link(2, 3)
    shifted = Diagram([tuple(e + 101 for e in c) for c in d.crossings], d.signs, 0)
    assert shifted.canonical_key() == d.canonical_key()
    assert d.canonical_key() != two_bridge(Frac(2, 5)).canonical_key()


def test_canonical_key_crossing_reorder():
    d = torus_link(2, 5)
    perm = [3, 1, 4, 0, 2]
    d2 = Diagram([d.crossings[i] for i in perm], [d.signs[i] for i in perm], 0)
    assert d2.canonical_key() == d.canonical_key()


def test_text_roundtrip():
    for d in [unknot(2), torus_link(2, 3), pretzel(-2, 3, 7).mirror()]:
        assert Diagram.from_text(d.text()) == d


def test_faces_euler():
    for d in [torus_link(2, 3), two_bridge(Frac(3, 7)), pretzel(3, -3, 4)]:
        assert len(d.faces()) == len(d.crossings) + 2


def test_signs_are_orientation_consistent():
    # reversing every component keeps all signs
    for d in [torus_link(2, 3), two_bridge(Frac(1, 2)), pretzel(-2, 3, 7)]:
        r = d.reverse_all()
        assert r.signs == d.signs
        assert r.validate() == []


def test_reverse_component_sign_flip():
    hopf = two_bridge(Frac(1, 2))
    r = hopf.reverse_components([0])
    assert r.validate() == []
    assert r.linking_number(0, 1) == -1


def test_budget_validation():
    with pytest.raises(ValueError):
        MoveBudget(max_passes=-1)
