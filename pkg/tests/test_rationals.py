from knotkit.rationals import Frac, INF, cf_expand, cf_eval, parse_frac


def test_reduction_and_signs():
    assert Frac(2, 4) == Frac(1, 2)
    assert Frac(3, -6) == Frac(-1, 2)
    assert Frac(-2, 0) == Frac(-1, 0)
    assert INF.is_infinite


def test_arithmetic():
    assert Frac(1, 2) + Frac(1, 3) == Frac(5, 6)
    assert Frac(1, 2) - 2 == Frac(-3, 2)
    assert Frac(2, 3) * Frac(3, 4) == Frac(1, 2)
    assert Frac(1, 2) + INF == INF
    assert Frac(3, 7).inverse() == Frac(7, 3)


def test_cf_paper_values():
    # the worked example with expansion [2,4,1,3,2]
    assert cf_expand(Frac(43, 95)) == [2, 4, 1, 3, 2]
    # 1/q expands as [q]
    for q in range(2, 12):
        assert cf_expand(Frac(1, q)) == [q]


def test_cf_roundtrip():
    for num in range(-40, 41):
        for den in range(1, 40):
            f = Frac(num, den)
            if f.num == 0:
                continue
            assert cf_eval(cf_expand(f)) == f


def test_parse():
    assert parse_frac("3/4") == Frac(3, 4)
    assert parse_frac("-5") == Frac(-5, 1)
