from fractions import Fraction

import pytest

from toricres.laurent import LaurentPolynomial, monomial
from toricres.mirror import (
    P3XP3,
    P4XP1,
    ProductFamily,
    WpsFamily,
    product_intersection_series,
    q_to_p,
    verify_family,
    wps_closed_form,
    wps_intersection_series,
    wps_nef_partition,
    wps_vertex_vectors,
    yukawa_fixture,
)
from toricres.series import TruncatedSeries, expand_rational


def quintic_family():
    return WpsFamily((1, 1, 1, 1, 1), [(0, 1, 2, 3, 4)])


def split_family():
    # plane with coordinates grouped as {x1} and {x2, x3}
    return WpsFamily((1, 1, 1), [(0,), (1, 2)])


def test_wps_family_validation():
    with pytest.raises(ValueError):
        WpsFamily((2, 2), [(0, 1)])  # gcd 2
    with pytest.raises(ValueError):
        WpsFamily((1, 1, 1), [(0,), (1,)])  # index 2 missing
    with pytest.raises(ValueError):
        WpsFamily((1, 1, 1), [(0, 1), (1, 2)])  # index 1 repeated
    with pytest.raises(ValueError):
        WpsFamily((1, 2), [(0, 1)])  # 2 does not divide the total 3
    with pytest.raises(ValueError):
        WpsFamily((1, 1, 2), [(0,), (1, 2)])  # 2 does not divide degree 1
    fam = WpsFamily((1, 1, 2), [(0, 1, 2)])
    assert fam.degrees == (4,)
    assert fam.dim == 2


def test_product_family_validation():
    with pytest.raises(ValueError):
        ProductFamily((3, 3), ((3, 0), (0, 3)))  # row sums 3 != 4
    with pytest.raises(ValueError):
        ProductFamily((3,), ((3, 0, 1), (0, 3, 1)))  # row count
    with pytest.raises(ValueError):
        ProductFamily((3, 3), ((3, 0, 1), (0, 4)))  # ragged
    with pytest.raises(ValueError):
        ProductFamily((3, 3), ((3, 0, 1), (0, 3, 1)), (27,))  # scale count
    with pytest.raises(ValueError):
        ProductFamily((3, 3), ((3, 0, 1), (0, 3, 1)), (0, 27))
    assert P3XP3.r == 3 and P3XP3.ambient_dim == 6
    assert P4XP1.r == 2 and P4XP1.p == 2


def test_wps_vertex_vectors_relations():
    for fam in (split_family(), quintic_family(),
                WpsFamily((1, 1, 2), [(0, 1, 2)])):
        vecs = wps_vertex_vectors(fam)
        assert len(vecs) == fam.n
        assert len(set(vecs)) == fam.n
        for j in range(fam.dim):
            assert sum(w * v[j] for w, v in zip(fam.weights, vecs)) == 0


def test_wps_nef_partition_positions():
    fam = split_family()
    nef, positions = wps_nef_partition(fam)
    vecs = wps_vertex_vectors(fam)
    assert sorted(positions) == [0, 1, 2]
    for i in range(fam.n):
        assert nef.points[positions[i]] == vecs[i]
    # group sizes survive the reordering
    assert len(nef.parts[0]) == 1 and len(nef.parts[1]) == 2


def test_quintic_series():
    fam = quintic_family()
    P = monomial(5, (1, 1, 1, 1, 0))
    s = wps_intersection_series(fam, P, 3)
    assert [s.coefficient((b,)) for b in range(4)] == [
        1, 3125, 3125 ** 2, 3125 ** 3]


def test_split_series_and_closed_form():
    fam = split_family()
    P = monomial(3, (1, 1, 0))
    s = wps_intersection_series(fam, P, 3)
    assert [s.coefficient((b,)) for b in range(4)] == [1, 4, 16, 64]
    cf = wps_closed_form(fam, P)
    assert cf.numerator == {(0,): Fraction(1)}
    assert dict(cf.denominator_factors[0][0]) == {(0,): 1, (1,): -4}


def test_wps_series_linearity():
    fam = split_family()
    P = monomial(3, (1, 0, 1))
    s1 = wps_intersection_series(fam, P, 4)
    s2 = wps_intersection_series(fam, 2 * P, 4)
    assert s2 == 2 * s1


def test_wps_degree_validation():
    fam = split_family()
    with pytest.raises(ValueError):
        wps_intersection_series(fam, monomial(3, (1, 0, 0)), 3)
    with pytest.raises(ValueError):
        wps_closed_form(fam, monomial(3, (2, 1, 0)))
    with pytest.raises(ValueError):
        wps_intersection_series(fam, monomial(2, (1, 1)), 3)
    with pytest.raises(ValueError):
        wps_intersection_series(fam, monomial(3, (-1, 2, 1)), 3)


def test_wps_nu_for_nonunit_weights():
    fam = WpsFamily((1, 1, 2), [(0, 1, 2)])
    P = monomial(3, (1, 1, 0))  # P(w) = 1, degree 2 = dim
    cf = wps_closed_form(fam, P)
    assert cf.numerator == {(0,): Fraction(1, 2)}
    # mu = 4^4 / (1 * 1 * 2^2) = 64
    assert dict(cf.denominator_factors[0][0]) == {(0,): 1, (1,): -64}


def test_wps_termwise_equals_expansion():
    cases = [
        (quintic_family(), monomial(5, (0, 1, 1, 1, 1)), 4),
        (split_family(), monomial(3, (1, 1, 0)), 8),
        (WpsFamily((1, 1, 2), [(0, 1, 2)]),
         LaurentPolynomial(3, {(1, 1, 0): Fraction(2), (0, 2, 0): 1}), 6),
    ]
    for fam, P, order in cases:
        termwise = wps_intersection_series(fam, P, order)
        expanded = expand_rational(wps_closed_form(fam, P), order)
        assert termwise == expanded


def test_product_series_p3xp3():
    s = product_intersection_series(P3XP3, (2, 1), 3)
    assert s.coefficient((0, 0)) == 9
    assert s.coefficient((1, 0)) == 18
    assert s.coefficient((0, 1)) == 9
    t = product_intersection_series(P3XP3, (3, 0), 2)
    assert t.coefficient((0, 0)) == 0
    assert t.coefficient((1, 0)) == 9


def test_product_series_p4xp1():
    s = product_intersection_series(P4XP1, (3, 0), 2)
    assert s.coefficient((0, 0)) == 8
    assert s.coefficient((1, 0)) == 8 * 512
    t = product_intersection_series(P4XP1, (2, 1), 1)
    assert t.coefficient((0, 0)) == 4
    u = product_intersection_series(P4XP1, (0, 3), 1)
    assert u.coefficient((0, 0)) == 0
    assert u.coefficient((0, 1)) == 4


def test_product_series_scale_convention():
    # same degree data as the bundled fixture but with unit scales:
    # coefficients keep the raw extraction values
    raw = ProductFamily((3, 3), ((3, 0, 1), (0, 3, 1)))
    s = product_intersection_series(raw, (2, 1), 1)
    assert s.coefficient((1, 0)) == 18 * 27


def test_product_series_validation():
    with pytest.raises(ValueError):
        product_intersection_series(P3XP3, (2, 1, 0), 2)
    with pytest.raises(ValueError):
        product_intersection_series(P3XP3, (2, 2), 2)  # sum must be 3
    with pytest.raises(ValueError):
        product_intersection_series(P3XP3, (4, -1), 2)


def test_product_matches_fixture_expansion():
    for k in [(3, 0), (2, 1), (1, 2), (0, 3)]:
        s = product_intersection_series(P3XP3, k, 4)
        e = expand_rational(yukawa_fixture("P3xP3", k), 4)
        assert s == e
    for k in [(3, 0), (2, 1), (1, 2), (0, 3)]:
        s = product_intersection_series(P4XP1, k, 3)
        e = expand_rational(yukawa_fixture("P4xP1", k), 3)
        assert s == e


def test_yukawa_fixture_validation():
    with pytest.raises(ValueError):
        yukawa_fixture("P2xP2", (1, 1))
    with pytest.raises(ValueError):
        yukawa_fixture("P3xP3", (4, 0))
    with pytest.raises(ValueError):
        yukawa_fixture("wps_diag", (2, 2))


def test_diagonal_combination_identity():
    # Y(3,0) + 3 Y(2,1) + 3 Y(1,2) + Y(0,3) on the diagonal y1 = y2 = y
    order = 8
    weights = {(3, 0): 1, (2, 1): 3, (1, 2): 3, (0, 3): 1}
    total = {}
    for k, mult in weights.items():
        e = expand_rational(yukawa_fixture("P3xP3", k), order)
        for exp, c in e.coeffs.items():
            d = exp[0] + exp[1]
            total[(d,)] = total.get((d,), Fraction(0)) + mult * c
    diag = TruncatedSeries(1, order, total)
    target = expand_rational(yukawa_fixture("wps_diag", (3, 3)), order)
    assert diag == target


def test_q_to_p_constant():
    Q = monomial(3, (0, 0, 0))
    P = q_to_p(Q, [(0,), (1, 2)], degree=2)
    assert P.terms == {(1, 1, 0): Fraction(1), (1, 0, 1): Fraction(1)}


def test_q_to_p_degree_checks():
    with pytest.raises(ValueError):
        q_to_p(monomial(3, (0, 1, 0)), [(0,), (1, 2)], degree=2)
    with pytest.raises(ValueError):
        # x1 + x2 is not homogeneous per group
        q_to_p(LaurentPolynomial(3, {(1, 0, 0): 1, (0, 1, 0): 1}),
               [(0,), (1, 2)])
    with pytest.raises(ValueError):
        q_to_p(monomial(3, (0, 0, 0)), [(0,), (1,)])  # bad partition


def test_q_to_p_product_style_degrees():
    # eight coordinates in three groups; a degree-3 Q lands at degree 6
    parts = [(0, 1, 2), (3, 4, 5), (6, 7)]
    Q = monomial(8, (1, 0, 0, 1, 0, 0, 1, 0))
    P = q_to_p(Q, parts, degree=6)
    degs = {sum(e) for e in P.terms}
    assert degs == {6}
    group_degs = {tuple(sum(e[i] for i in part) for part in parts)
                  for e in P.terms}
    assert group_degs == {(2, 2, 2)}
    assert P.evaluate((1,) * 8) == 3 * 3 * 2


def test_unit_weight_family_through_q():
    # one-part grouping of Q against the closed form d1*d2*Q(1)/(1 - mu y)
    fam = split_family()
    Q = monomial(3, (0, 0, 0), 3)
    P = q_to_p(Q, fam.parts, degree=fam.dim)
    cf = wps_closed_form(fam, P)
    d1, d2 = fam.degrees
    assert cf.numerator == {(0,): d1 * d2 * Q.evaluate((1, 1, 1))}
    assert dict(cf.denominator_factors[0][0]) == {(0,): 1, (1,): -4}


def test_verify_family_wps():
    fam = split_family()
    report = verify_family(fam, 8, P=monomial(3, (1, 1, 0)))
    assert report["ok"]
    assert report["mode"] == "wps"
    assert report["mismatches"] == []
    assert len(report["rows"]) == 9
    assert len(report["points"]) == 2
    for row in report["points"]:
        assert row["closed_form"] == row["residue"]


def test_verify_family_wps_composite_polynomial():
    fam = split_family()
    P = q_to_p(monomial(3, (0, 0, 0)), fam.parts, degree=fam.dim)
    report = verify_family(fam, 5, P=P)
    assert report["ok"]


def test_verify_family_wps_explicit_points():
    fam = split_family()
    points = [(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)),
              (Fraction(2, 3), Fraction(1, 2), Fraction(1, 9))]
    report = verify_family(fam, 4, P=monomial(3, (1, 1, 0)), points=points)
    assert report["ok"]
    assert report["points"][0]["y"] == Fraction(1, 105)
    assert report["points"][0]["closed_form"] == Fraction(105, 101)


def test_verify_family_product():
    report = verify_family(P3XP3, 4, k=(2, 1))
    assert report["ok"]
    assert report["mode"] == "product"
    assert report["mismatches"] == []
    report = verify_family(P4XP1, 3, k=(3, 0))
    assert report["ok"]


def test_verify_family_validation():
    with pytest.raises(ValueError):
        verify_family(split_family(), 4)  # P missing
    with pytest.raises(ValueError):
        verify_family(P3XP3, 4)  # k missing
    with pytest.raises(TypeError):
        verify_family("nope", 4, k=(1,))
    with pytest.raises(ValueError):
        # valid family without a bundled closed form
        verify_family(ProductFamily((2,), ((3,),)), 2, k=(1,))
    with pytest.raises(ValueError):
        verify_family(split_family(), 4, P=monomial(3, (1, 1, 0)),
                      points=[(1, 1, 1)])


def test_verify_family_point_validation():
    fam = split_family()
    with pytest.raises(ValueError):
        verify_family(fam, 3, P=monomial(3, (1, 1, 0)),
                      points=[(0, 1, 1), (1, 1, 1)])
    with pytest.raises(ValueError):
        verify_family(fam, 3, P=monomial(3, (1, 1, 0)),
                      points=[(1, 1), (1, 1)])
