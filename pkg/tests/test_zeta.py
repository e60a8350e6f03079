import json
from fractions import Fraction

import pytest

from oracles import brute_count, series_exp
from toriczeta import series
from toriczeta.errors import DegreeMismatch, WidthMismatch
from toriczeta.ff import make_tower
from toriczeta.geometry import _all_subsets, newton_polytope
from toriczeta.koszul import hodge_polygon, regularity_check
from toriczeta.laurent import parse_laurent
from toriczeta.zeta import (
    Polygon,
    ZetaReport,
    analyze,
    compare_polygons,
    face_polynomial_series,
    newton_polygon,
    product_identity_sides,
    recover_P,
    verify_product_identity,
)

T5 = make_tower(5, 1, 4)
T7 = make_tower(7, 1, 4)


def dwork(n, lam, tower):
    inv = "*".join(f"x{i}^-1" for i in range(1, n + 1))
    return parse_laurent(" + ".join([f"x{i}" for i in range(1, n + 1)] + [inv, str(lam % tower.p)]), tower, n=n)


def poly_pts(points):
    return Polygon.from_points(points)


def test_segment_P_is_one():
    f = parse_laurent("1 + x1", T5)
    P, table = recover_P(f, T5)
    assert P == [1]
    assert set(table.closure.values()) == {1}


def test_dwork_P_against_weil_oracle():
    g = dwork(2, 3, T7)
    P, _ = recover_P(g, T7)
    # closure = torus points plus one point on each of the three edges
    N1 = brute_count(g, 1, T7) + 3
    N2 = brute_count(g, 2, T7) + 3
    a = 7 + 1 - N1
    assert N2 == 49 + 1 - (a * a - 2 * 7)
    assert P == [1, -7 * a, 343]
    assert P[1] % 7 == 0


def test_recover_P_by_direct_series_division():
    g = dwork(2, 3, T7)
    P, table = recover_P(g, T7)
    Z = series_exp([table.closure[k] * 7**k for k in range(1, 5)], 4)
    lhs = series.mul(Z, [1, -7], 4)
    lhs = series.mul(lhs, [1, -49], 4)
    assert lhs == [Fraction(c) for c in P] + [0, 0]


def test_singular_member_drops_degree():
    # the nodal cubic: the top coefficient vanishes, so deg P < D
    g = dwork(2, -3, T7)
    P, _ = recover_P(g, T7)
    assert P == [1, -7, 0]
    report = analyze(g, T7)
    assert report.regularity == "NotRegular"
    assert report.verdicts["degree_ok"] is False


def test_degree_mismatch_past_D():
    # a non-regular member whose counts do not fit a polynomial of degree D = 0
    T3 = make_tower(3, 1, 4)
    f = parse_laurent("x1^-2*x2 + x1*x2 + 2*x1^2*x2", T3)
    with pytest.raises(DegreeMismatch):
        recover_P(f, T3)


@pytest.mark.parametrize("q,tower", [(5, T5), (7, T7)])
def test_regular_dwork_members(q, tower):
    for lam in range(q):
        g = dwork(2, lam, tower)
        if not regularity_check(g, tower).regular:
            continue
        P, _ = recover_P(g, tower)
        assert len(P) == 3 and P[0] == 1
        assert abs(P[-1]) == q ** 3
        assert verify_product_identity(g, 3, tower)


def test_dwork_n3_over_f3():
    T3 = make_tower(3, 1, 5)
    g = dwork(3, 0, T3)
    P, _ = recover_P(g, T3)
    assert len(P) == 4 and abs(P[-1]) == 3**6
    assert P == [1, -9, -81, 729]


def test_newton_polygon_examples():
    assert newton_polygon([1, -1], 5).vertices == [(0, 0), (1, 0)]
    NP = newton_polygon([1, -7 * 2, 343], 7)
    assert NP.vertices == [(0, 0), (1, 1), (2, 3)]
    assert NP.slopes() == [1, 2]
    NP = newton_polygon([1, 0, 343], 7)
    assert NP.vertices == [(0, 0), (2, 3)]
    assert NP.slopes() == [Fraction(3, 2)]
    # valuations are normalized by a when q = p^a
    assert newton_polygon([1, 4, 64], 4).vertices == [(0, 0), (1, 1), (2, 3)]


def test_compare_examples():
    HP = hodge_polygon([0, 1, 1, 0])
    assert compare_polygons(HP, HP, 2) == {"np_above_hp": True, "endpoints_coincide": True}
    assert compare_polygons(poly_pts([(0, 0), (2, 3)]), HP, 2) == {"np_above_hp": True, "endpoints_coincide": True}
    assert compare_polygons(poly_pts([(0, 0), (2, 2)]), HP, 2)["endpoints_coincide"] is False
    assert compare_polygons(poly_pts([(0, 0), (1, 0), (2, 3)]), HP, 2)["np_above_hp"] is False
    with pytest.raises(WidthMismatch):
        compare_polygons(poly_pts([(0, 0), (3, 3)]), HP, 2)


def test_product_identity_examples():
    assert verify_product_identity(parse_laurent("1 + x1", T5), 4, T5)
    g = dwork(2, 3, T7)
    assert verify_product_identity(g, 3, T7)
    assert product_identity_sides(g, 0, T7) == ([1], [1])


def test_two_zeta_routes_agree():
    g = dwork(2, 3, T7)
    geo = newton_polytope(g)
    P, _ = recover_P(g, T7, geo)
    _, rhs = product_identity_sides(g, 4, T7, geo)
    assert rhs == [Fraction(c) for c in P] + [0, 0]


def test_face_polynomial_degrees():
    g = dwork(2, 3, T7)
    geo = newton_polytope(g)
    for A in _all_subsets(3):
        S, vol, ok = face_polynomial_series(g, A, geo, T7)
        assert ok, (sorted(A), S)
        assert len(S) == vol + 3


def test_report_roundtrip():
    g = dwork(2, 3, T7)
    report = analyze(g, T7, text="x1 + x2 + x1^-1*x2^-1 + 3")
    assert report.all_ok
    data = json.loads(json.dumps(report.to_json()))
    back = ZetaReport.from_json(data)
    assert back.to_json() == report.to_json()
    assert back.verdicts == report.verdicts
    assert back.reverify()


def test_report_refuses_polygons_when_p_divides_det():
    T3 = make_tower(3, 1, 4)
    report = analyze(dwork(2, 1, T3), T3)
    assert report.p_divides_det
    assert report.verdicts["np_above_hp"] is None and report.verdicts["endpoints_coincide"] is None
    assert report.counts.closure
