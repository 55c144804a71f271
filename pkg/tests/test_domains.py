import random
from fractions import Fraction as F

import pytest

from toricknot import domains as dom
from toricknot.domains import (
    DomainError,
    QuadClass,
    SpecParseError,
    WrongKindError,
    classify_quadrilateral,
    concave_polygon,
    convex_polygon,
    cosupport,
    lp_ball,
    lp_inner_polygon,
    lp_outer_polygon,
    parse_domain_spec,
    point_in_region,
    quadrilateral_region,
    rectangle,
    region_contains,
    scale_region,
    support_norm,
    triangle,
)

CONCAVE_EXAMPLE = concave_polygon([(1, 0), (F(1, 3), F(1, 3)), (0, 1)])


def rand_frac(rng, lo=0, hi=6, den=8):
    return F(rng.randint(lo * den + 1, hi * den), den)


def test_rectangle_support_closed_form():
    r = rectangle(F(3, 2), F(7, 3))
    rng = random.Random(0)
    for _ in range(50):
        v, w = rand_frac(rng), rand_frac(rng)
        assert support_norm(r, (v, w)) == F(3, 2) * v + F(7, 3) * w


def test_unit_square_diagonal_support():
    sq = convex_polygon([(1, 0), (1, 1), (0, 1)])
    assert support_norm(sq, (1, 1)) == 2


def test_zero_direction_rejected():
    with pytest.raises(DomainError):
        support_norm(rectangle(1, 1), (0, 0))
    with pytest.raises(DomainError):
        cosupport(CONCAVE_EXAMPLE, (0, 0))


def test_cosupport_concave_example_values():
    # min of x + y over {2x+y >= 1, x+2y >= 1} sits at (1/3, 1/3);
    # min of x + 2y has the x+2y >= 1 face active, attained at (1, 0).
    assert cosupport(CONCAVE_EXAMPLE, (1, 1)) == F(2, 3)
    assert cosupport(CONCAVE_EXAMPLE, (1, 2)) == 1
    assert cosupport(CONCAVE_EXAMPLE, (2, 1)) == 1


def test_cosupport_zero_component_sees_axis_rays():
    assert cosupport(CONCAVE_EXAMPLE, (1, 0)) == 0
    assert cosupport(CONCAVE_EXAMPLE, (0, 1)) == 0


def test_cosupport_wrong_kind():
    with pytest.raises(WrongKindError):
        cosupport(rectangle(1, 1), (1, 1))


def _random_concave_chain(rng, nmid=1):
    # Chain vertices strictly decreasing in x, increasing in y, with the
    # complement convex by construction (points on a convex-down curve).
    A = rand_frac(rng, 1, 4)
    B = rand_frac(rng, 1, 4)
    ts = sorted(F(rng.randint(1, 9), 10) for _ in range(nmid))
    mid = []
    for t in ts:
        # points on the hyperbola-like curve between the axis endpoints
        x = A * (1 - t) ** 2
        y = B * t ** 2
        mid.append((x, y))
    return [(A, F(0))] + mid + [(F(0), B)]


def test_cosupport_matches_linear_program_oracle():
    linprog = pytest.importorskip("scipy.optimize").linprog
    rng = random.Random(5)
    for _ in range(20):
        chain = _random_concave_chain(rng, nmid=rng.randint(1, 2))
        try:
            region = concave_polygon(chain)
        except DomainError:
            continue
        d = (rand_frac(rng, 0, 3), rand_frac(rng, 0, 3))
        if d[0] == 0 or d[1] == 0:
            continue
        # complement halfplanes from the chain edges
        A_ub, b_ub = [], []
        for (ux, uy), (vx, vy) in zip(chain, chain[1:]):
            a = float(vy - uy)
            b = -float(vx - ux)
            c = a * float(ux) + b * float(uy)
            A_ub.append([-a, -b])
            b_ub.append(-c)
        res = linprog([float(d[0]), float(d[1])], A_ub=A_ub, b_ub=b_ub,
                      bounds=[(0, None), (0, None)])
        assert res.success
        assert abs(float(cosupport(region, d)) - res.fun) < 1e-7


@pytest.mark.parametrize(
    "args,expected",
    [
        ((4, 5, 1, 2), QuadClass.CONCAVE),
        ((5, 4, 4, 3), QuadClass.CONVEX),
        ((2, 3, 1, F(3, 2)), QuadClass.ELLIPSOID),
        ((1, 1, 2, 0), QuadClass.INVALID),
        ((8, 5, 3, 3), QuadClass.INVALID),  # ratio < 1 but x+y > min(a,b)
        ((4, 5, 2, 2), QuadClass.CONCAVE),  # boundary case x+y = min(a,b)
    ],
)
def test_classify_quadrilateral(args, expected):
    assert classify_quadrilateral(*args) == expected


def test_classify_degenerate_axis_corner():
    assert classify_quadrilateral(3, 5, 3, 0) == QuadClass.ELLIPSOID
    assert classify_quadrilateral(0, 5, 1, 0) == QuadClass.INVALID


def test_scale_rectangle():
    r2 = scale_region(rectangle(1, 1), 2)
    assert set(r2.boundary) == {(2, 0), (2, 2), (0, 2)}


def test_scale_rejects_nonpositive():
    with pytest.raises(DomainError):
        scale_region(rectangle(1, 1), 0)


def test_support_scales_linearly_on_random_polygons():
    rng = random.Random(1)
    for _ in range(40):
        a, b = rand_frac(rng, 1, 5), rand_frac(rng, 1, 5)
        x = a * F(rng.randint(5, 10), 10)
        y = b * F(rng.randint(5, 10), 10)
        if classify_quadrilateral(a, b, x, y) != QuadClass.CONVEX:
            continue
        region = quadrilateral_region(a, b, x, y)
        zeta = rand_frac(rng, 1, 3)
        d = (rand_frac(rng, 0, 2), rand_frac(rng, 0, 2))
        if d == (0, 0):
            continue
        assert support_norm(scale_region(region, zeta), d) == zeta * support_norm(region, d)


def test_cosupport_scales_linearly():
    rng = random.Random(2)
    for zeta in (F(1, 2), F(3), F(7, 5)):
        for d in ((1, 1), (2, 1), (F(1, 3), F(5, 2))):
            assert cosupport(scale_region(CONCAVE_EXAMPLE, zeta), d) == zeta * cosupport(
                CONCAVE_EXAMPLE, d
            )


def test_lp_scale_moves_r():
    lp = lp_ball(1.5, 1)
    lp2 = scale_region(lp, 2)
    assert lp2.r == 2
    for d in ((1, 1), (1, 2)):
        assert cosupport(lp2, d) == pytest.approx(2 * cosupport(lp, d), rel=1e-12)


def test_homogeneity_in_direction():
    rng = random.Random(3)
    for _ in range(20):
        t = rand_frac(rng, 1, 4)
        d = (rand_frac(rng, 0, 3), rand_frac(rng, 0, 3))
        if d[0] == 0 and d[1] == 0:
            continue
        td = (t * d[0], t * d[1])
        assert support_norm(rectangle(2, 3), td) == t * support_norm(rectangle(2, 3), d)
        if d[0] > 0 and d[1] > 0:
            assert cosupport(CONCAVE_EXAMPLE, td) == t * cosupport(CONCAVE_EXAMPLE, d)


def test_lp_cosupport_closed_form():
    # reverse dual exponent: at scale 1, the diagonal cosupport is 2^(1/q)
    for p in (1.2, 1.5, 1.8):
        q = p / (p - 2.0)
        assert cosupport(lp_ball(p, 1), (1, 1)) == pytest.approx(2.0 ** (1.0 / q), rel=1e-12)
        assert cosupport(lp_ball(p, 1), (1, 2)) == pytest.approx(
            (1.0 + 2.0 ** q) ** (1.0 / q), rel=1e-12
        )


def test_lp_support_closed_form():
    for p in (3.0, 5.0):
        P = p / (p - 2.0)
        assert support_norm(lp_ball(p, 1), (1, 1)) == pytest.approx(2.0 ** (1.0 / P), rel=1e-12)
    # p < 2: supremum on the axes
    assert support_norm(lp_ball(1.5, 1), (2, 1)) == 2


def test_monotone_under_containment():
    inner = quadrilateral_region(1, 1, 1, 1)
    outer = scale_region(inner, F(3, 2))
    assert region_contains(outer, inner)[0]
    for d in ((1, 0), (1, 1), (2, 3)):
        assert support_norm(inner, d) <= support_norm(outer, d)
    cin = CONCAVE_EXAMPLE
    cout = scale_region(cin, 2)
    contained, exact = region_contains(cout, cin)
    assert contained and exact
    for d in ((1, 1), (2, 1), (1, 2)):
        assert cosupport(cin, d) <= cosupport(cout, d)


def test_ellipsoid_support_cosupport_coincidences():
    # For a triangle with legs a <= b the diagonal support equals the longer
    # axis support and the diagonal cosupport equals the shorter mixed one.
    for a, b in ((1, 2), (2, 3), (F(3, 2), F(3, 2))):
        t = triangle(a, b)
        assert support_norm(t, (1, 1)) == max(a, b)
        assert support_norm(t, (1, 1)) == max(support_norm(t, (1, 0)), support_norm(t, (0, 1)))
        assert cosupport(t, (1, 1)) == min(a, b)
        assert cosupport(t, (1, 1)) == min(cosupport(t, (2, 1)), cosupport(t, (1, 2)))


def test_strict_star_shapedness():
    regions = [
        rectangle(1, 2),
        quadrilateral_region(1, 1, 1, 1),
        quadrilateral_region(4, 5, 1, 2),
        CONCAVE_EXAMPLE,
        triangle(2, 3),
    ]
    for region in regions:
        for t in (F(0), F(1, 4), F(1, 2), F(9, 10)):
            for v in region.boundary:
                assert point_in_region(region, (t * v[0], t * v[1]), strict=True)
        # the boundary itself is not strict interior
        for v in region.boundary:
            assert not point_in_region(region, v, strict=True)


def test_lp_polygonal_brackets():
    for p in (1.5, 3.0):
        inner = lp_inner_polygon(p, 1, 48)
        outer = lp_outer_polygon(p, 1, 48)
        lp = lp_ball(p, 1)
        if p < 2:
            for d in ((1, 1), (2, 1), (1, 2)):
                lo = float(cosupport(inner, d))
                hi = float(cosupport(outer, d))
                mid = cosupport(lp, d)
                assert lo <= mid <= hi
                assert hi - lo < 5e-3
        else:
            for d in ((1, 1), (2, 1)):
                lo = float(support_norm(inner, d))
                hi = float(support_norm(outer, d))
                mid = support_norm(lp, d)
                assert lo <= mid <= hi
                assert hi - lo < 5e-3


def test_point_membership_matches_shapely_oracle():
    shp = pytest.importorskip("shapely.geometry")
    rng = random.Random(9)
    regions = [
        quadrilateral_region(1, 1, 1, 1),
        quadrilateral_region(2, 3, F(3, 2), F(5, 2)),
        quadrilateral_region(4, 5, 1, 2),
        CONCAVE_EXAMPLE,
        concave_polygon([(2, 0), (F(1, 2), F(1, 4)), (0, 1)]),
        triangle(2, 3),
    ]
    for region in regions:
        coords = [(0.0, 0.0)] + [(float(x), float(y)) for x, y in region.boundary]
        poly = shp.Polygon(coords)
        assert poly.is_valid
        for _ in range(120):
            pt = (F(rng.randint(-2, 28), 8), F(rng.randint(-2, 28), 8))
            spt = shp.Point(float(pt[0]), float(pt[1]))
            if poly.boundary.distance(spt) < 1e-7:
                continue  # keep the float oracle away from exact boundaries
            assert point_in_region(region, pt) == poly.covers(spt)


def test_invalid_polygon_data_rejected():
    with pytest.raises(DomainError):
        convex_polygon([(1, 0), (F(1, 4), F(1, 4)), (0, 1)])  # dents inward
    with pytest.raises(DomainError):
        concave_polygon([(1, 0), (1, 1), (0, 1)])  # bulges outward
    with pytest.raises(DomainError):
        convex_polygon([(0, 1), (1, 0)])  # wrong axis order


def test_parse_domain_spec_forms():
    assert parse_domain_spec("polydisk:1,3/2").boundary == ((1, F(0)), (1, F(3, 2)), (F(0), F(3, 2)))
    assert parse_domain_spec("quad:4,5,1,2").kind == dom.RegionKind.CONCAVE_POLYGON
    assert parse_domain_spec("quad:5,4,4,3").kind == dom.RegionKind.CONVEX_POLYGON
    assert parse_domain_spec("ellipsoid:1,2").kind == dom.RegionKind.TRIANGLE
    lp = parse_domain_spec("lp:3/2,1")
    assert lp.kind == dom.RegionKind.LP_BALL and lp.is_concave
    poly = parse_domain_spec("convex-poly:1/0;1/1;0/1")
    assert support_norm(poly, (1, 1)) == 2
    poly2 = parse_domain_spec("convex-poly:1,0;1,1;0,1")
    assert poly2.boundary == poly.boundary
    # four slash-separated parts: rational coordinates
    cc = parse_domain_spec("concave-poly:1,0;1/3,1/3;0,1")
    assert cosupport(cc, (1, 1)) == F(2, 3)


def test_parse_domain_spec_errors_carry_position():
    with pytest.raises(SpecParseError):
        parse_domain_spec("polydisk:1")
    with pytest.raises(SpecParseError):
        parse_domain_spec("nonsense:1,2")
    with pytest.raises(SpecParseError) as err:
        parse_domain_spec("quad:4,5,x,2")
    assert "position" in str(err.value)
    with pytest.raises(SpecParseError):
        parse_domain_spec("quad:1,1,2,0")  # invalid quadrilateral data
