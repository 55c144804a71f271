import random
from fractions import Fraction as F

import pytest

from toricknot.certificates import (
    check_ccvaxy,
    check_cvxaxy,
    check_longembed,
    check_step2,
    delta_ell_upper,
)
from toricknot.domains import (
    DomainError,
    concave_polygon,
    lp_ball,
    quadrilateral_region,
    rectangle,
    triangle,
)


def test_cvxaxy_square_case():
    cert = check_cvxaxy(1, 1, 1, 1)
    assert cert.verified
    assert cert.packing.initial.weights == (1, 1, 1, 1)
    assert cert.packing.initial.t == 2


def test_cvxaxy_degenerate_ellipsoid_case():
    assert check_cvxaxy(1, 1, 1, 0).verified


def test_cvxaxy_hypothesis_gate():
    cert = check_cvxaxy(F(3, 2), 3, 1, 1)  # b > x + y
    assert not cert.verified
    assert "hypothesis failed" in cert.reason
    assert cert.packing is None


def test_ccvaxy_rational_example():
    assert check_ccvaxy(1, 1, F(1, 2), F(1, 4)).verified


def test_ccvaxy_degenerate_and_gate():
    assert check_ccvaxy(2, 3, 2, 0).verified  # source is the ellipsoid itself
    cert = check_ccvaxy(1, 2, F(3, 4), F(1, 2))  # x + y > a
    assert not cert.verified


def test_longembed_examples():
    cert = check_longembed(1, 0)
    assert cert.verified
    assert cert.packing.initial.weights == (1, 1, 1, 1)
    assert check_longembed(2, F(1, 2)).verified


def test_longembed_rejects_bad_eps():
    with pytest.raises(DomainError):
        check_longembed(1, 1)
    with pytest.raises(DomainError):
        check_longembed(0, 0)


def test_step2_examples():
    assert check_step2(1, 1, 1).verified
    assert check_step2(1, F(3, 2), F(3, 2)).verified
    assert not check_step2(1, 1, F(5, 2)).verified  # b > 2a


def rand_frac(rng, lo, hi, den_max=6):
    den = rng.randint(1, den_max)
    return F(rng.randint(int(lo * den) + 1, int(hi * den)), den)


def test_cvxaxy_random_suite():
    rng = random.Random(31)
    for _ in range(60):
        x = rand_frac(rng, 0, 3)
        y = rand_frac(rng, 0, 3)
        a = x + (x + y - x) * F(rng.randint(0, 6), 6)
        lo = max(a, y)
        b = lo + (x + y - lo) * F(rng.randint(0, 6), 6)
        cert = check_cvxaxy(a, b, x, y)
        assert cert.verified, (a, b, x, y, cert.reason)


def test_ccvaxy_random_suite():
    rng = random.Random(32)
    for _ in range(60):
        x = rand_frac(rng, 0, 2)
        y = rand_frac(rng, 0, 2)
        a = x + y + rand_frac(rng, 0, 2)
        b = a + rand_frac(rng, 0, 2)
        cert = check_ccvaxy(a, b, x, y)
        assert cert.verified, (a, b, x, y, cert.reason)


def test_longembed_random_suite():
    rng = random.Random(33)
    for _ in range(40):
        m = rng.randint(1, 4)
        eps = F(rng.randint(0, 11), 12)
        assert check_longembed(m, eps).verified


def test_step2_random_suite():
    rng = random.Random(34)
    for _ in range(40):
        a = rand_frac(rng, 1, 3)
        y = a + (2 * a - a) * F(rng.randint(0, 6), 6)
        b = y + (2 * a - y) * F(rng.randint(0, 6), 6)
        cert = check_step2(a, y, b)
        assert cert.verified, (a, y, b, cert.reason)


def test_certificate_traces_conserve():
    for cert in (check_cvxaxy(1, 1, 1, 1), check_longembed(2, F(1, 3)), check_step2(1, 1, 1)):
        assert cert.packing.verify_trace()


# -- delta_ell upper bounds --------------------------------------------------


def test_cube_bound_is_three_halves():
    b = delta_ell_upper(rectangle(1, 1))
    assert b.bound == F(3, 2)
    assert b.exact


def test_polydisk_bound_takes_the_better_route():
    # corner-witness value 1 + s/(1+s) against the three-ball value
    # 1 + (4+s)/(2+3s+s^2); the crossover sits between 3/2 and 9/5.
    cases = {
        F(1): (F(3, 2), "convex-witness"),
        F(5, 4): (F(14, 9), "convex-witness"),
        F(3, 2): (F(8, 5), "convex-witness"),
        F(9, 5): (F(411, 266), "polydisk-three-ball"),
        F(2): (F(3, 2), "polydisk-three-ball"),
    }
    for s, (value, route) in cases.items():
        b = delta_ell_upper(rectangle(1, s))
        assert (b.bound, b.route) == (value, route), s


def test_polydisk_bound_orientation_invariant():
    assert delta_ell_upper(rectangle(F(9, 5), 1)).bound == delta_ell_upper(rectangle(1, F(9, 5))).bound


def test_wide_polydisk_falls_back_to_corner_witness():
    b = delta_ell_upper(rectangle(1, 3))
    assert b.route == "convex-witness"
    assert b.bound == 1 + F(3, 4)


def test_ellipsoid_bound_is_one():
    b = delta_ell_upper(triangle(1, 2))
    assert b.bound == 1


def test_concave_example_bound():
    region = concave_polygon([(1, 0), (F(1, 3), F(1, 3)), (0, 1)])
    b = delta_ell_upper(region)
    assert b.bound == F(6, 5)
    assert b.route == "concave-witness"


def test_lp_bounds():
    b = delta_ell_upper(lp_ball(1.5))
    assert b.bound == pytest.approx(1.5 ** (1.0 / 3.0), rel=1e-12)
    b = delta_ell_upper(lp_ball(3.0))
    assert b.bound == pytest.approx(1.5 ** (1.0 / 3.0), rel=1e-12)
    assert delta_ell_upper(lp_ball(2.0)).bound == 1.0


def test_convex_polygon_bound_beats_inclusion():
    region = quadrilateral_region(1, 1, F(3, 4), F(3, 4))
    b = delta_ell_upper(region)
    assert b.route == "convex-witness"
    # witness (3/4, 3/4) gives direction (1, 2/3), maximized at the corner
    assert b.bound == F(5, 4)
