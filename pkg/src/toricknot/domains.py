"""Exact moment-map regions in the quadrant and their support functionals.

A four-dimensional toric domain is the preimage of a region in [0, oo)^2
under (z1, z2) |-> (pi|z1|^2, pi|z2|^2).  This module represents the region
side of that picture: rectangles (polydisks), triangles (ellipsoids),
general convex and concave polygonal regions, and analytic l^p regions.

Two functionals drive everything downstream:

* ``support_norm(region, d)``  --  sup of d . v over the region,
* ``cosupport(region, d)``     --  inf of d . v over the complement of the
  region in the quadrant.

For polygonal regions both are evaluated exactly over ``fractions.Fraction``
vertices.  For l^p regions closed dual/reverse-dual forms are used in double
precision, and rational inner/outer polygonal approximations are available
to bracket the closed forms with certified inequalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

Num = Union[Fraction, int, float]
Point = tuple


class DomainError(ValueError):
    """Invalid region data or invalid argument to a region operation."""


class WrongKindError(DomainError):
    """Operation applied to a region of an unsupported kind."""


class RegionKind(Enum):
    RECTANGLE = "rectangle"
    TRIANGLE = "triangle"
    CONVEX_POLYGON = "convex-polygon"
    CONCAVE_POLYGON = "concave-polygon"
    LP_BALL = "lp-ball"


class QuadClass(Enum):
    CONCAVE = "concave"
    CONVEX = "convex"
    ELLIPSOID = "ellipsoid"
    INVALID = "invalid"


def as_rat(x: Num) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise DomainError(f"expected a rational number, got {x!r}")


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _vcross(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class ToricRegion:
    """A moment-map region in the closed quadrant.

    ``boundary`` holds the outer boundary chain inside the quadrant, ordered
    from the x-axis endpoint to the y-axis endpoint (axis endpoints
    included).  For convex kinds the region is the set under that chain; for
    the concave kind the chain is the inner boundary and the complement of
    the region beyond it is convex.  l^p regions carry the exponent ``p``
    and a scale ``r`` instead (the region is r * {x^(p/2) + y^(p/2) <= 1},
    the scale measured in moment-map units).
    """

    kind: RegionKind
    boundary: tuple = ()
    p: float = 0.0
    r: Num = 0
    label: str = ""

    # -- classification ---------------------------------------------------

    @property
    def is_convex(self) -> bool:
        if self.kind == RegionKind.LP_BALL:
            return self.p >= 2.0
        return self.kind != RegionKind.CONCAVE_POLYGON

    @property
    def is_concave(self) -> bool:
        if self.kind == RegionKind.LP_BALL:
            return self.p <= 2.0
        return self.kind in (RegionKind.CONCAVE_POLYGON, RegionKind.TRIANGLE)

    @property
    def is_ellipsoid(self) -> bool:
        if self.kind == RegionKind.TRIANGLE:
            return True
        return self.kind == RegionKind.LP_BALL and self.p == 2.0

    @property
    def is_polygonal(self) -> bool:
        return self.kind != RegionKind.LP_BALL

    @property
    def vertices(self) -> tuple:
        """All boundary chain vertices (axis endpoints included)."""
        return self.boundary

    def axis_supports(self):
        """(sup x, sup y) over the region: the two axis support norms."""
        return support_norm(self, (1, 0)), support_norm(self, (0, 1))

    def inner_intercepts(self):
        """Axis endpoints of the inner boundary of a concave region."""
        if not self.is_concave:
            raise WrongKindError("inner intercepts need a concave region")
        if self.kind == RegionKind.LP_BALL:
            return self.r, self.r
        return self.boundary[0][0], self.boundary[-1][1]

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == RegionKind.LP_BALL:
            return f"lp:{self.p},{self.r}"
        pts = ";".join(f"{v[0]},{v[1]}" for v in self.boundary)
        return f"{self.kind.value}:{pts}"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def rectangle(a: Num, b: Num) -> ToricRegion:
    """The region [0,a] x [0,b]; the moment image of the polydisk P(a,b)."""
    a, b = as_rat(a), as_rat(b)
    if a <= 0 or b <= 0:
        raise DomainError("rectangle needs positive side lengths")
    return ToricRegion(
        RegionKind.RECTANGLE,
        boundary=((a, Fraction(0)), (a, b), (Fraction(0), b)),
        label=f"polydisk:{a},{b}",
    )


polydisk = rectangle


def triangle(a: Num, b: Num) -> ToricRegion:
    """The region under the segment (a,0)-(0,b); moment image of E(a,b)."""
    a, b = as_rat(a), as_rat(b)
    if a < 0 or b < 0:
        raise DomainError("triangle needs nonnegative legs")
    return ToricRegion(
        RegionKind.TRIANGLE,
        boundary=((a, Fraction(0)), (Fraction(0), b)),
        label=f"ellipsoid:{a},{b}",
    )


ellipsoid_region = triangle


def _check_chain_in_quadrant(chain) -> None:
    for v in chain:
        if v[0] < 0 or v[1] < 0:
            raise DomainError(f"vertex {v} outside the quadrant")


def convex_polygon(chain: Sequence[Point]) -> ToricRegion:
    """Convex region from its boundary chain (a,0), ..., (0,b).

    The chain runs counterclockwise from the x-axis endpoint to the y-axis
    endpoint.  Validity means the symmetrized region obtained by reflecting
    across both axes is convex, which is checked by cross-product signs on
    the full reflected vertex cycle.
    """
    chain = tuple((as_rat(x), as_rat(y)) for x, y in chain)
    if len(chain) < 2:
        raise DomainError("convex chain needs at least the two axis endpoints")
    _check_chain_in_quadrant(chain)
    if chain[0][1] != 0 or chain[-1][0] != 0:
        raise DomainError("chain must start on the x-axis and end on the y-axis")
    if chain[0][0] <= 0 or chain[-1][1] <= 0:
        raise DomainError("axis endpoints must be positive")
    for v in chain[1:-1]:
        if v[0] <= 0 or v[1] <= 0:
            raise DomainError(f"interior chain vertex {v} must be strictly positive")

    cycle = _symmetrized_cycle(chain)
    n = len(cycle)
    for i in range(n):
        if _cross(cycle[i - 1], cycle[i], cycle[(i + 1) % n]) < 0:
            raise DomainError(
                f"symmetrized region is not convex at vertex {cycle[i]} (cross sign)"
            )
    return ToricRegion(RegionKind.CONVEX_POLYGON, boundary=chain)


def _symmetrized_cycle(chain):
    """Counterclockwise boundary of the region reflected across both axes."""
    cycle = list(chain)
    cycle += [(-x, y) for x, y in reversed(chain) if x != 0]
    cycle += [(-x, -y) for x, y in chain if y != 0]
    cycle += [(x, -y) for x, y in reversed(chain) if x != 0 and y != 0]
    return cycle


def concave_polygon(chain: Sequence[Point]) -> ToricRegion:
    """Concave region from its inner boundary chain (A,0), ..., (0,B).

    The region is everything in the quadrant on the origin side of the
    chain.  Validity means the complement beyond the chain is convex,
    checked by (reversed-orientation) cross-product signs including the two
    axis rays that close off the complement.
    """
    chain = tuple((as_rat(x), as_rat(y)) for x, y in chain)
    if len(chain) < 2:
        raise DomainError("concave chain needs at least the two axis endpoints")
    _check_chain_in_quadrant(chain)
    if chain[0][1] != 0 or chain[-1][0] != 0:
        raise DomainError("chain must start on the x-axis and end on the y-axis")
    if chain[0][0] <= 0 or chain[-1][1] <= 0:
        raise DomainError("axis endpoints must be positive")

    dirs = [(-1, 0)]
    dirs += [
        (b[0] - a[0], b[1] - a[1]) for a, b in zip(chain, chain[1:])
    ]
    dirs += [(0, 1)]
    for u, v in zip(dirs, dirs[1:]):
        if u == (0, 0) or v == (0, 0):
            raise DomainError("degenerate (repeated) chain vertex")
        if _vcross(u, v) > 0:
            raise DomainError("complement of the region is not convex (cross sign)")
    return ToricRegion(RegionKind.CONCAVE_POLYGON, boundary=chain)


def lp_ball(p: float, r: Num = 1) -> ToricRegion:
    """The region r * {x^(p/2) + y^(p/2) <= 1} in moment-map units.

    With scale r = 1 this is the moment image of the complex l^p ball of
    radius 1/sqrt(pi); a general complex radius rho corresponds to
    r = pi * rho^2.  Concave for p < 2, convex for p > 2, the round ball
    (an ellipsoid) at p = 2.
    """
    p = float(p)
    if p <= 0:
        raise DomainError("lp region needs p > 0")
    if not r > 0:
        raise DomainError("lp region needs scale r > 0")
    return ToricRegion(RegionKind.LP_BALL, p=p, r=r, label=f"lp:{p},{r}")


def classify_quadrilateral(a: Num, b: Num, x: Num, y: Num) -> QuadClass:
    """Classify the quadrilateral with vertices (0,0), (a,0), (x,y), (0,b).

    Valid data satisfies x <= a, y <= b and the balance condition: when the
    diagonal test x/a + y/b is below 1 the corner must stay under both axis
    endpoints (x + y <= min(a,b)); above 1 it must reach past both
    (x + y >= max(a,b)).  Exactly 1 means the corner is on the segment and
    the quadrilateral degenerates to an ellipsoid triangle.
    """
    a, b, x, y = as_rat(a), as_rat(b), as_rat(x), as_rat(y)
    if min(a, b, x, y) < 0:
        return QuadClass.INVALID
    if x > a or y > b:
        return QuadClass.INVALID
    if a == 0 or b == 0:
        # x <= a and y <= b already hold, so the data degenerates to a
        # segment: the (possibly empty) ellipsoid.
        return QuadClass.ELLIPSOID
    t = Fraction(x, a) + Fraction(y, b)
    if t == 1:
        return QuadClass.ELLIPSOID
    if t < 1:
        return QuadClass.CONCAVE if x + y <= min(a, b) else QuadClass.INVALID
    return QuadClass.CONVEX if x + y >= max(a, b) else QuadClass.INVALID


def quadrilateral_region(a: Num, b: Num, x: Num, y: Num) -> ToricRegion:
    """Region of the toric quadrilateral with corner (x,y)."""
    a, b, x, y = as_rat(a), as_rat(b), as_rat(x), as_rat(y)
    cls = classify_quadrilateral(a, b, x, y)
    if cls == QuadClass.INVALID:
        raise DomainError(f"invalid quadrilateral data ({a},{b},{x},{y})")
    if cls == QuadClass.ELLIPSOID:
        return triangle(a, b)
    if cls == QuadClass.CONCAVE:
        return concave_polygon([(a, 0), (x, y), (0, b)])
    return convex_polygon([(a, 0), (x, y), (0, b)])


# ---------------------------------------------------------------------------
# functionals
# ---------------------------------------------------------------------------


def _check_direction(d) -> None:
    if len(d) != 2:
        raise DomainError("direction must have two components")
    if d[0] < 0 or d[1] < 0:
        raise DomainError("direction components must be nonnegative")
    if d[0] == 0 and d[1] == 0:
        raise DomainError("direction must be nonzero")


def support_norm(region: ToricRegion, d) -> Num:
    """sup of d . v over the region.

    Exact vertex maximum for polygonal kinds.  For l^p regions with p > 2
    the dual-exponent closed form (d1^P + d2^P)^(1/P) * r with
    P = p/(p-2); for p <= 2 the supremum sits at an axis endpoint.
    """
    _check_direction(d)
    if region.is_polygonal:
        return max(d[0] * v[0] + d[1] * v[1] for v in region.boundary)
    p, r = region.p, region.r
    if p > 2.0:
        P = p / (p - 2.0)
        return (float(d[0]) ** P + float(d[1]) ** P) ** (1.0 / P) * float(r)
    # For p <= 2 the region sits inside the triangle with legs r and still
    # touches the axis endpoints, so the supremum is attained on an axis.
    m = max(d[0], d[1])
    if isinstance(m, (int, Fraction)) and isinstance(r, (int, Fraction)):
        return Fraction(m) * Fraction(r)
    return float(m) * float(r)


def cosupport(region: ToricRegion, d) -> Num:
    """inf of d . v over the quadrant complement of the region.

    Exact vertex minimum over the inner boundary for concave polygonal
    kinds.  For l^p regions with p < 2 the reverse-dual closed form
    (d1^q + d2^q)^(1/q) * r with q = p/(p-2) < 0.  Directions with a zero
    component see the far axis rays of the complement, so the infimum is 0.
    """
    _check_direction(d)
    if not region.is_concave:
        raise WrongKindError("cosupport needs a concave region")
    if d[0] == 0 or d[1] == 0:
        return Fraction(0) if region.is_polygonal else 0.0
    if region.is_polygonal:
        return min(d[0] * v[0] + d[1] * v[1] for v in region.boundary)
    p, r = region.p, region.r
    if p == 2.0:
        return min(d[0], d[1]) * float(r)
    q = p / (p - 2.0)
    return (float(d[0]) ** q + float(d[1]) ** q) ** (1.0 / q) * float(r)


def scale_region(region: ToricRegion, zeta: Num) -> ToricRegion:
    """Dilate the region by zeta in moment-map units (coordinates scale by zeta)."""
    if zeta <= 0:
        raise DomainError("scale factor must be positive")
    if region.kind == RegionKind.LP_BALL:
        z = as_rat(zeta) if isinstance(region.r, (int, Fraction)) and isinstance(zeta, (int, Fraction)) else float(zeta)
        return ToricRegion(RegionKind.LP_BALL, p=region.p, r=region.r * z)
    z = as_rat(zeta)
    chain = tuple((z * v[0], z * v[1]) for v in region.boundary)
    return ToricRegion(region.kind, boundary=chain)


# ---------------------------------------------------------------------------
# membership and containment
# ---------------------------------------------------------------------------


def point_in_region(region: ToricRegion, pt, strict: bool = False) -> bool:
    """Exact membership test; closed by default.

    With ``strict`` the test asks for the interior relative to the quadrant
    (points on the coordinate axes count as interior when they are strictly
    inside the symmetrized region; points on the outer boundary do not).
    """
    x, y = pt
    if x < 0 or y < 0:
        return False

    if region.kind == RegionKind.LP_BALL:
        p, r = region.p, float(region.r)
        val = (float(x) / r) ** (p / 2.0) + (float(y) / r) ** (p / 2.0)
        return val < 1.0 if strict else val <= 1.0

    if region.kind == RegionKind.CONCAVE_POLYGON:
        # The complement beyond the chain is the set where every edge cross
        # value is <= 0 (the origin sits on the positive side of each edge).
        chain = region.boundary
        best = max(_cross(u, v, (x, y)) for u, v in zip(chain, chain[1:]))
        return best > 0 if strict else best >= 0

    if strict:
        cycle = _symmetrized_cycle(region.boundary)
        n = len(cycle)
        return all(
            _cross(cycle[i], cycle[(i + 1) % n], (x, y)) > 0 for i in range(n)
        )
    cycle = [(Fraction(0), Fraction(0))] + list(region.boundary)
    n = len(cycle)
    return all(_cross(cycle[i], cycle[(i + 1) % n], (x, y)) >= 0 for i in range(n))


def region_contains(outer: ToricRegion, inner: ToricRegion, samples: int = 256):
    """Decide inner subset-of outer.  Returns (contained, exact_flag).

    Exact routes: convex inside convex (the inner region is the hull of the
    origin and its chain, so chain membership suffices) and concave inside
    concave (complements are convex with the same recession cone, so the
    outer chain generating the smaller complement must lie in the larger
    one).  Mixed polygonal kinds and analytic regions fall back to a
    documented boundary sample grid and are flagged numeric.
    """
    if inner.is_polygonal and outer.is_polygonal:
        if inner.is_convex and outer.is_convex:
            return all(point_in_region(outer, v) for v in inner.boundary), True
        if inner.is_concave and outer.is_concave:
            chain = inner.boundary
            ok = all(
                max(_cross(u, v, w) for u, v in zip(chain, chain[1:])) <= 0
                for w in outer.boundary
            )
            return ok, True
    pts = _boundary_samples(inner, samples)
    return all(point_in_region(outer, pt) for pt in pts), False


def _boundary_samples(region: ToricRegion, samples: int):
    if region.is_polygonal:
        return list(region.boundary)
    p, r = region.p, float(region.r)
    out = []
    for i in range(samples + 1):
        t = i / samples
        # parametrize x^(p/2) share by t
        u = t
        x = r * u ** (2.0 / p)
        y = r * (1.0 - u) ** (2.0 / p)
        out.append((x, y))
    return out


# ---------------------------------------------------------------------------
# rational bracketing of l^p regions
# ---------------------------------------------------------------------------

_NUDGE = Fraction(1, 10**9)


def _rationalize(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**12)


def _lp_curve_points(p: float, n: int):
    # n+1 points on x^(p/2) + y^(p/2) = 1, axis endpoints included.
    pts = []
    for i in range(n + 1):
        s = i / n
        pts.append(((1.0 - s) ** (2.0 / p), s ** (2.0 / p)))
    return pts


def _lp_tangent_chain(p: float, n: int):
    # Chain of consecutive tangent-line intersections along the curve.
    # Tangent at (x0,y0): x0^(p/2-1) (x-x0) + y0^(p/2-1) (y-y0) = 0 after
    # dropping the common p/2 factor.
    pts = _lp_curve_points(p, n)[1:-1]
    lines = []
    for (x0, y0) in pts:
        nx = x0 ** (p / 2.0 - 1.0)
        ny = y0 ** (p / 2.0 - 1.0)
        c = nx * x0 + ny * y0
        lines.append((nx, ny, c))
    chain = []
    first = lines[0]
    chain.append((first[2] / first[0], 0.0))
    for (a1, b1, c1), (a2, b2, c2) in zip(lines, lines[1:]):
        det = a1 * b2 - a2 * b1
        chain.append(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    last = lines[-1]
    chain.append((0.0, last[2] / last[1]))
    return chain


def lp_inner_polygon(p: float, r: Num = 1, n: int = 64) -> ToricRegion:
    """Rational polygonal region certified inside the l^p region."""
    if p == 2.0:
        return triangle(as_rat(r) * (1 - _NUDGE), as_rat(r) * (1 - _NUDGE))
    shrink = as_rat(r) * (1 - _NUDGE)
    if p < 2.0:
        # Tangent chain bounds the complement from inside, so the region it
        # cuts out sits inside the l^p region; shrink to absorb rounding.
        chain = [
            (_rationalize(x) * shrink, _rationalize(y) * shrink)
            for x, y in _lp_tangent_chain(p, n)
        ]
        return concave_polygon(chain)
    chain = [
        (_rationalize(x) * shrink, _rationalize(y) * shrink)
        for x, y in _lp_curve_points(p, n)
    ]
    return convex_polygon(chain)


def lp_outer_polygon(p: float, r: Num = 1, n: int = 64) -> ToricRegion:
    """Rational polygonal region certified to contain the l^p region."""
    if p == 2.0:
        return triangle(as_rat(r) * (1 + _NUDGE), as_rat(r) * (1 + _NUDGE))
    grow = as_rat(r) * (1 + _NUDGE)
    if p < 2.0:
        # Chords of the convex complement stay inside it, so the chord chain
        # cuts out a region containing the l^p region.
        chain = [
            (_rationalize(x) * grow, _rationalize(y) * grow)
            for x, y in _lp_curve_points(p, n)
        ]
        chain[0] = (chain[0][0], Fraction(0))
        chain[-1] = (Fraction(0), chain[-1][1])
        return concave_polygon(chain)
    chain = [
        (_rationalize(x) * grow, _rationalize(y) * grow)
        for x, y in _lp_tangent_chain(p, n)
    ]
    chain[0] = (chain[0][0], Fraction(0))
    chain[-1] = (Fraction(0), chain[-1][1])
    return convex_polygon(chain)


# ---------------------------------------------------------------------------
# the domain-spec mini-language (shared with the CLI)
# ---------------------------------------------------------------------------


class SpecParseError(DomainError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"cannot parse domain spec {text!r} at position {pos}: {message}")
        self.pos = pos


def _parse_rat(text: str, chunk: str, pos: int) -> Fraction:
    try:
        return Fraction(chunk)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecParseError(text, pos, f"bad rational {chunk!r} ({exc})") from None


def _parse_point(text: str, chunk: str, pos: int):
    if "," in chunk:
        parts = chunk.split(",")
        if len(parts) != 2:
            raise SpecParseError(text, pos, f"point {chunk!r} needs two coordinates")
        return (_parse_rat(text, parts[0], pos), _parse_rat(text, parts[1], pos))
    parts = chunk.split("/")
    if len(parts) == 2:
        return (_parse_rat(text, parts[0], pos), _parse_rat(text, parts[1], pos))
    if len(parts) == 4:
        return (
            _parse_rat(text, parts[0] + "/" + parts[1], pos),
            _parse_rat(text, parts[2] + "/" + parts[3], pos),
        )
    raise SpecParseError(
        text, pos, f"point {chunk!r} must be x,y or x/y (2 or 4 slash-separated parts)"
    )


def parse_domain_spec(text: str) -> ToricRegion:
    """Parse the mini-language shared between the library and the CLI.

    Forms: ``polydisk:a,b``, ``ellipsoid:a,b``, ``quad:a,b,x,y``,
    ``lp:p,r``, ``convex-poly:x1/y1;x2/y2;...``, ``concave-poly:...``.
    Rationals are written ``p/q`` or as integers.
    """
    if ":" not in text:
        raise SpecParseError(text, 0, "missing ':' after the region kind")
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    base = len(kind) + 1
    if kind in ("polydisk", "ellipsoid", "quad", "lp"):
        chunks = rest.split(",")
        vals = []
        pos = base
        for c in chunks:
            vals.append(_parse_rat(text, c.strip(), pos))
            pos += len(c) + 1
        if kind == "polydisk":
            if len(vals) != 2:
                raise SpecParseError(text, base, "polydisk takes a,b")
            return rectangle(*vals)
        if kind == "ellipsoid":
            if len(vals) != 2:
                raise SpecParseError(text, base, "ellipsoid takes a,b")
            return triangle(*vals)
        if kind == "quad":
            if len(vals) != 4:
                raise SpecParseError(text, base, "quad takes a,b,x,y")
            try:
                return quadrilateral_region(*vals)
            except DomainError as exc:
                raise SpecParseError(text, base, str(exc)) from None
        if len(vals) == 1:
            vals.append(Fraction(1))
        if len(vals) != 2:
            raise SpecParseError(text, base, "lp takes p,r")
        return lp_ball(float(vals[0]), vals[1])
    if kind in ("convex-poly", "concave-poly"):
        pts = []
        pos = base
        for c in rest.split(";"):
            pts.append(_parse_point(text, c.strip(), pos))
            pos += len(c) + 1
        try:
            if kind == "convex-poly":
                chain = pts[1:] if pts and pts[0] == (0, 0) else pts
                return convex_polygon(chain)
            return concave_polygon(pts)
        except DomainError as exc:
            raise SpecParseError(text, base, str(exc)) from None
    raise SpecParseError(text, 0, f"unknown region kind {kind!r}")
