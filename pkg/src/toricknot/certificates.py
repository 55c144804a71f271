"""Embedding-existence certificates and upper bounds for the ellipsoid
dilation constant.

Each ``check_*`` function gates its hypotheses, assembles the ball-packing
instance whose feasibility is equivalent to the claimed family of
embeddings (one embedding for every dilation factor above 1), runs the
Cremona reduction, and wraps the outcome in a replayable certificate.

``delta_ell_upper`` turns those certificate families into a numeric upper
bound for delta_ell(X) = inf { alpha : X embeds in an ellipsoid that
embeds in alpha * interior(X) }, picking the best admissible witness data
out of the region's vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .cremona import PackingResult, packs
from .domains import DomainError, RegionKind, ToricRegion, as_rat, cosupport, support_norm
from .weights import WeightSeq, ellipsoid_weights


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Outcome of one embedding-family check.

    ``verified`` is true exactly when every hypothesis held and every
    packing step reduced to yes.  ``route`` lists the reduction steps:
    hypothesis gates and the packing instance with its trace.
    """

    source: str
    target: str
    hypotheses: tuple
    packing: Optional[PackingResult]
    verified: bool
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "alpha": "any > 1",
            "hypotheses": [{"name": n, "holds": ok} for n, ok in self.hypotheses],
            "packing": self.packing.as_dict() if self.packing else None,
            "verified": self.verified,
            "reason": self.reason,
        }


def _certificate(source, target, hyps, instance=None, t=None) -> EmbeddingCertificate:
    failed = [name for name, ok in hyps if not ok]
    if failed:
        return EmbeddingCertificate(
            source, target, tuple(hyps), None, False,
            reason="hypothesis failed: " + ", ".join(failed),
        )
    result = packs(instance, t)
    return EmbeddingCertificate(
        source, target, tuple(hyps), result, result.packs,
        reason="" if result.packs else f"packing rejected ({result.reason})",
    )


def check_cvxaxy(a, b, x, y) -> EmbeddingCertificate:
    """E(a, x+y) embeds in every dilate of the convex quadrilateral.

    Hypotheses: 0 < x <= a, 0 <= y <= b, a <= b <= x + y.  The packing
    instance joins the source ellipsoid weights with the quadrilateral's
    negative weights against its head x + y.
    """
    a, b, x, y = (as_rat(v) for v in (a, b, x, y))
    hyps = [
        ("0 < x <= a", 0 < x <= a),
        ("0 <= y <= b", 0 <= y <= b),
        ("a <= b", a <= b),
        ("b <= x + y", b <= x + y),
    ]
    instance = None
    if all(ok for _, ok in hyps):
        instance = (
            ellipsoid_weights(a, x + y)
            + ellipsoid_weights(x + y - a, y)
            + ellipsoid_weights(x + y - b, x)
        )
    return _certificate(
        f"ellipsoid:{a},{x + y}", f"quad:{a},{b},{x},{y}", hyps, instance, x + y
    )


def check_ccvaxy(a, b, x, y) -> EmbeddingCertificate:
    """The concave quadrilateral embeds in every dilate of E(b, x+y).

    Hypotheses: 0 <= x, 0 <= y, 0 < x + y <= a <= b.  The instance joins
    the quadrilateral's weight sequence with the target ellipsoid's
    negative weights against the target head b.
    """
    a, b, x, y = (as_rat(v) for v in (a, b, x, y))
    hyps = [
        ("x >= 0 and y >= 0", x >= 0 and y >= 0),
        ("0 < x + y", 0 < x + y),
        ("x + y <= a", x + y <= a),
        ("a <= b", a <= b),
    ]
    instance = None
    if all(ok for _, ok in hyps):
        instance = (
            WeightSeq([x + y])
            + ellipsoid_weights(a - x - y, y)
            + ellipsoid_weights(b - x - y, x)
            + ellipsoid_weights(b, b - x - y)
        )
    return _certificate(
        f"quad:{a},{b},{x},{y}", f"ellipsoid:{b},{x + y}", hyps, instance, b
    )


def check_longembed(m: int, eps) -> EmbeddingCertificate:
    """E(1, 2m + eps) embeds in every dilate of P(1, m + eps).

    Hypotheses: m a positive integer, eps rational in [0, 1).
    """
    eps = as_rat(eps)
    if not (isinstance(m, int) and m >= 1):
        raise DomainError("m must be a positive integer")
    if not (0 <= eps < 1):
        raise DomainError("eps must lie in [0, 1)")
    hyps = [("m >= 1", True), ("0 <= eps < 1", True)]
    instance = (
        ellipsoid_weights(1, 2 * m + eps)
        + ellipsoid_weights(m + eps, m + eps)
        + ellipsoid_weights(1, 1)
    )
    return _certificate(
        f"ellipsoid:1,{2 * m + eps}", f"polydisk:1,{m + eps}", hyps, instance, m + 1 + eps
    )


def check_step2(a, y, b) -> EmbeddingCertificate:
    """E((a+b)/3, 2a + y) embeds in every dilate of the quadrilateral
    T(a, b, a, y).

    Hypotheses: 0 < a <= y <= b <= 2a.
    """
    a, y, b = as_rat(a), as_rat(y), as_rat(b)
    hyps = [
        ("0 < a <= y", 0 < a <= y),
        ("y <= b", y <= b),
        ("b <= 2a", b <= 2 * a),
    ]
    instance = None
    if all(ok for _, ok in hyps):
        instance = (
            ellipsoid_weights(Fraction(a + b, 3), 2 * a + y)
            + ellipsoid_weights(y, y)
            + ellipsoid_weights(a + y - b, a)
        )
    return _certificate(
        f"ellipsoid:{Fraction(a + b, 3)},{2 * a + y}", f"quad:{a},{b},{a},{y}",
        hyps, instance, a + y,
    )


# ---------------------------------------------------------------------------
# delta_ell upper bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaBound:
    bound: object  # Fraction for polygonal regions, float for analytic ones
    route: str
    exact: bool
    witness: dict = field(default_factory=dict)
    certificate: Optional[EmbeddingCertificate] = None

    def as_float(self) -> float:
        return float(self.bound)

    def as_dict(self) -> dict:
        return {
            "bound": str(self.bound) if self.exact else float(self.bound),
            "route": self.route,
            "exact": self.exact,
            "witness": {k: str(v) for k, v in self.witness.items()},
            "certificate": self.certificate.as_dict() if self.certificate else None,
        }


def _convex_witness_candidates(region: ToricRegion):
    """Candidate bounds from interior vertices of a convex region.

    A vertex (x, y) with positive coordinates is admissible when axis data
    (a, 0), (0, b) with x <= a <= b <= x + y exists in the region; the
    resulting bound is the support norm of (1/a, 1/(x+y)).  Both axis
    orientations are tried; only the one whose first intercept is the
    smaller can satisfy a <= b.
    """
    out = []
    sx, sy = region.axis_supports()
    for flip in (False, True):
        a_max, b_max = (sx, sy) if not flip else (sy, sx)
        for vx, vy in region.boundary:
            x, y = (vx, vy) if not flip else (vy, vx)
            if x <= 0 or y <= 0:
                continue
            a = min(a_max, x + y)
            if a < x:
                continue
            b = min(b_max, x + y)
            if max(a, y) > b:
                continue
            d = (Fraction(1, 1) / a, Fraction(1, 1) / (x + y))
            if flip:
                d = (d[1], d[0])
            bound = support_norm(region, d)
            out.append(
                DeltaBound(bound, "convex-witness", region.is_polygonal,
                           {"a": a, "b": b, "x": x, "y": y, "flipped": flip})
            )
    return out


def _concave_witness_candidates(region: ToricRegion):
    """Candidate bounds from inner-boundary vertices of a concave region.

    A witness (x, y) on the inner boundary pairs with the least admissible
    axis data a = max(A, x+y), b = max(B, a); the bound is the reciprocal
    cosupport of (1/b, 1/(x+y)).
    """
    out = []
    A, B = region.inner_intercepts()
    for flip in (False, True):
        a_end, b_end = (A, B) if not flip else (B, A)
        for vx, vy in region.boundary:
            x, y = (vx, vy) if not flip else (vy, vx)
            if x + y <= 0:
                continue
            a = max(a_end, x + y)
            b = max(b_end, a)
            d = (Fraction(1, 1) / b, Fraction(1, 1) / (x + y))
            if flip:
                d = (d[1], d[0])
            val = cosupport(region, d)
            if val <= 0:
                continue
            out.append(
                DeltaBound(1 / val, "concave-witness", region.is_polygonal,
                           {"a": a, "b": b, "x": x, "y": y, "flipped": flip})
            )
    return out


def _rectangle_three_ball_candidates(region: ToricRegion):
    """The three-ball route for a polydisk P(a, b) with a <= b <= 2a."""
    sx, sy = region.axis_supports()
    a, b = min(sx, sy), max(sx, sy)
    if not (a <= b <= 2 * a):
        return []
    d = (Fraction(3, 1) / (a + b), Fraction(1, 1) / (2 * a + b))
    if sy < sx:
        d = (d[1], d[0])
    bound = support_norm(region, d)
    return [DeltaBound(bound, "polydisk-three-ball", True, {"a": a, "b": b})]


def _inclusion_only_bound(region: ToricRegion) -> DeltaBound:
    """Fallback from an inscribed ellipsoid.

    For a convex region the triangle through the axis intercepts is
    inscribed; for a concave one the inscribed round ball reaches the
    cosupport of the diagonal.  Either way the bound is the support norm of
    the inscribed ellipsoid's dual data.
    """
    if region.is_concave and not region.is_ellipsoid:
        nu = cosupport(region, (1, 1))
        bound = support_norm(region, (1, 1)) / nu
        return DeltaBound(bound, "inclusion-only", region.is_polygonal, {"ball": nu})
    sx, sy = region.axis_supports()
    d = (Fraction(1, 1) / sx, Fraction(1, 1) / sy) if region.is_polygonal else (1.0 / float(sx), 1.0 / float(sy))
    return DeltaBound(support_norm(region, d), "inclusion-only", region.is_polygonal,
                      {"a": sx, "b": sy})


def _lp_delta_candidates(region: ToricRegion):
    p = region.p
    if p == 2.0:
        return [DeltaBound(1.0, "ellipsoid-identity", False, {})]
    if p < 2.0:
        q = p / (p - 2.0)
        bound = (1.5) ** (1.0 / abs(q))
        return [DeltaBound(bound, "concave-witness", False, {"q": q})]
    P = p / (p - 2.0)
    bound = (1.5) ** (1.0 / P)
    return [DeltaBound(bound, "convex-witness", False, {"P": P})]


def delta_ell_upper(region: ToricRegion) -> DeltaBound:
    """Least applicable upper bound for delta_ell of the region's domain.

    Routes: interior-vertex witnesses for convex regions, inner-boundary
    witnesses for concave ones, the dedicated three-ball route for
    polydisks near a cube, the closed forms for analytic l^p regions, and
    an inscribed-ellipsoid fallback when no witness is admissible.
    """
    if region.kind == RegionKind.LP_BALL:
        cands = _lp_delta_candidates(region)
    elif region.kind == RegionKind.TRIANGLE:
        # An ellipsoid embeds into every dilate of itself.
        cands = [DeltaBound(Fraction(1), "ellipsoid-identity", True, {})]
    elif region.kind == RegionKind.CONCAVE_POLYGON:
        cands = _concave_witness_candidates(region)
    else:
        cands = _convex_witness_candidates(region) + _rectangle_three_ball_candidates(region)
        if not cands:
            cands = [_inclusion_only_bound(region)]
    if not cands:
        cands = [_inclusion_only_bound(region)]
    best = min(cands, key=lambda c: (c.bound, c.route))
    return _attach_certificate(best)


def _attach_certificate(bound: DeltaBound) -> DeltaBound:
    """Back the winning route with its replayable embedding certificate.

    The witness routes reduce to the quadrilateral embedding families, so
    the exact packing trace behind the bound can be replayed move by move.
    Inclusion-style routes carry no packing step; analytic routes point at
    the rational bracketing helpers instead.
    """
    w = bound.witness
    cert = None
    if not bound.exact:
        return bound
    if bound.route == "convex-witness":
        cert = check_cvxaxy(w["a"], w["b"], w["x"], w["y"])
    elif bound.route == "concave-witness":
        cert = check_ccvaxy(w["a"], w["b"], w["x"], w["y"])
    elif bound.route == "polydisk-three-ball":
        cert = check_step2(w["a"], w["b"], w["b"])
    if cert is not None and not cert.verified:
        raise DomainError(f"internal: winning route {bound.route} failed its certificate")
    return replace(bound, certificate=cert)
