"""Knottedness verdicts: lower bounds against upper bounds.

The unknotted dilation constant delta_ell_u(X) (same as delta_ell but with
the composite embedding through the ellipsoid required unknotted) is
bounded below by barcode data of the domain:

* convex region:  ||(1,1)||* / max(||(1,0)||*, ||(0,1)||*),
* concave region: min([(2,1)], [(1,2)]) / [(1,1)].

A strict gap delta_ell(X) < delta_ell_u(X) certifies that every dilation
factor in the open window between the bounds admits a knotted embedding of
X into that dilate of its interior.  Ellipsoids never produce verdicts:
their embeddings into dilates of themselves are never knotted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .certificates import DeltaBound, check_longembed, delta_ell_upper
from .domains import (
    DomainError,
    RegionKind,
    ToricRegion,
    WrongKindError,
    as_rat,
    cosupport,
    point_in_region,
    support_norm,
    triangle,
)

ANALYTIC_MARGIN = 1e-9


class VerdictStatus(Enum):
    KNOTTED = "knotted"
    INCONCLUSIVE = "inconclusive"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    delta_ell_upper: Optional[float]
    delta_u_lower: Optional[float]
    alpha_window: Optional[tuple]
    case: str
    notes: tuple = ()
    bound_detail: Optional[DeltaBound] = None

    def as_dict(self) -> dict:
        window = None
        if self.alpha_window is not None:
            window = [
                str(self.alpha_window[0]) if isinstance(self.alpha_window[0], Fraction) else self.alpha_window[0],
                str(self.alpha_window[1]) if isinstance(self.alpha_window[1], Fraction) else self.alpha_window[1],
            ]
        return {
            "status": self.status.value,
            "delta_ell_upper": _num(self.delta_ell_upper),
            "delta_u_lower": _num(self.delta_u_lower),
            "alpha_window": window,
            "case": self.case,
            "notes": list(self.notes),
            "delta_route": self.bound_detail.as_dict() if self.bound_detail else None,
        }


def _num(x):
    if x is None:
        return None
    return str(x) if isinstance(x, Fraction) else float(x)


def delta_u_lower(region: ToricRegion):
    """Lower bound for the unknotted dilation constant.

    Exact (a Fraction) for polygonal regions; closed form in double
    precision for analytic l^p regions.
    """
    if region.kind == RegionKind.LP_BALL:
        p = region.p
        if p == 2.0:
            return 1.0
        if p > 2.0:
            P = p / (p - 2.0)
            return 2.0 ** (1.0 / P)
        q = p / (p - 2.0)
        return (2.0 ** (q - 1.0) + 0.5) ** (-1.0 / abs(q))
    if region.is_convex:
        sx, sy = region.axis_supports()
        return support_norm(region, (1, 1)) / max(sx, sy)
    num = min(cosupport(region, (2, 1)), cosupport(region, (1, 2)))
    den = cosupport(region, (1, 1))
    if den <= 0:
        raise DomainError("degenerate concave region: zero diagonal cosupport")
    return num / den


def _region_case(region: ToricRegion) -> str:
    if region.is_ellipsoid:
        return "ellipsoid"
    if region.kind == RegionKind.LP_BALL:
        return "lp-ball"
    if region.kind == RegionKind.RECTANGLE:
        return "polydisk"
    if region.is_convex:
        return "convex-toric"
    return "concave-toric"


def knotted_verdict(region: ToricRegion) -> Verdict:
    """Compare the bounds and issue a verdict.

    Knotted requires a strict gap; equality (or a crossing) is
    inconclusive, and for analytic regions a gap thinner than the numeric
    margin is reported inconclusive as well.  Ellipsoids are not
    applicable: their self-embeddings are always unknotted.
    """
    case = _region_case(region)
    if region.is_ellipsoid:
        return Verdict(
            VerdictStatus.NOT_APPLICABLE, None, None, None, case,
            notes=("ellipsoid embeddings into dilates of themselves are never knotted",),
        )
    upper = delta_ell_upper(region)
    lower = delta_u_lower(region)
    notes = []
    exact = upper.exact and isinstance(lower, Fraction)
    if exact:
        if upper.bound < lower:
            window = (upper.bound, lower)
            notes.append("exact rational comparison")
            if 1 <= window[0] and window[1] <= 2:
                notes.append("window lies in (1, 2)")
            return Verdict(VerdictStatus.KNOTTED, upper.bound, lower, window, case,
                           tuple(notes), upper)
        notes.append("bounds touch or cross; no strict gap")
        return Verdict(VerdictStatus.INCONCLUSIVE, upper.bound, lower, None, case,
                       tuple(notes), upper)
    up, lo = float(upper.bound), float(lower)
    if lo - up > ANALYTIC_MARGIN:
        notes.append(f"analytic comparison with margin {ANALYTIC_MARGIN:g}")
        window = (up, lo)
        if 1 <= up and lo <= 2:
            notes.append("window lies in (1, 2)")
        return Verdict(VerdictStatus.KNOTTED, up, lo, window, case, tuple(notes), upper)
    if abs(lo - up) <= ANALYTIC_MARGIN:
        notes.append("numeric margin: bounds within tolerance of each other")
    else:
        notes.append("bounds touch or cross; no strict gap")
    return Verdict(VerdictStatus.INCONCLUSIVE, up, lo, None, case, tuple(notes), upper)


def lp_threshold_check(p: float) -> bool:
    """Whether the l^p region admits a knotted-verdict gap.

    For p < 2 the concave comparison reduces to 2^(q-1) + 1/2 < 2/3 with
    q = p/(p-2); for p > 2 the convex route always succeeds.  p = 2 is the
    round ball and not applicable.
    """
    if p <= 0:
        raise DomainError("p must be positive")
    if p == 2.0:
        raise WrongKindError("p = 2 is the round ball; not applicable")
    if p > 2.0:
        return True
    q = p / (p - 2.0)
    return 2.0 ** (q - 1.0) + 0.5 < 2.0 / 3.0


def polydisk_knot_check(a, b, m: int, eps) -> Verdict:
    """Knotted embedding of P(a, b) into the open P(1, m + eps).

    The four gate inequalities are checked exactly:
    a + b/(2m+eps) < 1,  0 <= a <= b,  b < m + eps,  m + eps < a + b.
    The certificate routes through the long-ellipsoid embedding
    E(1, 2m+eps) -> alpha * P(1, m+eps).
    """
    a, b, eps = as_rat(a), as_rat(b), as_rat(eps)
    if not (isinstance(m, int) and m >= 1):
        raise DomainError("m must be a positive integer")
    if not (0 <= eps < 1):
        raise DomainError("eps must lie in [0, 1)")
    y = m + eps
    gates = [
        ("a + b/(2m+eps) < 1", a + Fraction(b, 2 * m + eps) < 1),
        ("0 <= a <= b", 0 <= a <= b),
        ("b < m + eps", b < y),
        ("m + eps < a + b", y < a + b),
    ]
    notes = tuple(f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in gates)
    if all(ok for _, ok in gates):
        cert = check_longembed(m, eps)
        notes = notes + (
            "route: restrict the long-ellipsoid embedding; knotted since the "
            "target's long side stays below a + b",
        )
        status = VerdictStatus.KNOTTED if cert.verified else VerdictStatus.INCONCLUSIVE
        return Verdict(status, None, None, None, "polydisk-into-polydisk", notes)
    return Verdict(VerdictStatus.INCONCLUSIVE, None, None, None,
                   "polydisk-into-polydisk", notes)


def split_integer_fraction(y) -> tuple:
    """y = m + eps with m a positive integer and eps in [0, 1)."""
    y = as_rat(y)
    m = int(y) if y == int(y) else int(math.floor(y))
    eps = y - m
    if m < 1:
        raise DomainError("need y >= 1")
    return m, eps


@dataclass(frozen=True)
class PolydiskPair:
    """Explicit polydisk data for knotted embeddings in both directions."""

    into: tuple  # (a, b): knotted P(a, b) -> P(1, y) interior
    outof: tuple  # (c, d): knotted P(1, y) -> P(c, d) interior
    mu: Fraction  # the dilation parameter used by the out-of direction

    def as_dict(self) -> dict:
        return {
            "into": [str(v) for v in self.into],
            "from": [str(v) for v in self.outof],
            "mu": str(self.mu),
        }


def allpoly_params(y) -> PolydiskPair:
    """Explicit knotted-polydisk data for the target P(1, y), any y >= 1.

    The inward pair is (1/2, m + (3 eps - 1)/4) for y = m + eps.  The
    outward pair comes from scaling the inward construction for a nearby
    target: writing y = 2k + delta with delta in [-1, 1), the scaling
    parameter is chosen as the midpoint of its admissible open interval.
    """
    y = as_rat(y)
    if y < 1:
        raise DomainError("need y >= 1")
    m, eps = split_integer_fraction(y)
    into = (Fraction(1, 2), m + Fraction(3 * eps - 1, 4))

    # y = 2k + delta, k a positive integer, delta in [-1, 1).
    k = int((y + 1) // 2)
    delta = y - 2 * k
    if delta >= 0:
        lo = Fraction(2 * k + delta, 2 * (2 * k + delta + 1))
        hi = Fraction(4 * k + delta, 8 * k + 3 * delta)
        mu = (lo + hi) / 2
        c = 1 / mu
        d = (k + Fraction(delta, 2)) / mu
    else:
        lo = 1 + Fraction(delta, 4 * k)
        hi = 1 + Fraction(1 + delta, 2 * k)
        alpha = (lo + hi) / 2
        mu = alpha
        c = 2 * alpha
        d = 2 * alpha * k
    return PolydiskPair(into=into, outof=(c, d), mu=mu)


# ---------------------------------------------------------------------------
# products with large ellipsoid factors
# ---------------------------------------------------------------------------


def _cube_sandwich_capacity(region: ToricRegion):
    """c with ball(c) strictly inside the region inside the cube P(c, c)."""
    if not region.is_convex or region.is_ellipsoid:
        return None
    sx, sy = region.axis_supports()
    if sx != sy:
        return None
    c = sx
    ball = triangle(c, c)
    if not all(point_in_region(region, v) for v in ball.boundary):
        return None
    strictly_bigger = any(v[0] + v[1] > c for v in region.boundary)
    if not strictly_bigger:
        return None
    return c


def product_threshold(region: ToricRegion):
    """Minimal capacity R so that the product with any ellipsoid whose
    capacities all reach R carries a knotted self-embedding.

    Applicable to polydisks P(a, b) with a <= b < 2a (R = a + b) and to
    convex regions strictly between a ball and the cube sharing its
    capacity (R = the diagonal support norm).  Returns None otherwise.
    """
    if region.kind == RegionKind.LP_BALL:
        # p > 2 sits strictly between the ball and the cube of its scale
        return support_norm(region, (1, 1)) if region.p > 2.0 else None
    if region.kind == RegionKind.RECTANGLE:
        sx, sy = region.axis_supports()
        a, b = min(sx, sy), max(sx, sy)
        if b < 2 * a:
            return a + b
        return None
    c = _cube_sandwich_capacity(region)
    if c is None:
        return None
    return support_norm(region, (1, 1))


def product_verdict(region: ToricRegion, factors) -> Verdict:
    """Knottedness of the product of the region's domain with an ellipsoid.

    The ellipsoid factor capacities must all reach the product threshold;
    then the four-dimensional verdict transfers to the product.
    """
    base = knotted_verdict(region)
    R = product_threshold(region)
    if R is None:
        return Verdict(
            VerdictStatus.NOT_APPLICABLE, base.delta_ell_upper, base.delta_u_lower,
            None, "product", notes=("region outside the product construction's hypotheses",),
        )
    factors = [as_rat(f) if not isinstance(f, float) else f for f in factors]
    if not factors:
        raise DomainError("product needs at least one ellipsoid factor")
    if any(f < R for f in factors):
        return Verdict(
            VerdictStatus.INCONCLUSIVE, base.delta_ell_upper, base.delta_u_lower,
            None, "product",
            notes=(f"some factor is below the threshold {R}",),
        )
    if base.status != VerdictStatus.KNOTTED:
        return Verdict(base.status, base.delta_ell_upper, base.delta_u_lower, None,
                       "product", base.notes)
    return Verdict(
        VerdictStatus.KNOTTED, base.delta_ell_upper, base.delta_u_lower,
        base.alpha_window, "product",
        notes=base.notes + (f"factors at or above threshold {R}; rank gap persists in the product",),
    )
