"""Finite barcode-model complexes for smoothed toric domains.

Near the relevant action window a smoothed convex toric domain has, up to
the diagonal support norm, exactly two degree-3 orbits (actions at the two
axis support norms) and at most one degree-4 orbit (action at the diagonal
support norm); a smoothed concave domain has one degree-3 and one degree-4
generator at the diagonal cosupport and at most two degree-5 generators at
the mixed cosupports.  These short generator lists are realized here as
exact ``FilteredComplex`` instances, with each action placed at the exact
center value of its interval (window ranks are unchanged by the in-window
placement, and exact arithmetic is preserved).

Where the true differential is not pinned down by the window data the
models use overridable defaults: the convex model kills the difference of
the two degree-3 classes (total degree-3 homology of rank one), and the
concave model cancels each degree-5 generator against the degree-4 class
above the window.  Window ranks do not depend on these choices and the
tests assert that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .domains import DomainError, ToricRegion, as_rat, cosupport, support_norm
from .filtered import FilteredComplex, Generator, homology_rank, inclusion_image_rank


class NoWindowError(DomainError):
    """The action window of the requested model is empty."""


@dataclass(frozen=True)
class BarcodeModel:
    """A model complex together with its certified action window."""

    complex: FilteredComplex
    window: Tuple
    degree: int
    source: str
    notes: Tuple[str, ...] = ()

    def rank_at(self, level) -> int:
        return homology_rank(self.complex, self.degree, level)

    def image_rank(self, l1, l2) -> int:
        return inclusion_image_rank(self.complex, self.degree, l1, l2)

    def in_window(self, level) -> bool:
        lo, hi = self.window
        return lo < level < hi

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "window": [_num(self.window[0]), _num(self.window[1])],
            "generators": [
                {"id": g.gid, "degree": g.degree, "level": _num(g.level)}
                for g in self.complex.generators
            ],
            "source": self.source,
            "notes": list(self.notes),
        }


def _num(x):
    return str(x) if isinstance(x, Fraction) else float(x)


def _window_or_raise(lo, hi, delta, what: str):
    delta = as_rat(delta)
    if delta <= 0:
        raise DomainError("delta must be positive")
    if not (hi - lo > 2 * delta):
        raise NoWindowError(
            f"no window: {what} needs the gap {hi} - {lo} to exceed 2*delta = {2 * delta}"
        )
    return lo + delta, hi - delta


def barcode_convex(
    region: ToricRegion,
    delta,
    diff_coeffs: Tuple = (1, -1),
) -> BarcodeModel:
    """Three-generator model of a smoothed convex toric domain.

    Degree-3 generators at the two axis support norms, one degree-4
    generator at the diagonal support norm; the default differential sends
    the degree-4 generator to the difference of the degree-3 ones.  On the
    window (max axis norm + delta, diagonal norm - delta) the degree-3 rank
    is 2 and all inclusion maps are isomorphisms.
    """
    if not region.is_convex:
        raise DomainError("convex barcode model needs a convex region")
    sx, sy = region.axis_supports()
    diag = support_norm(region, (1, 1))
    lo, hi = _window_or_raise(max(sx, sy), diag, delta, "convex model")
    c1, c2 = (as_rat(c) for c in diff_coeffs)
    entries = {}
    if c1 != 0:
        entries[("e_x", "f_diag")] = c1
    if c2 != 0:
        entries[("e_y", "f_diag")] = c2
    cx = FilteredComplex(
        [
            Generator("e_x", 3, sx),
            Generator("e_y", 3, sy),
            Generator("f_diag", 4, diag),
        ],
        entries,
    )
    return BarcodeModel(
        cx, (lo, hi), 3, region.describe(),
        notes=("degree-3 actions at the axis support norms",
               "degree-4 action at the diagonal support norm"),
    )


def barcode_concave(
    region: ToricRegion,
    delta,
    diff_coeffs: Tuple = (1, 1),
) -> BarcodeModel:
    """Four-generator model of a smoothed concave toric domain.

    One degree-3 and one degree-4 generator at the diagonal cosupport (both
    closed: the degree-3 class generates the total degree-3 homology, which
    forces the degree-4 generator's boundary to vanish), and one degree-5
    generator at each mixed cosupport.  On the window (diagonal cosupport +
    delta, min mixed cosupport - delta) the degree-4 rank is 1.
    """
    if not region.is_concave:
        raise DomainError("concave barcode model needs a concave region")
    if region.is_ellipsoid:
        raise NoWindowError("no window: ellipsoid cosupports leave no gap")
    v11 = cosupport(region, (1, 1))
    v12 = cosupport(region, (1, 2))
    v21 = cosupport(region, (2, 1))
    lo, hi = _window_or_raise(v11, min(v12, v21), delta, "concave model")
    k1, k2 = (as_rat(c) for c in diff_coeffs)
    entries = {}
    if k1 != 0:
        entries[("b11", "c12")] = k1
    if k2 != 0:
        entries[("b11", "c21")] = k2
    cx = FilteredComplex(
        [
            Generator("a11", 3, v11),
            Generator("b11", 4, v11),
            Generator("c12", 5, v12),
            Generator("c21", 5, v21),
        ],
        entries,
    )
    return BarcodeModel(
        cx, (lo, hi), 4, region.describe(),
        notes=("degree-3/4 actions at the diagonal cosupport",
               "degree-5 actions at the mixed cosupports"),
    )


def barcode_product(
    region: ToricRegion,
    ellipsoid_factors: Sequence,
    delta,
    diff_coeffs: Tuple = (1, -1),
) -> BarcodeModel:
    """Window model of a convex region times a large-ellipsoid factor.

    With every ellipsoid capacity above the region's diagonal support norm,
    the low-action generator list is carried entirely by the region factor:
    two generators in degree n+1 at the axis support norms and at most one
    in degree n+2 at the diagonal norm, where 2n is the total dimension.
    """
    if not region.is_convex:
        raise DomainError("product model needs a convex first factor")
    factors = [float(f) for f in ellipsoid_factors]
    if not factors:
        raise DomainError("product model needs at least one ellipsoid capacity")
    diag = support_norm(region, (1, 1))
    if min(factors) <= diag:
        raise DomainError(
            f"every ellipsoid capacity must exceed the threshold {diag} "
            "(the region's diagonal support norm)"
        )
    n = 2 + len(factors)
    sx, sy = region.axis_supports()
    lo, hi = _window_or_raise(max(sx, sy), diag, delta, "product model")
    c1, c2 = (as_rat(c) for c in diff_coeffs)
    entries = {}
    if c1 != 0:
        entries[("e_x", "f_diag")] = c1
    if c2 != 0:
        entries[("e_y", "f_diag")] = c2
    cx = FilteredComplex(
        [
            Generator("e_x", n + 1, sx),
            Generator("e_y", n + 1, sy),
            Generator("f_diag", n + 2, diag),
        ],
        entries,
    )
    return BarcodeModel(
        cx, (lo, hi), n + 1, region.describe(),
        notes=(f"product with ellipsoid factors {factors}; total dimension {2 * n}",),
    )


# ---------------------------------------------------------------------------
# the ellipsoid comparison side
# ---------------------------------------------------------------------------


def ellipsoid_orbit_actions(a, b, degree: int, level, factors: Sequence = ()) -> list:
    """Actions of the irrational-model ellipsoid generators in one degree.

    For E(a, b) with a < b and b/a irrational the closed orbits are the
    covers of the two axis circles, with actions k*a and k*b and indices
    2k + 2*floor(k*a/b) + n - 1 and 2k + 2*floor(k*b/a) + n - 1.  With
    extra ellipsoid factors (capacities in ``factors``) the same list is
    valid for levels below the smallest factor, and n grows accordingly.
    Exact-integer ratios are counted as their nondegenerate perturbation.
    """
    a, b = as_rat(a), as_rat(b)
    if not 0 < a < b:
        raise DomainError("need 0 < a < b (perturb to an irrational ratio)")
    n = 2 + len(factors)
    if factors and not level < min(float(f) for f in factors):
        raise DomainError("ellipsoid orbit list is only valid below the smallest factor")
    out = []
    for c, other in ((a, b), (b, a)):
        k = 1
        while k * c <= level:
            cz = 2 * k + 2 * math.floor(Fraction(k) * c / other) + n - 1
            if cz == degree:
                out.append(k * c)
            k += 1
    return sorted(out)


def ellipsoid_orbit_count(a, b, degree: int, level, factors: Sequence = ()) -> int:
    """Number of irrational-model ellipsoid generators of one degree up to a level."""
    return len(ellipsoid_orbit_actions(a, b, degree, level, factors))
