"""Weight sequences of concave toric quadrilaterals and weight expansions
of convex ones.

A concave quadrilateral decomposes, after iterated corner blowups, into a
multiset of ball capacities: its weight sequence.  A convex quadrilateral
instead carries a head capacity (the smallest ball containing it) together
with the weight sequences of the complementary pieces: its weight
expansion.  Both reduce to the subtractive Euclid recursion on pairs of
rationals; here the recursion runs in quotient-remainder form so large
quotients cost one step instead of many.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .domains import DomainError, QuadClass, WrongKindError, as_rat, classify_quadrilateral


def _canonical(entries: Iterable[Fraction]) -> tuple:
    return tuple(sorted((e for e in entries if e != 0), reverse=True))


@dataclass(frozen=True)
class WeightSeq:
    """Unordered multiset of positive rationals, stored sorted descending."""

    entries: tuple

    def __init__(self, entries: Iterable = ()):
        object.__setattr__(self, "entries", _canonical(as_rat(e) for e in entries))
        if any(e < 0 for e in self.entries):
            raise DomainError("weight sequences contain positive entries only")

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other: "WeightSeq") -> "WeightSeq":
        return WeightSeq(self.entries + tuple(other))

    def square_sum(self) -> Fraction:
        return sum((e * e for e in self.entries), Fraction(0))

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def as_strings(self) -> list:
        return [str(e) for e in self.entries]


@dataclass(frozen=True)
class WeightExpansion:
    """Head capacity and negative weight sequence of a convex quadrilateral."""

    head: Fraction
    negatives: WeightSeq

    def __post_init__(self):
        if self.negatives and max(self.negatives) > self.head:
            raise DomainError("expansion head must dominate every negative weight")


def ellipsoid_weights(a, b) -> WeightSeq:
    """Weight sequence of the ellipsoid with capacities a, b.

    Defined by W(a,0) = W(0,a) = [] and W(a,b) = [a] + W(a, b-a) for
    0 < a <= b; symmetric in its arguments.  Runs as Euclid's algorithm:
    floor(b/a) copies of a at a time.
    """
    a, b = as_rat(a), as_rat(b)
    if a < 0 or b < 0:
        raise DomainError("ellipsoid capacities must be nonnegative")
    out = []
    while a > 0 and b > 0:
        if a > b:
            a, b = b, a
        k = b // a
        rem = b - k * a
        out.extend([a] * int(k))
        b = a
        a = rem
    return WeightSeq(out)


def concave_weights(a, b, x, y) -> WeightSeq:
    """Weight sequence of the concave quadrilateral with corner (x,y).

    The corner ball has capacity x + y; the two remaining wedges along the
    axes are equivalent to ellipsoids E(a-x-y, y) and E(b-x-y, x).
    """
    a, b, x, y = (as_rat(v) for v in (a, b, x, y))
    cls = classify_quadrilateral(a, b, x, y)
    if cls == QuadClass.ELLIPSOID:
        return ellipsoid_weights(a, b)
    if cls != QuadClass.CONCAVE:
        raise WrongKindError(f"({a},{b},{x},{y}) is not a concave quadrilateral: {cls.value}")
    return WeightSeq([x + y]) + ellipsoid_weights(a - x - y, y) + ellipsoid_weights(b - x - y, x)


def convex_expansion(a, b, x, y) -> WeightExpansion:
    """Weight expansion of the convex quadrilateral with corner (x,y).

    The head is x + y, the capacity of the smallest ball containing the
    quadrilateral; the negative weights are those of the two ellipsoid
    pieces completing it to that ball.  For the degenerate (ellipsoid)
    case the head is max(a,b) and the negatives are W(max, max - min).
    """
    a, b, x, y = (as_rat(v) for v in (a, b, x, y))
    cls = classify_quadrilateral(a, b, x, y)
    if cls == QuadClass.ELLIPSOID:
        lo, hi = min(a, b), max(a, b)
        return WeightExpansion(hi, ellipsoid_weights(hi, hi - lo))
    if cls != QuadClass.CONVEX:
        raise WrongKindError(f"({a},{b},{x},{y}) is not a convex quadrilateral: {cls.value}")
    negatives = ellipsoid_weights(x + y - a, y) + ellipsoid_weights(x + y - b, x)
    return WeightExpansion(x + y, negatives)
