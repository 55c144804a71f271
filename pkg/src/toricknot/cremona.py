"""Ball-packing decisions by Cremona reduction.

``[a_1, ..., a_m] <= [t]`` (the packing relation: the disjoint balls of
capacities a_i embed into the ball of capacity t after arbitrarily small
dilation) is decided by reducing the vector (t; a_1, ..., a_m) with the
move

    (t; a1, a2, a3, ...) -> (2t - a1 - a2 - a3;
                             t - a2 - a3, t - a1 - a3, t - a1 - a2, ...)

applied to the three largest entries.  The reduction preserves
3t - sum(a_i) and t^2 - sum(a_i^2); both are asserted on every step of
every trace.  A vector is accepted once it is reduced (t >= a1 + a2 + a3
with all entries nonnegative) and has nonnegative square t^2 - sum(a_i^2);
it is rejected as soon as a negative entry appears or t drops below the
largest entry.  Every decision carries a replayable trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .domains import DomainError, as_rat
from .weights import WeightSeq

DEFAULT_MOVE_CAP = 10**6


class ReductionCapError(RuntimeError):
    """The reduction loop exceeded its move cap without deciding."""


@dataclass(frozen=True)
class MoveStep:
    """One Cremona move: which entries were hit and what came out.

    ``legal_hypothesis`` records whether t >= a1 + a2 (the largest pairwise
    sum), the hypothesis under which the move is an equivalence; the
    reduction applies the move regardless and only uses the flagged steps'
    conclusions through the conserved quantities.
    """

    indices: tuple
    t_before: Fraction
    before: tuple
    t_after: Fraction
    after: tuple
    legal_hypothesis: bool

    def as_dict(self) -> dict:
        return {
            "indices": list(self.indices),
            "t_before": str(self.t_before),
            "vector_before": [str(a) for a in self.before],
            "t_after": str(self.t_after),
            "vector_after": [str(a) for a in self.after],
            "legal_hypothesis": self.legal_hypothesis,
        }


@dataclass(frozen=True)
class PackingVector:
    """A vector (t; a_1, ..., a_m) subject to Cremona reduction."""

    t: Fraction
    weights: tuple
    trace: tuple = ()

    @staticmethod
    def make(t, weights: Iterable) -> "PackingVector":
        return PackingVector(as_rat(t), tuple(as_rat(w) for w in weights))

    def linear_invariant(self) -> Fraction:
        return 3 * self.t - sum(self.weights, Fraction(0))

    def quadratic_invariant(self) -> Fraction:
        return self.t * self.t - sum((w * w for w in self.weights), Fraction(0))

    def normalized(self) -> "PackingVector":
        """Sort descending, drop trailing zeros, pad back to length 3."""
        ws = sorted(self.weights, reverse=True)
        while ws and ws[-1] == 0:
            ws.pop()
        while len(ws) < 3:
            ws.append(Fraction(0))
        return PackingVector(self.t, tuple(ws), self.trace)


def cremona_move(v: PackingVector) -> PackingVector:
    """Apply the move to the three largest entries (ties by index order)."""
    ws = list(v.weights)
    while len(ws) < 3:
        ws.append(Fraction(0))
    order = sorted(range(len(ws)), key=lambda i: (-ws[i], i))
    i1, i2, i3 = order[:3]
    a1, a2, a3 = ws[i1], ws[i2], ws[i3]
    t2 = 2 * v.t - a1 - a2 - a3
    ws[i1] = v.t - a2 - a3
    ws[i2] = v.t - a1 - a3
    ws[i3] = v.t - a1 - a2
    step = MoveStep(
        indices=(i1, i2, i3),
        t_before=v.t,
        before=tuple(v.weights),
        t_after=t2,
        after=tuple(ws),
        legal_hypothesis=v.t >= max(a1 + a2, a1 + a3, a2 + a3),
    )
    return PackingVector(t2, tuple(ws), v.trace + (step,))


@dataclass(frozen=True)
class PackingResult:
    packs: bool
    reason: str
    final: PackingVector
    initial: PackingVector

    @property
    def trace(self):
        return self.final.trace

    def conserved(self) -> dict:
        return {
            "linear": str(self.initial.linear_invariant()),
            "quadratic": str(self.initial.quadratic_invariant()),
        }

    def verify_trace(self) -> bool:
        """Replay the trace and re-check both conserved quantities."""
        lin = self.initial.linear_invariant()
        quad = self.initial.quadratic_invariant()
        for step in self.trace:
            before = PackingVector(step.t_before, step.before)
            after = PackingVector(step.t_after, step.after)
            if before.linear_invariant() != lin or after.linear_invariant() != lin:
                return False
            if before.quadratic_invariant() != quad or after.quadratic_invariant() != quad:
                return False
            if cremona_move(before).weights != after.weights:
                return False
        return True

    def as_dict(self) -> dict:
        return {
            "result": "yes" if self.packs else "no",
            "reason": self.reason,
            "criterion": "cremona-reduction",
            "steps": [s.as_dict() for s in self.trace],
            "conserved": self.conserved(),
            "final_t": str(self.final.t),
            "final_vector": [str(a) for a in self.final.weights],
        }


def packs(weights, t, move_cap: int = DEFAULT_MOVE_CAP) -> PackingResult:
    """Decide the packing relation [weights] <= [t] by Cremona reduction.

    Decides the closed condition (embeddings exist after every dilation
    factor above 1), so boundary cases answer yes.
    """
    t = as_rat(t)
    if t < 0:
        raise DomainError("target capacity must be nonnegative")
    if isinstance(weights, WeightSeq):
        weights = tuple(weights)
    ws = tuple(as_rat(w) for w in weights)
    if any(w < 0 for w in ws):
        raise DomainError("weights must be nonnegative")
    v = PackingVector.make(t, ws)
    initial = v
    for _ in range(move_cap):
        v = v.normalized()
        a1, a2, a3 = v.weights[0], v.weights[1], v.weights[2]
        if v.weights[-1] < 0:
            return PackingResult(False, "negative-entry", v, initial)
        if v.t < a1:
            return PackingResult(False, "target-below-largest", v, initial)
        if v.t - (a1 + a2 + a3) >= 0:
            if v.quadratic_invariant() >= 0:
                return PackingResult(True, "reduced", v, initial)
            return PackingResult(False, "negative-square", v, initial)
        v = cremona_move(v)
    raise ReductionCapError(f"no decision after {move_cap} Cremona moves")


def min_packing_capacity(weights, tol=Fraction(1, 10**6)) -> tuple:
    """Bracket the least t with [weights] <= [t] by bisection.

    Returns (lo, hi) with hi - lo <= tol, packs(weights, lo) false unless
    lo is the exact optimum, and packs(weights, hi) true.
    """
    ws = [as_rat(w) for w in weights]
    if not ws or all(w == 0 for w in ws):
        return Fraction(0), Fraction(0)
    lo = max(ws)
    hi = sum(ws, Fraction(0))
    if packs(ws, lo).packs:
        return lo, lo
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if packs(ws, mid).packs:
            hi = mid
        else:
            lo = mid
    return lo, hi
