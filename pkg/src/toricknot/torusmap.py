"""Floating-point realization of the explicit product-of-spheres embedding.

The unit sphere pair S^2 x S^2 minus the antidiagonal carries two commuting
circle actions: simultaneous rotation about the z-axis, generated by
F1(v, w) = v3 + w3, and rotation of the pair about the axis v + w,
generated by F2(v, w) = |v + w|.  The map J = (2 - F2, F2 - F1) is the
moment map of the torus action; composing a Lagrangian section of J with
the two flows yields a symplectomorphism ``phi`` from the open ellipsoid
{2|w|^2 + |z|^2 < 8} onto the complement of the locus where v + w points
down.  There is also a direct real-analytic formula ``phi_closed`` for the
same map; agreement of the two routes is one of the module's verification
targets, and any disagreement beyond tolerance is reported as a finding
rather than reconciled.

Post-composing with the two-factor stereographic area chart ``sigma`` maps
into the open polydisk of side 4*pi.  Restricted to a square of side
2*pi*c the composition is the explicit knotted square embedding; inputs
whose moment image crosses the parabola y = x^2/2 - 3x + 4 may hit the
chart's polar locus and are flagged.

All sphere outputs carry unit-norm residuals at roundoff scale; the
centralized tolerances record what each verification asserts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Tuple

import numpy as np


class TorusMapError(ValueError):
    pass


class NearAntidiagonalError(TorusMapError):
    """v + w too short: the pair-rotation axis is undefined."""


class NearPoleError(TorusMapError):
    """A sphere factor is too close to the south pole of the area chart."""


class ParabolaSafetyError(TorusMapError):
    """Moment image not strictly below y = x^2/2 - 3x + 4: the image may
    meet the polar locus."""


@dataclass(frozen=True)
class Tolerances:
    unit_norm: float = 1e-12
    agreement: float = 1e-9
    symplectic: float = 1e-6
    fd_step: float = 1e-5
    near_pole: float = 1e-12
    antidiagonal: float = 1e-9

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()

SpherePair = Tuple[np.ndarray, np.ndarray]


def sphere_point(v1: float, v2: float, v3: float, tol: float = 1e-12) -> np.ndarray:
    v = np.array([v1, v2, v3], dtype=float)
    if abs(v @ v - 1.0) > tol:
        raise TorusMapError(f"not a unit vector: |v|^2 = {v @ v}")
    return v


def unit_residual(v: np.ndarray) -> float:
    return abs(float(v @ v) - 1.0)


def f1_value(pair: SpherePair) -> float:
    v, w = pair
    return float(v[2] + w[2])


def f2_value(pair: SpherePair) -> float:
    v, w = pair
    return float(np.linalg.norm(v + w))


def flow_f1(t: float, pair: SpherePair) -> SpherePair:
    """Simultaneous rotation of both factors about the z-axis by angle t."""
    v, w = pair
    c, s = math.cos(t), math.sin(t)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return rot @ v, rot @ w


def flow_f2(t: float, pair: SpherePair, tol: float = 1e-9) -> SpherePair:
    """Rotation of the pair (v, w) about the axis v + w by angle t.

    The midpoint (v+w)/2 is fixed; the difference rotates in the plane it
    spans with the cross products, which keeps both factors on the unit
    sphere and v + w itself unchanged.
    """
    v, w = pair
    axis = v + w
    nrm = float(np.linalg.norm(axis))
    if nrm < tol:
        raise NearAntidiagonalError(f"|v + w| = {nrm} below tolerance {tol}")
    c, s = math.cos(t), math.sin(t)
    mid = axis / 2.0
    half = (v - w) / 2.0
    cross = np.cross(w, v) / nrm
    return mid + c * half + s * cross, mid - c * half - s * cross


def j_map(pair: SpherePair) -> Tuple[float, float]:
    """Moment map (2 - |v+w|, |v+w| - v3 - w3) of the two circle actions."""
    f2 = f2_value(pair)
    return 2.0 - f2, f2 - f1_value(pair)


def section_s(x: float, y: float) -> SpherePair:
    """Lagrangian section of the moment map over x/2 + y/4 < 1, x, y >= 0."""
    if x < 0 or y < 0 or x / 2.0 + y / 4.0 >= 1.0:
        raise TorusMapError(f"({x}, {y}) outside the open moment triangle")
    sx = math.sqrt(x * (1.0 - x / 4.0))
    sy = math.sqrt(y * (1.0 - x / 2.0 - y / 4.0))
    z = 1.0 - (x + y) / 2.0
    return np.array([sx, sy, z]), np.array([-sx, sy, z])


def _check_phi_domain(w: complex, z: complex) -> None:
    if 2.0 * abs(w) ** 2 + abs(z) ** 2 >= 8.0:
        raise TorusMapError(
            f"(w, z) with 2|w|^2 + |z|^2 = {2 * abs(w) ** 2 + abs(z) ** 2} >= 8 "
            "is outside the open domain"
        )


def phi_flow(w: complex, z: complex) -> SpherePair:
    """The torus-equivariant map via the section and the two flows.

    Angles of zero coordinates are set to 0; the result does not depend on
    the undefined angle.
    """
    _check_phi_domain(w, z)
    theta = cmath.phase(w) if w != 0 else 0.0
    phi = cmath.phase(z) if z != 0 else 0.0
    pair = section_s(abs(w) ** 2 / 2.0, abs(z) ** 2 / 2.0)
    pair = flow_f2(theta - phi, pair)
    return flow_f1(phi, pair)


def _gamma(w: complex, z: complex) -> Tuple[complex, float]:
    aw = abs(w) ** 2
    az = abs(z) ** 2
    s1 = math.sqrt(8.0 - aw)
    rad = 8.0 - 2.0 * aw - az
    s2 = math.sqrt(max(rad, 0.0))
    den = 4.0 - aw
    first = s1 * ((rad * w) + w.conjugate() * z * z) / (8.0 * den) + 0.25j * z * s2
    third = 1.0 - (aw + az) / 4.0 - (s1 * s2) / (4.0 * den) * (w * z.conjugate()).imag
    return first, third


def phi_closed(w: complex, z: complex) -> SpherePair:
    """The same map through its direct real-analytic formula."""
    _check_phi_domain(w, z)
    if abs(w) ** 2 > 4.0 - 1e-9:
        raise TorusMapError("|w|^2 too close to 4: formula denominator vanishes")
    c1, t1 = _gamma(w, z)
    c2, t2 = _gamma(-w, z)
    return (
        np.array([c1.real, c1.imag, t1]),
        np.array([c2.real, c2.imag, t2]),
    )


def sigma_map(v: np.ndarray, tol: float = 1e-12) -> complex:
    """Area chart of the sphere minus its south pole onto the open disk of
    radius 2."""
    if v[2] <= -1.0 + tol:
        raise NearPoleError(f"v3 = {v[2]} at or below the polar tolerance")
    return math.sqrt(2.0 / (1.0 + v[2])) * complex(v[0], v[1])


def sigma_inverse(zeta: complex) -> np.ndarray:
    """Inverse chart: |zeta| < 2 back to the sphere."""
    r2 = abs(zeta) ** 2
    if r2 >= 4.0:
        raise TorusMapError(f"|zeta| = {math.sqrt(r2)} outside the open disk of radius 2")
    scale = math.sqrt(1.0 - r2 / 4.0)
    return np.array([zeta.real * scale, zeta.imag * scale, 1.0 - r2 / 2.0])


def g1_level(z1: complex, z2: complex) -> float:
    """F1 pulled back through the product chart."""
    return 2.0 - (abs(z1) ** 2 + abs(z2) ** 2) / 2.0


def g2_level(z1: complex, z2: complex) -> float:
    """F2 pulled back through the product chart."""
    a = math.sqrt(max(1.0 - abs(z1) ** 2 / 4.0, 0.0))
    b = math.sqrt(max(1.0 - abs(z2) ** 2 / 4.0, 0.0))
    horiz = a * z1 + b * z2
    vert = 2.0 - (abs(z1) ** 2 + abs(z2) ** 2) / 2.0
    return math.sqrt(abs(horiz) ** 2 + vert * vert)


def parabola_safe(x: float, y: float) -> bool:
    """Strictly below y = x^2/2 - 3x + 4, the moment image of the polar locus."""
    return y < x * x / 2.0 - 3.0 * x + 4.0


def embed_square(
    c: float, w: complex, z: complex, tol: Optional[Tolerances] = None
) -> Tuple[complex, complex]:
    """The explicit embedding of the square polydisk of capacity c.

    Inputs live in the closed polydisk |w|^2 <= 2c, |z|^2 <= 2c; outputs
    land in the open polydisk of radius 2 in each factor.  Inputs whose
    moment image is not strictly below the parabola are flagged: the image
    may meet the polar locus of the chart.  The proven window is
    1 < c < 4 - 2*sqrt(2).
    """
    tol = tol or DEFAULT_TOLERANCES
    x = abs(w) ** 2 / 2.0
    y = abs(z) ** 2 / 2.0
    slack = 1e-12
    if x > c + slack or y > c + slack:
        raise TorusMapError(f"({w}, {z}) outside the capacity-{c} square polydisk")
    if not parabola_safe(x, y):
        raise ParabolaSafetyError(
            f"moment image ({x}, {y}) not strictly below the parabola; "
            "the image may meet the polar locus"
        )
    v1, v2 = phi_closed(w, z)
    return sigma_map(v1, tol.near_pole), sigma_map(v2, tol.near_pole)


def embedding_as_real4(c: float) -> Callable[[np.ndarray], np.ndarray]:
    """The square embedding as a map of real 4-vectors, for differentiation."""

    def f(u: np.ndarray) -> np.ndarray:
        z1, z2 = embed_square(c, complex(u[0], u[1]), complex(u[2], u[3]))
        return np.array([z1.real, z1.imag, z2.real, z2.imag])

    return f


OMEGA0 = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def symplectic_residual(
    f: Callable[[np.ndarray], np.ndarray], point: np.ndarray, h: float = 1e-5
) -> float:
    """Max-abs entry of M^T O M - O for the central-difference Jacobian M."""
    cols = []
    for i in range(4):
        e = np.zeros(4)
        e[i] = h
        cols.append((f(point + e) - f(point - e)) / (2.0 * h))
    M = np.column_stack(cols)
    return float(np.max(np.abs(M.T @ OMEGA0 @ M - OMEGA0)))


# ---------------------------------------------------------------------------
# seeded verification samplers
# ---------------------------------------------------------------------------


def _sample_domain_points(rng: np.random.Generator, n: int, margin: float = 0.98):
    """Points of the open ellipsoid domain, uniform in moment coordinates."""
    out = []
    for _ in range(n):
        x = rng.uniform(0.0, 2.0 * margin)
        y = rng.uniform(0.0, (4.0 - 2.0 * x) * margin)
        th = rng.uniform(0.0, 2.0 * math.pi)
        ph = rng.uniform(0.0, 2.0 * math.pi)
        out.append(
            (
                math.sqrt(2.0 * x) * cmath.exp(1j * th),
                math.sqrt(2.0 * y) * cmath.exp(1j * ph),
            )
        )
    return out


def verify_phi(samples: int = 10000, seed: int = 0, tol: Optional[Tolerances] = None) -> dict:
    """Residual summary over seeded samples of the ellipsoid domain.

    Checks unit norms of all sphere outputs, the moment identity
    J(phi(w, z)) = (|w|^2/2, |z|^2/2), and pointwise agreement of the flow
    and closed-form routes.  The report carries maxima and the pass/fail
    verdict against the tolerances.
    """
    tol = tol or DEFAULT_TOLERANCES
    rng = np.random.default_rng(seed)
    max_unit = 0.0
    max_moment = 0.0
    max_agree = 0.0
    for w, z in _sample_domain_points(rng, samples):
        pf = phi_flow(w, z)
        pc = phi_closed(w, z)
        for v in (*pf, *pc):
            max_unit = max(max_unit, unit_residual(v))
        jx, jy = j_map(pf)
        max_moment = max(
            max_moment,
            abs(jx - abs(w) ** 2 / 2.0),
            abs(jy - abs(z) ** 2 / 2.0),
        )
        max_agree = max(
            max_agree,
            float(np.max(np.abs(pf[0] - pc[0]))),
            float(np.max(np.abs(pf[1] - pc[1]))),
        )
    return {
        "samples": samples,
        "seed": seed,
        "max_unit_norm_residual": max_unit,
        "max_moment_residual": max_moment,
        "max_cross_formula_disagreement": max_agree,
        "tolerances": tol.as_dict(),
        "pass": bool(
            max_unit < tol.unit_norm
            and max_moment < tol.agreement
            and max_agree < tol.agreement
        ),
    }


def verify_flows(samples: int = 200, seed: int = 1, tol: Optional[Tolerances] = None) -> dict:
    """Conservation and commutation residuals of the two flows."""
    tol = tol or DEFAULT_TOLERANCES
    rng = np.random.default_rng(seed)
    max_f1 = max_f2 = max_comm = 0.0
    for _ in range(samples):
        v = _random_sphere(rng)
        w = _random_sphere(rng)
        if float(np.linalg.norm(v + w)) < 1e-3:
            continue
        t = rng.uniform(-6.0, 6.0)
        s = rng.uniform(-6.0, 6.0)
        for flow in (flow_f1, flow_f2):
            moved = flow(t, (v, w))
            max_f1 = max(max_f1, abs(f1_value(moved) - f1_value((v, w))))
            max_f2 = max(max_f2, abs(f2_value(moved) - f2_value((v, w))))
        a = flow_f1(t, flow_f2(s, (v, w)))
        b = flow_f2(s, flow_f1(t, (v, w)))
        max_comm = max(
            max_comm,
            float(np.max(np.abs(a[0] - b[0]))),
            float(np.max(np.abs(a[1] - b[1]))),
        )
    return {
        "samples": samples,
        "seed": seed,
        "max_f1_drift": max_f1,
        "max_f2_drift": max_f2,
        "max_commutator": max_comm,
        "pass": bool(max_f1 < 1e-10 and max_f2 < 1e-10 and max_comm < 1e-10),
    }


def _random_sphere(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def square_report(
    c: float,
    samples: int = 10000,
    seed: int = 0,
    symplectic_points: int = 0,
    tol: Optional[Tolerances] = None,
    collect_rows: bool = False,
) -> dict:
    """Containment and image-description report for the square embedding.

    Samples the closed square polydisk of capacity c.  Counts inputs
    flagged by the parabola guard, tracks the containment margin
    2 - max |output| over the safe inputs, and checks the image levels
    G2 >= 2 - c and G2 - G1 <= c.  Optionally measures finite-difference
    symplecticity residuals at interior points.
    """
    tol = tol or DEFAULT_TOLERANCES
    rng = np.random.default_rng(seed)
    unsafe = 0
    pole_hits = 0
    min_margin = math.inf
    max_level_violation = -math.inf
    rows = []
    for _ in range(samples):
        x = rng.uniform(0.0, c)
        y = rng.uniform(0.0, c)
        th = rng.uniform(0.0, 2.0 * math.pi)
        ph = rng.uniform(0.0, 2.0 * math.pi)
        w = math.sqrt(2.0 * x) * cmath.exp(1j * th)
        z = math.sqrt(2.0 * y) * cmath.exp(1j * ph)
        try:
            z1, z2 = embed_square(c, w, z, tol)
        except ParabolaSafetyError:
            unsafe += 1
            continue
        except NearPoleError:
            pole_hits += 1
            continue
        margin = 2.0 - max(abs(z1), abs(z2))
        min_margin = min(min_margin, margin)
        # Image description: G2 >= 2 - c and G2 - G1 <= c, with c = 2/alpha.
        g1 = g1_level(z1, z2)
        g2 = g2_level(z1, z2)
        max_level_violation = max(
            max_level_violation, (2.0 - c) - g2, (g2 - g1) - c
        )
        if collect_rows:
            rows.append((w, z, z1, z2, margin))
    sympl = None
    if symplectic_points:
        f = embedding_as_real4(c)
        worst = 0.0
        count = 0
        while count < symplectic_points:
            x = rng.uniform(0.05 * c, 0.95 * c)
            y = rng.uniform(0.05 * c, 0.95 * c)
            if not parabola_safe(x, y):
                continue
            th = rng.uniform(0.0, 2.0 * math.pi)
            ph = rng.uniform(0.0, 2.0 * math.pi)
            u = np.array(
                [
                    math.sqrt(2.0 * x) * math.cos(th),
                    math.sqrt(2.0 * x) * math.sin(th),
                    math.sqrt(2.0 * y) * math.cos(ph),
                    math.sqrt(2.0 * y) * math.sin(ph),
                ]
            )
            worst = max(worst, symplectic_residual(f, u, tol.fd_step))
            count += 1
        sympl = worst
    report = {
        "c": c,
        "samples": samples,
        "seed": seed,
        "unsafe_inputs": unsafe,
        "pole_hits": pole_hits,
        "min_containment_margin": None if min_margin is math.inf else min_margin,
        "max_image_level_violation": None
        if max_level_violation == -math.inf
        else max_level_violation,
        "symplectic_residual": sympl,
        "tolerances": tol.as_dict(),
    }
    if collect_rows:
        report["rows"] = rows
    return report
