"""Command-line frontend emitting deterministic JSON reports.

Subcommands: ``weights``, ``pack``, ``delta``, ``verdict``, ``filtered``,
``phi``.  Every report carries a schema version, an echo of the parsed
inputs, and provenance (package version, seed, tolerances); rationals are
serialized as "p/q" strings, never floats.  Identical invocations produce
byte-identical reports; wall-clock timing is therefore only included when
explicitly requested with ``--timing``.

Exit codes: 0 on success, 1 when ``--assert-knotted`` meets a verdict that
is not knotted, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
import time
from dataclasses import replace
from fractions import Fraction

from . import __version__, barcodes, filtered, torusmap
from .certificates import delta_ell_upper
from .cremona import min_packing_capacity, packs
from .domains import DomainError, QuadClass, classify_quadrilateral, parse_domain_spec
from .obstructions import VerdictStatus, knotted_verdict, product_verdict
from .weights import concave_weights, convex_expansion

SCHEMA = 1


class CliError(Exception):
    pass


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad rational {text!r}: {exc}") from None


def _parse_rat_list(text: str):
    text = text.strip()
    if not text:
        return []
    return [_parse_rat(c.strip()) for c in text.split(",")]


def _load_tolerances(path) -> torusmap.Tolerances:
    tol = torusmap.DEFAULT_TOLERANCES
    if not path:
        return tol
    overrides = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in tol.as_dict():
                raise CliError(f"{path}:{lineno}: unknown tolerance {key!r}")
            overrides[key] = float(value.strip())
    return replace(tol, **overrides)


def _report(args, command: str, inputs: dict, result, seed=None, started=None) -> int:
    body = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "result": result,
        "provenance": {
            "version": __version__,
            "seed": seed,
            "tolerances": args.tolerances.as_dict(),
        },
    }
    if args.timing and started is not None:
        body["timing_ms"] = round(1000.0 * (time.time() - started), 3)
    if args.pretty:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print(json.dumps(body, sort_keys=True, separators=(",", ":")))
    return 0


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_weights(args) -> int:
    started = time.time()
    vals = _parse_rat_list(args.quad)
    if len(vals) != 4:
        raise CliError("--quad takes four rationals a,b,x,y")
    a, b, x, y = vals
    cls = classify_quadrilateral(a, b, x, y)
    if cls == QuadClass.INVALID:
        raise CliError(f"invalid quadrilateral ({a},{b},{x},{y})")
    want_convex = args.convex or cls == QuadClass.CONVEX
    if want_convex and cls == QuadClass.CONCAVE:
        raise CliError("quadrilateral is concave; drop --convex")
    if want_convex:
        exp = convex_expansion(a, b, x, y)
        result = {
            "kind": "convex" if cls == QuadClass.CONVEX else "ellipsoid",
            "head": str(exp.head),
            "weights": exp.negatives.as_strings(),
        }
    else:
        seq = concave_weights(a, b, x, y)
        result = {"kind": cls.value, "weights": seq.as_strings()}
    inputs = {"quad": [str(v) for v in vals], "convex": bool(args.convex)}
    return _report(args, "weights", inputs, result, started=started)


def _cmd_pack(args) -> int:
    started = time.time()
    ws = _parse_rat_list(args.weights) if args.weights else []
    inputs = {"weights": [str(w) for w in ws]}
    if args.solve:
        tol = _parse_rat(args.tol)
        lo, hi = min_packing_capacity(ws, tol)
        result = {
            "solve": {"lower": str(lo), "upper": str(hi), "tolerance": str(tol)},
            "witness": packs(ws, hi).as_dict(),
        }
        inputs["solve"] = True
        return _report(args, "pack", inputs, result, started=started)
    if args.t is None:
        raise CliError("pack needs --t (or --solve)")
    t = _parse_rat(args.t)
    inputs["t"] = str(t)
    return _report(args, "pack", inputs, packs(ws, t).as_dict(), started=started)


def _cmd_delta(args) -> int:
    started = time.time()
    region = parse_domain_spec(args.domain)
    bound = delta_ell_upper(region)
    result = {
        "delta_ell_upper": str(bound.bound) if bound.exact else float(bound.bound),
        "route": bound.route,
        "exact": bound.exact,
        "certificate": bound.as_dict(),
    }
    return _report(args, "delta", {"domain": args.domain}, result, started=started)


def _cmd_verdict(args) -> int:
    started = time.time()
    region = parse_domain_spec(args.domain)
    if args.product:
        factors = _parse_rat_list(args.factors or "")
        if not factors:
            raise CliError("--product needs --factors b1,b2,...")
        verdict = product_verdict(region, factors)
        inputs = {"domain": args.domain, "factors": [str(f) for f in factors]}
    else:
        verdict = knotted_verdict(region)
        inputs = {"domain": args.domain}
    rc = _report(args, "verdict", inputs, verdict.as_dict(), started=started)
    if args.assert_knotted and verdict.status != VerdictStatus.KNOTTED:
        return 1
    return rc


def _cmd_filtered_selftest(args) -> int:
    started = time.time()
    seed = args.seed
    rng = random.Random(seed)
    mismatches = 0
    comparisons = 0
    for _ in range(args.cases):
        C = filtered.random_filtered_complex(rng, max_gens=args.max_gens)
        D = filtered.derived_complex(C)
        levels = C.levels()
        r = len(levels)
        for k in range(min(C.degrees()) - 1, max(C.degrees()) + 2):
            for si in range(1, r + 1):
                for ti in list(range(si, r + 1)) + [math.inf]:
                    s_lv = levels[si - 1]
                    t_lv = levels[int(ti) - 1] if ti != math.inf else math.inf
                    direct = filtered.inclusion_image_rank(C, k, s_lv, t_lv)
                    via = D.image_rank(k, si, ti)
                    comparisons += 1
                    if direct != via:
                        mismatches += 1
    result = {
        "cases": args.cases,
        "max_gens": args.max_gens,
        "rank_comparisons": comparisons,
        "mismatches": mismatches,
        "pass": mismatches == 0,
    }
    rc = _report(args, "filtered selftest",
                 {"cases": args.cases, "seed": seed}, result, seed=seed, started=started)
    return rc if mismatches == 0 else 1


def _cmd_filtered_barcode(args) -> int:
    started = time.time()
    region = parse_domain_spec(args.domain)
    delta = _parse_rat(args.delta)
    if args.product_factors:
        factors = _parse_rat_list(args.product_factors)
        model = barcodes.barcode_product(region, factors, delta)
    elif region.is_convex and not region.is_concave:
        model = barcodes.barcode_convex(region, delta)
    elif region.is_concave and not region.is_convex:
        model = barcodes.barcode_concave(region, delta)
    else:
        raise CliError("ellipsoid regions have no barcode window; pick another domain")
    level = Fraction(args.level) if "/" in args.level else float(args.level)
    degree = args.degree if args.degree is not None else model.degree
    result = {
        "model": model.as_dict(),
        "degree": degree,
        "level": str(level) if isinstance(level, Fraction) else level,
        "rank": filtered.homology_rank(model.complex, degree, level),
        "in_window": model.in_window(level),
    }
    inputs = {"domain": args.domain, "delta": args.delta, "level": args.level}
    return _report(args, "filtered barcode", inputs, result, started=started)


def _cmd_phi_eval(args) -> int:
    started = time.time()
    w = _complex_arg(args.w)
    z = _complex_arg(args.z)
    v1, v2 = torusmap.phi_flow(w, z)
    result = {
        "sphere_pair": [[float(x) for x in v1], [float(x) for x in v2]],
        "moment": list(torusmap.j_map((v1, v2))),
        "unit_residuals": [torusmap.unit_residual(v1), torusmap.unit_residual(v2)],
    }
    return _report(args, "phi eval", {"w": args.w, "z": args.z}, result, started=started)


def _cmd_phi_verify(args) -> int:
    started = time.time()
    seed = args.seed
    rep = torusmap.verify_phi(args.samples, seed, args.tolerances)
    rep["flows"] = torusmap.verify_flows(max(args.samples // 20, 50), seed + 1, args.tolerances)
    rc = _report(args, "phi verify", {"samples": args.samples, "seed": seed},
                 rep, seed=seed, started=started)
    return rc if rep["pass"] and rep["flows"]["pass"] else 1


def _cmd_phi_square(args) -> int:
    started = time.time()
    seed = args.seed
    rep = torusmap.square_report(
        args.c, args.samples, seed,
        symplectic_points=args.symplectic_points,
        tol=args.tolerances,
        collect_rows=bool(args.emit_csv),
    )
    rows = rep.pop("rows", None)
    if args.emit_csv:
        with open(args.emit_csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["re_w", "im_w", "re_z", "im_z",
                             "re_out1", "im_out1", "re_out2", "im_out2", "margin"])
            for w, z, z1, z2, margin in rows or []:
                writer.writerow([w.real, w.imag, z.real, z.imag,
                                 z1.real, z1.imag, z2.real, z2.imag, margin])
        rep["csv"] = args.emit_csv
    return _report(args, "phi square",
                   {"c": args.c, "samples": args.samples, "seed": seed},
                   rep, seed=seed, started=started)


def _complex_arg(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"complex argument {text!r} must be re,im")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise CliError(f"bad complex argument {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="toric",
        description="Embedding certificates and knottedness obstructions "
        "for four-dimensional toric domains.",
    )
    ap.add_argument("--json", action="store_true",
                    help="compact JSON report (the default)")
    ap.add_argument("--pretty", action="store_true", help="indent the JSON report")
    ap.add_argument("--timing", action="store_true",
                    help="include wall-clock timing (breaks byte-identical output)")
    ap.add_argument("--config", help="key=value file overriding tolerances")
    sub = ap.add_subparsers(dest="cmd", required=True)

    w = sub.add_parser("weights", help="weight data of a toric quadrilateral")
    w.add_argument("--quad", required=True, help="a,b,x,y as rationals")
    w.add_argument("--convex", action="store_true",
                   help="emit the head/negative-weight expansion")
    w.set_defaults(func=_cmd_weights)

    p = sub.add_parser("pack", help="ball-packing decision by Cremona reduction")
    p.add_argument("--t", help="target ball capacity")
    p.add_argument("--weights", default="", help="comma-separated ball capacities")
    p.add_argument("--solve", action="store_true",
                   help="bisect for the least admissible target capacity")
    p.add_argument("--tol", default="1/1000000", help="bisection tolerance")
    p.set_defaults(func=_cmd_pack)

    d = sub.add_parser("delta", help="upper bound for the ellipsoid dilation constant")
    d.add_argument("--domain", required=True, help="domain spec, e.g. polydisk:1,3/2")
    d.set_defaults(func=_cmd_delta)

    v = sub.add_parser("verdict", help="knottedness verdict for a domain")
    v.add_argument("--domain", required=True)
    v.add_argument("--assert-knotted", action="store_true",
                   help="exit 1 unless the verdict is knotted")
    v.add_argument("--product", action="store_true",
                   help="verdict for the product with an ellipsoid")
    v.add_argument("--factors", help="ellipsoid factor capacities b1,b2,...")
    v.set_defaults(func=_cmd_verdict)

    f = sub.add_parser("filtered", help="filtered-complex computations")
    fsub = f.add_subparsers(dest="filtered_cmd", required=True)
    st = fsub.add_parser("selftest", help="derived-complex rank equivalence suite")
    st.add_argument("--cases", type=int, default=200)
    st.add_argument("--max-gens", type=int, default=15)
    st.add_argument("--seed", type=int, default=None)
    st.set_defaults(func=_cmd_filtered_selftest)
    bc = fsub.add_parser("barcode", help="window-model rank for a domain")
    bc.add_argument("--domain", required=True)
    bc.add_argument("--delta", required=True, help="window shrink, rational")
    bc.add_argument("--degree", type=int, default=None)
    bc.add_argument("--level", required=True)
    bc.add_argument("--product-factors", help="capacities for the product model")
    bc.set_defaults(func=_cmd_filtered_barcode)

    ph = sub.add_parser("phi", help="the explicit sphere-product embedding")
    phsub = ph.add_subparsers(dest="phi_cmd", required=True)
    pe = phsub.add_parser("eval", help="evaluate the map at one point")
    pe.add_argument("--w", required=True, help="re,im")
    pe.add_argument("--z", required=True, help="re,im")
    pe.set_defaults(func=_cmd_phi_eval)
    pv = phsub.add_parser("verify", help="seeded residual summary")
    pv.add_argument("--samples", type=int, default=10000)
    pv.add_argument("--seed", type=int, default=None)
    pv.set_defaults(func=_cmd_phi_verify)
    ps = phsub.add_parser("square", help="containment report for the square embedding")
    ps.add_argument("--c", type=float, required=True)
    ps.add_argument("--samples", type=int, default=10000)
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--symplectic-points", type=int, default=0)
    ps.add_argument("--emit-csv", help="write sampled rows to a CSV file")
    ps.set_defaults(func=_cmd_phi_square)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.tolerances = _load_tolerances(args.config)
        if hasattr(args, "seed") and args.seed is None:
            args.seed = int(os.environ.get("TORIC_SEED", "0"))
        return args.func(args)
    except (CliError, DomainError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": str(exc)}, sort_keys=True),
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
