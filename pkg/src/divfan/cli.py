"""The divfan command line tool.

Subcommands: check, eval, slice, render, build, downgrade. Exit codes:
0 success (for check: the document is a divisorial fan), 1 mathematical
negative, 2 usage or parse error. --json switches check/eval/slice to
machine-readable output; build, downgrade and slice documents are JSON
already and render emits SVG.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions, io
from .base import BaseVariety
from .downgrade import DowngradeData, downgrade_cone
from .fan import (
    FanError,
    check_coherence,
    check_complete,
    check_separated,
    close_under_intersection,
    generate_fan,
    prime_slice,
    slice_fan,
    tail_slice,
)
from .geom.cone import Cone
from .ppdiv import WeightFunction, evaluate
from .render import render_slices


class UsageError(ValueError):
    pass


# -- small parsers -----------------------------------------------------------

def _parse_rat(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {tok!r}") from e


def _split_top(s: str, sep: str) -> list[str]:
    """Split on sep outside square brackets; prime names may contain
    commas, as in D[1,-1]."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced brackets in {s!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise UsageError(f"unbalanced brackets in {s!r}")
    out.append("".join(cur))
    return out


def _parse_vec(s: str) -> tuple:
    toks = [t for t in s.split(",") if t.strip()]
    if not toks:
        raise UsageError(f"empty vector {s!r}")
    return tuple(_parse_rat(t) for t in toks)


def _parse_matrix(s: str) -> list:
    rows = [r for r in s.split(";") if r.strip()]
    if not rows:
        raise UsageError(f"empty matrix {s!r}")
    out = [_parse_vec(r) for r in rows]
    if len({len(r) for r in out}) != 1:
        raise UsageError(f"ragged matrix {s!r}")
    return out


def _parse_int_matrix(s: str) -> list:
    m = _parse_matrix(s)
    for row in m:
        for x in row:
            if x.denominator != 1:
                raise UsageError(f"matrix entries must be integers, got {x}")
    return [tuple(int(x) for x in row) for row in m]


def _parse_mu(s: str) -> WeightFunction:
    weights = {}
    for part in _split_top(s, ","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"weights look like name=value, got {part!r}")
        name, _, val = part.partition("=")
        weights[name.strip()] = _parse_rat(val)
    return WeightFunction.of(weights)


def _load(path: str) -> io.FanDocument:
    try:
        return io.load_document(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# -- check -------------------------------------------------------------------

def _report_json(report) -> dict:
    return {
        "face_failures": [
            {"pair": [i, j], "reason": r.reason,
             "point_class": sorted(r.point_class) if r.point_class is not None else None}
            for i, j, r in report.face_failures],
        "pp_failures": [{"divisor": i, "verdict": v} for i, v in report.pp_failures],
        "complex_failures": [
            {"point_class": sorted(inc), "pair": [i, j]}
            for inc, i, j in report.complex_failures],
        "gluing_failures": [list(t) for t in report.gluing_failures],
        "skipped": list(report.skipped_checks),
    }


def cmd_check(args) -> int:
    doc = _load(args.file)
    try:
        fan = generate_fan(doc.generators)
    except FanError as e:
        if args.json:
            _print_json({"valid": False, **_report_json(e.report)})
        else:
            print(e.report.summary())
        return 1

    co = check_coherence(fan)
    sep = check_separated(fan)
    comp = check_complete(fan)

    if args.json:
        out = {
            "valid": True,
            "elements": len(fan),
            "generators": fan.generator_count,
            **_report_json(fan.validation),
            "coherent": co.status,
            "coherence_witness_pair": list(co.witness_pair) if co.witness_pair else None,
            "certificates": [
                {"pair": list(pair), "u": io.vec_to_json(cert.u),
                 "constants": {k: io.rat_to_json(v) for k, v in cert.constants}}
                for pair, cert in sorted(co.certificates.items())
            ] if co.status == "coherent" else None,
            "separated": sep.status,
            "separated_method": sep.method,
            "separated_witness": io.weights_to_json(sep.witness_mu) if sep.witness_mu else None,
            "separated_witness_pair": list(sep.witness_pair) if sep.witness_pair else None,
            "complete": comp.status,
            "complete_reason": comp.reason,
            "complete_witness": io.weights_to_json(comp.witness_mu) if comp.witness_mu else None,
        }
        _print_json(out)
    else:
        print(f"valid divisorial fan: {len(fan)} elements from {fan.generator_count} generators")
        for note in fan.validation.skipped_checks:
            print(f"  skipped: {note}")
        if co.status == "coherent":
            print(f"coherent: yes ({len(co.certificates)} pair certificates)")
        else:
            i, j = co.witness_pair
            print(f"coherent: no (witness pair #{i}, #{j})")
        line = f"separated: {sep.status} ({sep.method})"
        if sep.witness_mu is not None:
            i, j = sep.witness_pair
            line += f", witness mu = {_mu_str(sep.witness_mu)} on #{i}, #{j}"
        print(line)
        line = f"complete: {comp.status} ({comp.reason})"
        if comp.witness_mu is not None:
            line += f", witness mu = {_mu_str(comp.witness_mu)}"
        print(line)
    return 0


def _mu_str(mu: WeightFunction) -> str:
    if not mu.weights:
        return "0"
    return ", ".join(f"{k}={v}" for k, v in mu.weights)


# -- eval --------------------------------------------------------------------

def cmd_eval(args) -> int:
    doc = _load(args.file)
    if not doc.generators:
        raise UsageError("document has no generators")
    if not 0 <= args.divisor < len(doc.generators):
        raise UsageError(f"--divisor must be in 0..{len(doc.generators) - 1}")
    d = doc.generators[args.divisor]
    u = _parse_vec(args.u)
    if len(u) != d.tail.dim:
        raise UsageError(f"u needs {d.tail.dim} coordinates")
    try:
        val = evaluate(d, u)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if args.json:
        _print_json(io.qdivisor_to_json(val))
    else:
        if not val.coeffs:
            print("0")
        for name, c in val.coeffs:
            print(f"{name}: {c}")
    return 0


# -- slice -------------------------------------------------------------------

def _selected_slices(divisors, base, args):
    picks = []
    for name in args.prime or []:
        if not base.has_prime(name):
            raise UsageError(f"no prime named {name!r} on the base")
        picks.append((prime_slice(divisors, name), f"slice at {name}"))
    for spec in args.mu or []:
        mu = _parse_mu(spec)
        for name in mu.support:
            if not base.has_prime(name):
                raise UsageError(f"no prime named {name!r} on the base")
        picks.append((slice_fan(divisors, mu), f"slice at mu = {_mu_str(mu)}"))
    if args.tail:
        picks.append((tail_slice(divisors), "tail fan"))
    if not picks:
        picks.append((tail_slice(divisors), "tail fan"))
        for p in base.primes:
            picks.append((prime_slice(divisors, p.name), f"slice at {p.name}"))
    return picks


def cmd_slice(args) -> int:
    doc = _load(args.file)
    if not doc.generators:
        raise UsageError("document has no generators")
    divisors, _ = close_under_intersection(doc.generators)
    picks = _selected_slices(divisors, doc.base, args)
    out = []
    for s, title in picks:
        entry = {
            "slice": title,
            "mu": io.weights_to_json(s.mu),
            "cells": [{"divisor": i, "cell": io.poly_to_json(c)}
                      for i, c in enumerate(s.cells) if not c.is_empty],
            "is_complex": s.is_complex(),
            "covers": s.covers(),
        }
        out.append(entry)
    if args.json:
        _print_json(out)
    else:
        for entry in out:
            print(entry["slice"])
            for cell in entry["cells"]:
                print(f"  #{cell['divisor']}: {_poly_str(cell['cell'])}")
            print(f"  complex: {entry['is_complex']}, covers: {entry['covers']}")
    return 0


def _poly_str(pj: dict) -> str:
    def v(c):
        return "(" + ", ".join(f"{x['num']}" if x["den"] == 1 else f"{x['num']}/{x['den']}"
                               for x in c) + ")"
    verts = " ".join(v(c) for c in pj["vertices"])
    rays = " ".join(v(c) for c in pj["tail_rays"])
    return f"conv{{{verts}}}" + (f" + cone{{{rays}}}" if rays else "")


# -- render ------------------------------------------------------------------

def cmd_render(args) -> int:
    doc = _load(args.file)
    if not doc.generators:
        raise UsageError("document has no generators")
    divisors, _ = close_under_intersection(doc.generators)
    picks = _selected_slices(divisors, doc.base, args)
    try:
        svg = render_slices([s for s, _ in picks], [t for _, t in picks])
    except ValueError as e:
        raise UsageError(str(e)) from e
    _emit(svg, args.out)
    return 0


# -- build -------------------------------------------------------------------

_BUILTIN_FANS = {
    "p1": constructions.fan_p1,
    "p2": constructions.fan_p2,
    "dp6": constructions.fan_dp6,
}


def _load_fan_cones(spec: str) -> list[Cone]:
    if spec in _BUILTIN_FANS:
        return _BUILTIN_FANS[spec]()
    try:
        with open(spec, "r", encoding="utf-8") as f:
            obj = json.load(f)
    except OSError as e:
        raise UsageError(f"--fan is neither a builtin ({', '.join(sorted(_BUILTIN_FANS))}) "
                         f"nor a readable file: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON in {spec}: {e}") from e
    if isinstance(obj, dict) and obj.get("kind") == "toric":
        base = io.base_from_json(obj)
        return list(base.fan)
    if isinstance(obj, dict) and "max_cones" in obj:
        return [Cone.from_rays([io.vec_from_json(r) for r in rays])
                for rays in obj["max_cones"]]
    raise UsageError(f"{spec} holds neither a toric base nor a max_cones list")


def cmd_build(args) -> int:
    if args.what == "dg":
        r, s = _parse_rat(args.r), _parse_rat(args.s)
        gens = constructions.danilov_gizatullin(r, s)
    elif args.what == "cotangent":
        cones = _load_fan_cones(args.fan)
        try:
            gens = constructions.cotangent_fan(cones)
        except ValueError as e:
            raise UsageError(str(e)) from e
    elif args.what == "rank2":
        try:
            with open(args.data, "r", encoding="utf-8") as f:
                obj = json.load(f)
        except OSError as e:
            raise UsageError(f"cannot read {args.data}: {e}") from e
        except json.JSONDecodeError as e:
            raise UsageError(f"malformed JSON in {args.data}: {e}") from e
        if not isinstance(obj, dict) or "charts" not in obj:
            raise UsageError("rank2 data needs a charts list")
        charts = []
        for ch in obj["charts"]:
            try:
                cone = Cone.from_rays([io.vec_from_json(r) for r in ch["cone"]])
                charts.append((cone, io.vec_from_json(ch["u1"]), io.vec_from_json(ch["u2"])))
            except (KeyError, TypeError) as e:
                raise UsageError(f"bad chart entry {ch!r}") from e
        points = tuple(obj.get("points", ("P1", "P2")))
        try:
            gens = constructions.rank2_projectivization(charts, points)
        except ValueError as e:
            raise UsageError(str(e)) from e
    else:  # unreachable, argparse limits choices
        raise UsageError(f"unknown builder {args.what!r}")
    doc = io.FanDocument(gens[0].base, list(gens))
    _emit(io.dumps_document(doc), args.out)
    return 0


# -- downgrade ---------------------------------------------------------------

def cmd_downgrade(args) -> int:
    rays = _parse_matrix(args.cone)
    deg = _parse_int_matrix(args.deg)
    section = None
    if args.section:
        section = _parse_int_matrix(args.section)
        section = [tuple(r) for r in section]
    try:
        data = DowngradeData.from_deg([tuple(r) for r in deg], section)
        delta = Cone.from_rays(rays)
        d = downgrade_cone(delta, data)
    except ValueError as e:
        raise UsageError(str(e)) from e
    _emit(json.dumps(io.divisor_to_json(d), indent=2) + "\n", args.out)
    return 0


# -- entry point -------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="divfan",
        description="exact combinatorics of polyhedral divisors and divisorial fans")
    ap.add_argument("--json", action="store_true", default=False,
                    help="machine-readable output for check/eval/slice")
    sub = ap.add_subparsers(dest="command", required=True)

    j = dict(action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    p = sub.add_parser("check", help="validate a fan document and report verdicts")
    p.add_argument("file")
    p.add_argument("--json", **j)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("eval", help="evaluate a generator at a weight u")
    p.add_argument("file")
    p.add_argument("--u", required=True, help="comma-separated rationals, e.g. 1 or 1,-1/2")
    p.add_argument("--divisor", type=int, default=0, help="generator index (default 0)")
    p.add_argument("--json", **j)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("slice", help="slice the closed fan at a weight or prime")
    p.add_argument("file")
    p.add_argument("--prime", action="append", help="slice at this prime (repeatable)")
    p.add_argument("--mu", action="append",
                   help="slice at name=weight,... (repeatable)")
    p.add_argument("--tail", action="store_true", help="the tail fan")
    p.add_argument("--json", **j)
    p.set_defaults(fn=cmd_slice)

    p = sub.add_parser("render", help="render slices as SVG")
    p.add_argument("file")
    p.add_argument("--prime", action="append")
    p.add_argument("--mu", action="append")
    p.add_argument("--tail", action="store_true")
    p.add_argument("--out", help="write SVG here instead of stdout")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("build", help="emit a fan document for a known construction")
    bsub = p.add_subparsers(dest="what", required=True)
    b = bsub.add_parser("dg", help="Danilov-Gizatullin family on the projective line")
    b.add_argument("--r", required=True)
    b.add_argument("--s", required=True)
    b.add_argument("--out")
    b.set_defaults(fn=cmd_build)
    b = bsub.add_parser("cotangent", help="projectivized cotangent fan of a smooth complete toric surface")
    b.add_argument("--fan", required=True,
                   help="builtin name (p1, p2, dp6) or a JSON file with max_cones")
    b.add_argument("--out")
    b.set_defaults(fn=cmd_build)
    b = bsub.add_parser("rank2", help="projectivization of rank-2 toric bundle data")
    b.add_argument("--data", required=True, help="JSON file with charts")
    b.add_argument("--out")
    b.set_defaults(fn=cmd_build)

    p = sub.add_parser("downgrade", help="restrict a toric variety along a subtorus")
    p.add_argument("--cone", required=True, help="rays as rows: 1,0;0,1")
    p.add_argument("--deg", required=True, help="integer matrix rows: 1,1")
    p.add_argument("--section", help="integer section matrix, optional")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_downgrade)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"divfan: {e}", file=sys.stderr)
        return 2
    except io.FormatError as e:
        print(f"divfan: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"divfan: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
