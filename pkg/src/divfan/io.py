"""JSON persistence.

Every number is a rational serialized as {"num": int, "den": int} in lowest
terms with positive denominator; plain JSON integers are accepted on input.
Floats are rejected, they have no place in an exact calculus. Polyhedra,
bases, divisors and whole fan documents round-trip through these functions,
parse(serialize(x)) == x on canonical values.

The document format is versioned; see schema/fan-document-v1.json for the
published schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .base import BaseVariety
from .geom.cone import Cone
from .geom.polyhedron import TailedPolyhedron
from .ppdiv import PPDivisor, WeightFunction

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


# -- rationals and vectors ---------------------------------------------------

def rat_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rat_from_json(obj) -> Fraction:
    if isinstance(obj, bool):
        raise FormatError(f"expected a rational, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        raise FormatError("floating point numbers are not accepted; "
                          "use {num, den} pairs")
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        num, den = obj["num"], obj["den"]
        if not (isinstance(num, int) and isinstance(den, int)) or \
                isinstance(num, bool) or isinstance(den, bool):
            raise FormatError("num and den must be integers")
        if den == 0:
            raise FormatError("zero denominator")
        return Fraction(num, den)
    raise FormatError(f"expected a rational, got {obj!r}")


def vec_to_json(v) -> list:
    return [rat_to_json(x) for x in v]


def vec_from_json(obj, dim: int | None = None) -> tuple:
    if not isinstance(obj, list):
        raise FormatError(f"expected a coordinate list, got {obj!r}")
    v = tuple(rat_from_json(x) for x in obj)
    if dim is not None and len(v) != dim:
        raise FormatError(f"expected {dim} coordinates, got {len(v)}")
    return v


def _vec_list_from_json(obj, what: str, dim: int | None = None) -> list:
    if not isinstance(obj, list):
        raise FormatError(f"{what} must be a list")
    return [vec_from_json(x, dim) for x in obj]


# -- polyhedra ---------------------------------------------------------------

def poly_to_json(p: TailedPolyhedron) -> dict:
    return {
        "kind": "empty" if p.is_empty else "proper",
        "dim": p.ambient_dim,
        "vertices": [vec_to_json(v) for v in p.vertices],
        "tail_rays": [vec_to_json(r) for r in p.tail.rays],
    }


def poly_from_json(obj) -> TailedPolyhedron:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a polyhedron object, got {obj!r}")
    kind = obj.get("kind")
    if kind not in ("proper", "empty"):
        raise FormatError(f"polyhedron kind must be 'proper' or 'empty', got {kind!r}")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FormatError("polyhedron needs a positive integer 'dim'")
    rays = _vec_list_from_json(obj.get("tail_rays", []), "tail_rays", dim)
    if kind == "empty":
        return TailedPolyhedron.empty(Cone.from_rays(rays, dim=dim))
    verts = _vec_list_from_json(obj.get("vertices", []), "vertices", dim)
    if not verts:
        raise FormatError("a proper polyhedron needs at least one vertex")
    return TailedPolyhedron.proper(verts, rays)


# -- bases -------------------------------------------------------------------

def base_to_json(b: BaseVariety) -> dict:
    if b.kind in ("A1", "P1"):
        return {"kind": b.kind, "primes": [{"name": p.name} for p in b.primes]}
    if b.kind == "Pn":
        out = {
            "kind": "Pn",
            "n": b.dim,
            "primes": [{"name": p.name, "degree": rat_to_json(p.degree)}
                       for p in b.primes],
        }
        if b.extra_incidence:
            out["incidence"] = [sorted(g) for g in b.extra_incidence]
        return out
    if b.kind == "toric":
        return {
            "kind": "toric",
            "max_cones": [[vec_to_json(r) for r in c.rays] for c in b.fan],
        }
    raise FormatError(f"cannot serialize base kind {b.kind!r}")


def _prime_names_from_json(obj, with_degree: bool):
    if not isinstance(obj, list):
        raise FormatError("primes must be a list")
    out = []
    for entry in obj:
        if not isinstance(entry, dict) or "name" not in entry:
            raise FormatError(f"bad prime entry {entry!r}")
        if with_degree:
            out.append((str(entry["name"]), rat_from_json(entry.get("degree", 1))))
        else:
            out.append(str(entry["name"]))
    return out


def base_from_json(obj) -> BaseVariety:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a base object, got {obj!r}")
    kind = obj.get("kind")
    if kind == "A1":
        return BaseVariety.affine_line(_prime_names_from_json(obj.get("primes", []), False))
    if kind == "P1":
        return BaseVariety.proj_line(_prime_names_from_json(obj.get("primes", []), False))
    if kind == "Pn":
        n = obj.get("n")
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise FormatError("Pn base needs a positive integer 'n'")
        hyps = _prime_names_from_json(obj.get("primes", []), True)
        inc = obj.get("incidence", [])
        if not isinstance(inc, list):
            raise FormatError("incidence must be a list of name lists")
        return BaseVariety.proj_space(n, hyps, [tuple(map(str, g)) for g in inc])
    if kind == "toric":
        raw = obj.get("max_cones")
        if not isinstance(raw, list) or not raw:
            raise FormatError("toric base needs a nonempty max_cones list")
        cones = []
        for rays in raw:
            vs = _vec_list_from_json(rays, "cone rays")
            if not vs:
                raise FormatError("a maximal cone needs at least one ray")
            cones.append(Cone.from_rays(vs))
        return BaseVariety.toric(cones)
    raise FormatError(f"unknown base kind {kind!r}")


# -- divisors ----------------------------------------------------------------

def divisor_to_json(d: PPDivisor, include_base: bool = True) -> dict:
    out: dict = {}
    if include_base:
        out["base"] = base_to_json(d.base)
    out["dim"] = d.tail.dim
    out["tail_rays"] = [vec_to_json(r) for r in d.tail.rays]
    out["coeffs"] = {name: poly_to_json(d.coeff(name)) for name in d.support}
    return out


def divisor_from_json(obj, base: BaseVariety | None = None) -> PPDivisor:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a divisor object, got {obj!r}")
    embedded = obj.get("base")
    if embedded is not None:
        parsed = base_from_json(embedded)
        if base is None:
            base = parsed
        elif parsed != base:
            raise FormatError("divisor base disagrees with the document base")
    if base is None:
        raise FormatError("divisor has no base and none was supplied")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FormatError("divisor needs a positive integer 'dim'")
    tail = Cone.from_rays(_vec_list_from_json(obj.get("tail_rays", []), "tail_rays", dim),
                          dim=dim)
    raw = obj.get("coeffs", {})
    if not isinstance(raw, dict):
        raise FormatError("coeffs must be an object keyed by prime names")
    coeffs = {str(k): poly_from_json(v) for k, v in raw.items()}
    try:
        return PPDivisor(base, tail, coeffs)
    except (ValueError, KeyError) as e:
        raise FormatError(str(e)) from e


# -- weights and evaluations -------------------------------------------------

def weights_to_json(mu: WeightFunction) -> dict:
    return {k: rat_to_json(v) for k, v in mu.weights}


def weights_from_json(obj) -> WeightFunction:
    if not isinstance(obj, dict):
        raise FormatError("a weight function is an object keyed by prime names")
    return WeightFunction.of({str(k): rat_from_json(v) for k, v in obj.items()})


def qdivisor_to_json(d) -> dict:
    return {k: rat_to_json(v) for k, v in d.coeffs}


# -- documents ---------------------------------------------------------------

@dataclass
class FanDocument:
    base: BaseVariety
    generators: list = field(default_factory=list)
    cached: dict | None = None
    format_version: int = FORMAT_VERSION


def document_to_json(doc: FanDocument) -> dict:
    out = {
        "format_version": doc.format_version,
        "base": base_to_json(doc.base),
        "generators": [divisor_to_json(g, include_base=False) for g in doc.generators],
    }
    if doc.cached is not None:
        out["cached"] = doc.cached
    return out


def document_from_json(obj) -> FanDocument:
    if not isinstance(obj, dict):
        raise FormatError("a fan document is a JSON object")
    version = obj.get("format_version", FORMAT_VERSION)
    if not isinstance(version, int) or isinstance(version, bool):
        raise FormatError("format_version must be an integer")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version}; this build reads {FORMAT_VERSION}")
    if "base" not in obj:
        raise FormatError("fan document needs a base")
    base = base_from_json(obj["base"])
    raw = obj.get("generators", [])
    if not isinstance(raw, list):
        raise FormatError("generators must be a list")
    gens = [divisor_from_json(g, base) for g in raw]
    cached = obj.get("cached")
    if cached is not None and not isinstance(cached, dict):
        raise FormatError("cached must be an object")
    return FanDocument(base, gens, cached, version)


def dumps_document(doc: FanDocument) -> str:
    return json.dumps(document_to_json(doc), indent=2) + "\n"


def loads_document(text: str) -> FanDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed JSON: {e}") from e
    return document_from_json(obj)


def load_document(path) -> FanDocument:
    with open(path, "r", encoding="utf-8") as f:
        return loads_document(f.read())


def save_document(doc: FanDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_document(doc))
