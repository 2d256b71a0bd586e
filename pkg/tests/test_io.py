import json
from fractions import Fraction as F
from importlib import resources

import pytest

from divfan.base import BaseVariety, QDivisor
from divfan.geom import Cone, interval, polyhedron
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.io import (
    FanDocument, FormatError, base_from_json, base_to_json, divisor_from_json,
    divisor_to_json, document_from_json, document_to_json, dumps_document,
    load_document, loads_document, poly_from_json, poly_to_json,
    qdivisor_to_json, rat_from_json, rat_to_json, save_document,
    vec_from_json, vec_to_json, weights_from_json, weights_to_json,
)
from divfan.ppdiv import PPDivisor, WeightFunction


def test_rationals():
    assert rat_to_json(F(-1, 2)) == {"num": -1, "den": 2}
    assert rat_from_json(3) == 3
    assert rat_from_json({"num": 2, "den": -4}) == F(-1, 2)
    for bad in (True, 0.5, {"num": 1, "den": 0}, {"num": 1.0, "den": 2},
                {"num": 1}, "1/2", None, {"num": True, "den": 1}):
        with pytest.raises(FormatError):
            rat_from_json(bad)
    assert rat_from_json(rat_to_json(F(22, 7))) == F(22, 7)


def test_vectors():
    v = (F(1, 2), F(-3))
    assert vec_from_json(vec_to_json(v)) == v
    with pytest.raises(FormatError):
        vec_from_json(vec_to_json(v), dim=3)
    with pytest.raises(FormatError):
        vec_from_json({"x": 1})


def test_poly_round_trip():
    p = polyhedron([[0, 0], [1, F(1, 2)]], [[1, 0], [1, 1]])
    assert poly_from_json(poly_to_json(p)) == p
    e = TailedPolyhedron.empty(Cone.from_rays([[1, 0]], dim=2))
    back = poly_from_json(poly_to_json(e))
    assert back.is_empty and back.ambient_dim == 2 and back.tail == e.tail
    with pytest.raises(FormatError, match="kind"):
        poly_from_json({"dim": 1, "vertices": []})
    with pytest.raises(FormatError, match="dim"):
        poly_from_json({"kind": "proper", "vertices": [[0]]})
    with pytest.raises(FormatError, match="vertex"):
        poly_from_json({"kind": "proper", "dim": 1, "vertices": []})


def test_base_round_trip():
    bases = [
        BaseVariety.affine_line(["0", "1"]),
        BaseVariety.proj_line(["p0", "p1", "inf"]),
        BaseVariety.proj_space(2, [("D", 1), ("E", 2)], incidence=[("D", "E")]),
        BaseVariety.toric([Cone.from_rays([[1, 0], [0, 1]]),
                           Cone.from_rays([[0, 1], [-1, 0]])]),
    ]
    for b in bases:
        assert base_from_json(base_to_json(b)) == b
    with pytest.raises(FormatError, match="kind"):
        base_from_json({"kind": "elliptic"})
    with pytest.raises(FormatError):
        base_from_json({"kind": "toric", "max_cones": []})
    with pytest.raises(FormatError):
        base_from_json({"kind": "Pn", "primes": [{"name": "D"}]})


def test_divisor_round_trip(dg_gens):
    for d in dg_gens:
        assert divisor_from_json(divisor_to_json(d)) == d
        # without the embedded base the document base must be supplied
        bare = divisor_to_json(d, include_base=False)
        assert "base" not in bare
        assert divisor_from_json(bare, d.base) == d
    with pytest.raises(FormatError, match="no base"):
        divisor_from_json(divisor_to_json(dg_gens[0], include_base=False))
    other = BaseVariety.proj_line(["a", "b"])
    with pytest.raises(FormatError, match="disagrees"):
        divisor_from_json(divisor_to_json(dg_gens[0]), other)


def test_divisor_bad_payload(dg_gens):
    base = dg_gens[0].base
    with pytest.raises(FormatError):
        divisor_from_json({"dim": 1, "coeffs": {"nope": poly_to_json(interval(0, 1))}},
                          base)
    with pytest.raises(FormatError):
        divisor_from_json({"dim": 0, "coeffs": {}}, base)
    # coefficient tail must match the divisor tail; surfaced as FormatError
    with pytest.raises(FormatError):
        divisor_from_json({
            "dim": 1, "tail_rays": [[1]],
            "coeffs": {"p0": poly_to_json(interval(0, 1))}}, base)


def test_document_round_trip(dg_gens):
    doc = FanDocument(dg_gens[0].base, list(dg_gens),
                      cached={"note": "anything", "n": [1, 2]})
    back = document_from_json(document_to_json(doc))
    assert back.base == doc.base
    assert back.generators == doc.generators
    assert back.cached == doc.cached  # carried verbatim
    assert back.format_version == 1


def test_document_errors(dg_gens):
    obj = document_to_json(FanDocument(dg_gens[0].base, list(dg_gens)))
    obj["format_version"] = 2
    with pytest.raises(FormatError, match="unsupported format_version"):
        document_from_json(obj)
    with pytest.raises(FormatError, match="needs a base"):
        document_from_json({"format_version": 1})
    with pytest.raises(FormatError, match="malformed"):
        loads_document("{not json")
    with pytest.raises(FormatError, match="cached"):
        document_from_json({"format_version": 1,
                            "base": {"kind": "A1", "primes": []},
                            "cached": 7})


def test_document_files(tmp_path, dg_gens):
    doc = FanDocument(dg_gens[0].base, list(dg_gens))
    path = tmp_path / "dg.json"
    save_document(doc, path)
    back = load_document(path)
    assert back.generators == doc.generators
    # the on-disk form is plain JSON with the version stamp up front
    raw = json.loads(path.read_text())
    assert raw["format_version"] == 1


def test_weights_and_qdivisor():
    mu = WeightFunction.of({"a": 2, "b": F(1, 2)})
    assert weights_from_json(weights_to_json(mu)) == mu
    with pytest.raises(FormatError):
        weights_from_json([1, 2])
    d = QDivisor.of({"p": F(-1, 3)})
    assert qdivisor_to_json(d) == {"p": {"num": -1, "den": 3}}


def test_schema_file_is_valid_json():
    text = resources.files("divfan").joinpath(
        "schema/fan-document-v1.json").read_text()
    schema = json.loads(text)
    assert schema["properties"]["format_version"]["const"] == 1
