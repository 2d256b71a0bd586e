from fractions import Fraction as F

import pytest

from divfan.base import BaseVariety, UnsupportedBaseError
from divfan.fan import (
    Certificate, FanError, check_coherence, check_complete, check_separated,
    close_under_intersection, derive_intersection_certificate, enumerate_weights,
    generate_fan, intersect_divisors, is_face, prime_slice, slice_fan,
    tail_slice, verify_certificate,
)
from divfan.geom import Cone, interval, polyhedron, ray_poly
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.ppdiv import PPDivisor, WeightFunction, weighted_sum

P1 = BaseVariety.proj_line(["p0", "p1", "inf"])
ZERO1 = Cone.zero(1)
POS = Cone.from_rays([[1]])
NEG = Cone.from_rays([[-1]])


def test_intersect_divisors(dg_gens):
    inner, upper, lower = dg_gens
    c = intersect_divisors(inner, upper)
    assert c.coeff("p0") == polyhedron([[0]])
    assert c.coeff("p1") == polyhedron([[F(1, 3)]])
    assert c.coeff("inf").is_empty
    assert c.tail == ZERO1
    assert intersect_divisors(inner, upper) == intersect_divisors(upper, inner)
    other = BaseVariety.proj_line(["a", "b"])
    od = PPDivisor(other, ZERO1, {"a": interval(0, 1)})
    with pytest.raises(ValueError):
        intersect_divisors(inner, od)


def test_is_face(dg_gens):
    inner, upper, lower = dg_gens
    c = intersect_divisors(inner, upper)
    assert is_face(c, inner)
    assert is_face(c, upper)
    assert is_face(inner, inner)
    res = is_face(inner, upper)
    assert not res and res.reason


def test_is_face_degree_obstruction():
    # prime slice of the candidate face sits inside the big divisor's slice
    # but the locus bookkeeping rules the open embedding out
    b = BaseVariety.proj_line(["0", "inf"])
    big = PPDivisor(b, POS, {"0": ray_poly([0], [1]), "inf": ray_poly([1], [1])})
    small = PPDivisor(b, POS, {"0": ray_poly([0], [1]),
                               "inf": TailedPolyhedron.empty(POS)})
    res = is_face(small, big)
    assert not res
    assert res.point_class is not None
    assert is_face(small, small)


def test_is_face_toric_unsupported(nonseparated_chart_fan):
    d = nonseparated_chart_fan.divisors[0]
    with pytest.raises(UnsupportedBaseError):
        is_face(d, d)


def test_close_under_intersection(dg_gens):
    divisors, fm = close_under_intersection(dg_gens)
    assert len(divisors) == 7
    for (i, j), k in fm.items():
        assert divisors[k] == intersect_divisors(divisors[i], divisors[j])
    with pytest.raises(ValueError):
        close_under_intersection([])


def test_generate_fan_dg(dg_gens, dg_fan):
    assert len(dg_fan) == 7
    assert dg_fan.generators == tuple(dg_gens)
    assert dg_fan.validation.ok
    assert dg_fan.validation.summary() == "valid divisorial fan"
    assert not dg_fan.validation.gluing_failures
    assert dg_fan.prime_support == ("inf", "p0", "p1")
    assert dg_fan.intersection_of(0, 0) == dg_gens[0]
    assert dg_fan.intersection_of(0, 1) == intersect_divisors(*dg_gens[:2])
    assert dg_fan.intersection_of(1, 0) == dg_fan.intersection_of(0, 1)


def test_generate_fan_rejects_incident_pair():
    # crossing intervals are fine over the affine line, where the two
    # primes never meet, but the same data over incident lines in P^2
    # violates the complex condition at the common point
    a1 = BaseVariety.affine_line(["D", "E"])
    d1 = PPDivisor(a1, ZERO1, {"D": interval(-1, 0), "E": interval(0, 1)})
    d2 = PPDivisor(a1, ZERO1, {"D": interval(0, 1), "E": interval(-1, 0)})
    f = generate_fan([d1, d2])
    assert f.validation.ok

    p2 = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
    g1 = PPDivisor(p2, ZERO1, {"D": interval(-1, 0), "E": interval(0, 1)})
    g2 = PPDivisor(p2, ZERO1, {"D": interval(0, 1), "E": interval(-1, 0)})
    with pytest.raises(FanError) as exc:
        generate_fan([g1, g2])
    rep = exc.value.report
    assert rep.complex_failures and rep.face_failures
    assert "not a divisorial fan" in rep.summary()
    assert "do not meet in a common face" in rep.summary()


def test_generate_fan_toric_skips(nonseparated_chart_fan):
    notes = nonseparated_chart_fan.validation.skipped_checks
    assert any("undecided" in n for n in notes)
    assert nonseparated_chart_fan.validation.ok


def test_slices_dg(dg_fan):
    ts = tail_slice(dg_fan)
    assert ts.is_complex() and ts.covers()
    ps = prime_slice(dg_fan, "p0")
    assert ps.is_complex() and ps.covers()
    assert ps.labels == [f"#{i}" for i in range(7)]
    assert interval(F(-1, 2), 0) in ps.nonempty_cells


def test_slice_not_complex():
    a1 = BaseVariety.affine_line(["D", "E"])
    d1 = PPDivisor(a1, ZERO1, {"D": interval(-1, 0), "E": interval(0, 1)})
    d2 = PPDivisor(a1, ZERO1, {"D": interval(0, 1), "E": interval(-1, 0)})
    f = generate_fan([d1, d2])
    sl = slice_fan(f, WeightFunction.of({"D": 1, "E": 1}))
    # both weight-1 cells are [-1,1]: they overlap without being equal to
    # a common face, and the intersection point cell rides along
    assert sl.cells[0] == interval(-1, 1)
    assert sl.cells[1] == interval(-1, 1)
    assert not sl.is_complex()


def test_check_coherence_dg(dg_gens, dg_fan):
    co = check_coherence(dg_fan)
    assert co.status == "coherent"
    assert co.witness_pair is None
    for (i, j), cert in co.certificates.items():
        assert verify_certificate(dg_fan.divisors[i], dg_fan.divisors[j], cert)
    inner, upper, lower = dg_gens
    hand = Certificate.of((1,), {"p0": 0, "p1": F(1, 3), "inf": -1})
    assert verify_certificate(inner, upper, hand)
    assert not verify_certificate(inner, lower, hand)


def test_check_coherence_refuted():
    a1 = BaseVariety.affine_line(["D", "E"])
    d1 = PPDivisor(a1, ZERO1, {"D": interval(-1, 0), "E": interval(0, 1)})
    d2 = PPDivisor(a1, ZERO1, {"D": interval(0, 1), "E": interval(-1, 0)})
    f = generate_fan([d1, d2])
    co = check_coherence(f)
    assert co.status == "not_coherent"
    assert co.witness_pair is not None
    i, j = co.witness_pair
    assert (min(i, j), max(i, j)) not in co.certificates


def test_derive_intersection_certificate(dg_fan):
    check_coherence(dg_fan)
    certs = dg_fan.coherence_certificates

    def oriented(i, j):
        c = certs[(min(i, j), max(i, j))]
        if i > j:
            c = Certificate.of(tuple(-x for x in c.u),
                               {n: -v for n, v in c.constants})
        return c

    k01 = dg_fan.face_matrix[(0, 1)]
    d = derive_intersection_certificate(oriented(0, 2), oriented(1, 2))
    assert verify_certificate(dg_fan.divisors[k01], dg_fan.divisors[2], d)


def test_check_separated_curve(dg_fan):
    sep = check_separated(dg_fan)
    assert sep.status == "SEPARATED" and sep.method == "curve base"


def test_check_separated_coherent(incomplete_p2_fan):
    sep = check_separated(incomplete_p2_fan)
    assert sep.status == "SEPARATED" and sep.method == "coherent"


def test_check_separated_refuted(nonseparated_chart_fan):
    fan = nonseparated_chart_fan
    co = check_coherence(fan)
    assert co.status == "not_coherent"
    sep = check_separated(fan)
    assert sep.status == "NOT_SEPARATED" and sep.method == "slice witness"
    mu = sep.witness_mu
    assert mu.weight("D[1,0]") == 2 and mu.weight("D[0,1]") == 1
    i, j = sep.witness_pair
    lhs = weighted_sum(fan.intersection_of(i, j), mu)
    rhs = weighted_sum(fan.divisors[i], mu).intersect(
        weighted_sum(fan.divisors[j], mu))
    assert lhs.is_empty
    assert rhs == polyhedron([[0, 1]])


def test_chart_fan_prime_slices(nonseparated_chart_fan):
    # each prime slice is a complex on its own; the failure above is a
    # relation between the two slices, not a defect of either
    s10 = prime_slice(nonseparated_chart_fan, "D[1,0]")
    s01 = prime_slice(nonseparated_chart_fan, "D[0,1]")
    assert s10.is_complex() and s01.is_complex()
    assert not s10.covers() and not s01.covers()
    assert len(s10.nonempty_cells) == 3
    assert len(s01.nonempty_cells) == 2


def test_check_complete_dg(dg_fan):
    comp = check_complete(dg_fan)
    assert comp.status == "COMPLETE"


def test_check_complete_refuted(incomplete_p2_fan):
    comp = check_complete(incomplete_p2_fan)
    assert comp.status == "NOT_COMPLETE"
    assert comp.witness_mu.weight("D") == 1
    assert comp.witness_mu.weight("E") == 1
    for name in ("D", "E"):
        assert prime_slice(incomplete_p2_fan, name).covers()


def test_check_complete_affine_base():
    a1 = BaseVariety.affine_line(["D", "E"])
    d1 = PPDivisor(a1, ZERO1, {"D": interval(-1, 0), "E": interval(0, 1)})
    f = generate_fan([d1])
    comp = check_complete(f)
    assert comp.status == "NOT_COMPLETE"
    assert "base" in comp.reason


def test_check_complete_tail_gap(dg_gens):
    inner, upper, _ = dg_gens
    f = generate_fan([inner, upper])
    comp = check_complete(f)
    assert comp.status == "NOT_COMPLETE"
    assert "tail" in comp.reason


def test_enumerate_weights():
    b = BaseVariety.proj_line(["a", "b"])
    mus = enumerate_weights(b, bound=2)
    assert WeightFunction.of({}) in mus
    assert WeightFunction.of({"a": 2}) in mus
    assert WeightFunction.of({"a": 1, "b": 1}) not in mus  # points never meet
    assert len(mus) == len(set(mus))
    p2 = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
    mus2 = enumerate_weights(p2, bound=1)
    assert WeightFunction.of({"D": 1, "E": 1}) in mus2
