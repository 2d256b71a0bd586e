import pytest

from divfan.base import BaseVariety
from divfan.constructions import cotangent_fan, danilov_gizatullin, fan_p2
from divfan.fan import generate_fan
from divfan.geom.cone import Cone
from divfan.geom.polyhedron import TailedPolyhedron, interval, polyhedron, ray_poly
from divfan.ppdiv import PPDivisor


@pytest.fixture(scope="session")
def dg_gens():
    return danilov_gizatullin(2, 3)


@pytest.fixture(scope="session")
def dg_fan(dg_gens):
    return generate_fan(dg_gens)


@pytest.fixture(scope="session")
def cot_p2_gens():
    return cotangent_fan(fan_p2())


@pytest.fixture(scope="session")
def cot_p2_fan(cot_p2_gens):
    # the long pole of the whole suite; built once and shared
    return generate_fan(cot_p2_gens)


@pytest.fixture(scope="session")
def nonseparated_chart_fan():
    """Two torus charts of a non-separated K*-surface over the affine
    plane, with the open overlap divisor between them."""
    base = BaseVariety.toric([Cone.from_rays([[1, 0], [0, 1]])])
    ch1 = PPDivisor(base, Cone.from_rays([[1, 0]], dim=2), {
        "D[1,0]": polyhedron([[0, 0], [0, 1]], [[1, 0]]),
        "D[0,1]": polyhedron([[0, 1], [0, 2]], [[1, 0]])})
    ch2 = PPDivisor(base, Cone.from_rays([[-1, 0]], dim=2), {
        "D[1,0]": polyhedron([[0, 0], [0, 1]], [[-1, 0]]),
        "D[0,1]": polyhedron([[0, -1], [0, -2]], [[-1, 0]])})
    return generate_fan([ch1, ch2])


@pytest.fixture(scope="session")
def incomplete_p2_fan():
    """Four divisors over P^2 whose glued surface is separated but not
    complete: a complete base with an incomplete weight slice."""
    base = BaseVariety.proj_space(2, [("D", 1), ("E", 1)])
    zero = Cone.zero(1)
    pos = Cone.from_rays([[1]])
    neg = Cone.from_rays([[-1]])
    e1 = PPDivisor(base, neg, {"D": ray_poly([-1], [-1]), "E": ray_poly([0], [-1])})
    e2 = PPDivisor(base, zero, {"D": interval(-1, 0), "E": TailedPolyhedron.empty(zero)})
    e3 = PPDivisor(base, zero, {"D": TailedPolyhedron.empty(zero), "E": interval(0, 1)})
    e4 = PPDivisor(base, pos, {"D": ray_poly([0], [1]), "E": ray_poly([1], [1])})
    return generate_fan([e1, e2, e3, e4])
