import random
from fractions import Fraction as F

import pytest

from divfan.geom.cone import Cone
from helpers import random_pointed_cone


def test_canonical_form_dedupes_and_sorts():
    a = Cone.from_rays([[2, 0], [1, 0], [0, 3], [1, 1]])
    # (1, 1) is not extremal in the quadrant
    assert a.rays == ((F(0), F(1)), (F(1), F(0)))
    assert a == Cone.from_rays([[0, 1], [1, 0]])
    assert hash(a) == hash(Cone.from_rays([[1, 0], [0, 1]]))


def test_zero_and_full():
    z = Cone.zero(2)
    assert z.is_zero() and z.cone_dim() == 0 and z.is_pointed
    f = Cone.full(2)
    assert f.is_full() and not f.is_pointed
    assert f.contains_cone(z)
    assert len(f.ieqs) == 0 and len(z.ieqs) == 0 and len(z.eqs) == 2


def test_halfspace_constructor():
    c = Cone.from_halfspaces(2, [[1, 0], [0, 1]])
    assert c == Cone.from_rays([[1, 0], [0, 1]])
    line = Cone.from_halfspaces(2, [], [[1, 1]])
    assert line.lines == ((F(1), F(-1)),)
    assert line.cone_dim() == 1 and not line.is_pointed


def test_contains_and_relint():
    c = Cone.from_rays([[1, 0], [1, 2]])
    assert c.contains([1, 1])
    assert c.contains([1, 0]) and not c.relint_contains([1, 0])
    assert c.relint_contains([1, 1])
    assert not c.contains([-1, 0])
    p = c.interior_point()
    assert c.relint_contains(p)


def test_interior_point_of_degenerate_cones():
    assert Cone.zero(3).interior_point() == (F(0), F(0), F(0))
    ray = Cone.from_rays([[0, -2]])
    assert ray.interior_point() == (F(0), F(-1))


def test_dual_round_trip():
    rng = random.Random(21)
    for _ in range(80):
        dim = rng.choice([1, 2, 2, 3])
        c = random_pointed_cone(rng, dim, max_rays=4)
        assert c.dual().dual() == c
    # with lineality
    c = Cone.from_rays([[1, 0, 0]], lines=[[0, 1, 0]], dim=3)
    assert c.dual().dual() == c


def test_hrep_vrep_round_trip():
    rng = random.Random(22)
    for _ in range(80):
        dim = rng.choice([2, 3])
        c = random_pointed_cone(rng, dim, max_rays=4)
        back = Cone.from_halfspaces(dim, c.ieqs, c.eqs)
        assert back == c
    for _ in range(80):
        dim = rng.choice([2, 3])
        hs = [[rng.randint(-2, 2) for _ in range(dim)] for _ in range(rng.randint(1, 4))]
        c = Cone.from_halfspaces(dim, hs)
        back = Cone.from_rays(c.rays, c.lines, dim)
        assert back == c


def test_intersection():
    quad = Cone.from_rays([[1, 0], [0, 1]])
    upper = Cone.from_halfspaces(2, [[-1, 2]])
    got = quad.intersect(upper)
    assert got == Cone.from_rays([[0, 1], [2, 1]])
    assert quad.intersect(quad) == quad
    opp = Cone.from_rays([[-1, 0], [0, -1]])
    assert quad.intersect(opp) == Cone.zero(2)


def test_faces_of_quadrant():
    quad = Cone.from_rays([[1, 0], [0, 1]])
    fs = quad.faces()
    assert len(fs) == 4  # itself, two rays, origin
    dims = sorted(f.cone_dim() for f in fs)
    assert dims == [0, 1, 1, 2]
    assert len(quad.facets()) == 2


def test_faces_with_lineality():
    c = Cone.from_rays([[1, 0, 0], [0, 1, 0]], lines=[[0, 0, 1]], dim=3)
    fs = c.faces()
    # every face contains the lineality space
    for f in fs:
        assert f.lines == c.lines
    assert len(fs) == 4


def test_faces_are_faces():
    rng = random.Random(23)
    for _ in range(30):
        c = random_pointed_cone(rng, 3, max_rays=5)
        for f in c.faces():
            assert c.contains_cone(f)
            # a face is tight on some valid inequality set
            assert f.cone_dim() <= c.cone_dim()


def test_image():
    quad = Cone.from_rays([[1, 0], [0, 1]])
    proj = quad.image([[1, 1]])
    assert proj == Cone.from_rays([[1]])
    collapse = Cone.from_rays([[1, -1]]).image([[1, 1]])
    assert collapse == Cone.zero(1)
    flip = quad.image([[0, 1], [1, 0]])
    assert flip == quad


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        Cone.from_rays([[1, 0], [1]])
    with pytest.raises(ValueError):
        Cone.from_rays([])
    with pytest.raises(ValueError):
        Cone.from_rays([[1, 0]]).intersect(Cone.from_rays([[1]]))
