import random

import pytest

from divfan.geom.cone import Cone
from divfan.geom.fans import (
    common_refinement, covers_space, fan_is_complete, is_polyhedral_complex,
)
from divfan.geom.polyhedron import TailedPolyhedron, interval, polyhedron, ray_poly
from helpers import random_pointed_cone


def test_common_refinement_single_cone():
    cells = common_refinement([Cone.from_rays([[1, 0], [0, 1]])])
    assert len(cells) == 4  # the quadrant and its three proper faces
    cells = common_refinement([Cone.full(1)])
    assert len(cells) == 1 and cells[0].lines


def test_common_refinement_quadrants():
    left = Cone.from_halfspaces(2, [[1, 0]])
    up = Cone.from_halfspaces(2, [[0, 1]])
    cells = common_refinement([left, up])
    maximal = [c for c in cells if c.cone_dim() == 2]
    assert len(maximal) == 3  # (+,+), (+,-), (-,+)
    keys = {c.key() for c in maximal}
    assert Cone.from_rays([[1, 0], [0, 1]]).key() in keys
    assert Cone.from_rays([[1, 0], [0, -1]]).key() in keys
    assert Cone.from_rays([[0, 1], [-1, 0]]).key() in keys
    # faces are included and deduplicated
    assert len([c for c in cells if c.is_zero()]) == 1


def test_common_refinement_pairwise_face_property():
    rng = random.Random(41)
    for _ in range(12):
        cones = [random_pointed_cone(rng, 2, max_rays=3) for _ in range(3)]
        cones = [c for c in cones if not c.is_zero()]
        if not cones:
            continue
        cells = common_refinement(cones)
        polys = [TailedPolyhedron.cone_poly(c) for c in cells if not c.lines]
        assert is_polyhedral_complex(polys)
        # a cell whose relative interior meets an input cone lies inside it
        for c in cones:
            for cell in cells:
                if c.contains(cell.interior_point()):
                    assert c.contains_cone(cell)


def test_is_polyhedral_complex():
    a = interval(0, 1)
    b = interval(1, 2)
    c = interval(0, 2)
    assert is_polyhedral_complex([a, b])
    assert not is_polyhedral_complex([a, c])
    assert is_polyhedral_complex([a, a])  # duplicates are fine
    e = TailedPolyhedron.empty(Cone.zero(1))
    assert is_polyhedral_complex([a, b, e])
    # two triangles sharing only part of an edge
    t1 = polyhedron([[0, 0], [2, 0], [0, 2]])
    t2 = polyhedron([[1, 0], [3, 0], [3, -2]])
    assert not is_polyhedral_complex([t1, t2])


def test_covers_space():
    pos = ray_poly([0], [1])
    neg = ray_poly([0], [-1])
    assert covers_space([pos, neg])
    assert not covers_space([pos])
    assert not covers_space([interval(0, 1), neg])
    assert not covers_space([])
    # lower-dimensional cells riding along do not break covering
    origin = polyhedron([[0]])
    assert covers_space([pos, neg, origin])


def test_covers_space_dim2():
    quads = [Cone.from_rays([[1, 0], [0, 1]]), Cone.from_rays([[0, 1], [-1, 0]]),
             Cone.from_rays([[-1, 0], [0, -1]]), Cone.from_rays([[0, -1], [1, 0]])]
    assert covers_space(quads)
    assert not covers_space(quads[:3])
    shifted = TailedPolyhedron.proper([[1, 0]], quads[0].rays)
    assert not covers_space([shifted])  # free boundary


def test_fan_is_complete():
    assert fan_is_complete([Cone.from_rays([[1]]), Cone.from_rays([[-1]])])
    assert not fan_is_complete([Cone.from_rays([[1]])])
    p2 = [Cone.from_rays([[1, 0], [0, 1]]), Cone.from_rays([[0, 1], [-1, -1]]),
          Cone.from_rays([[-1, -1], [1, 0]])]
    assert fan_is_complete(p2)
    assert not fan_is_complete(p2[:2])


def test_cells_with_lineality_rejected():
    with pytest.raises(ValueError):
        is_polyhedral_complex([Cone.from_halfspaces(2, [], [[1, 0]])])
