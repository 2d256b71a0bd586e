from .cone import Cone
from .fans import common_refinement, covers_space, fan_is_complete, is_polyhedral_complex
from .linalg import SpaceMismatchError, Vec
from .polyhedron import (
    TailedPolyhedron,
    eval_min,
    face_at,
    intersect,
    interval,
    is_face_of,
    minkowski_sum,
    normal_fan,
    polyhedron,
    ray_poly,
    scale,
)
from .vectors import RatVec, mvec, nvec

__all__ = [
    "Cone",
    "RatVec",
    "SpaceMismatchError",
    "TailedPolyhedron",
    "Vec",
    "common_refinement",
    "covers_space",
    "eval_min",
    "face_at",
    "fan_is_complete",
    "intersect",
    "interval",
    "is_face_of",
    "is_polyhedral_complex",
    "minkowski_sum",
    "mvec",
    "normal_fan",
    "nvec",
    "polyhedron",
    "ray_poly",
    "scale",
]
