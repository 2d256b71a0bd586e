"""Exact combinatorics of polyhedral divisors and divisorial fans.

The building blocks live in divfan.geom (cones, tailed polyhedra, fans of
both), divisors on a base in divfan.base and divfan.ppdiv, and the fan
layer with its decision procedures in divfan.fan. divfan.downgrade
restricts toric data along a subtorus, divfan.constructions holds the
named builders, and divfan.io / divfan.render / divfan.cli are the
persistence and presentation surface.
"""

from .base import (
    BaseVariety,
    Prime,
    QDivisor,
    UnsupportedBaseError,
    ZERO_DIVISOR,
    divisor_degree,
    exists_effective_avoiding,
    is_principal,
)
from .constructions import (
    DGParams,
    Rank2Chart,
    cotangent_fan,
    danilov_gizatullin,
    fan_dp6,
    fan_hirzebruch,
    fan_p1,
    fan_p2,
    rank2_projectivization,
)
from .downgrade import (
    DowngradeData,
    downgrade_cone,
    downgrade_fan,
    maximal_cells,
    quotient_fan,
)
from .fan import (
    Certificate,
    CoherenceResult,
    CompleteResult,
    DivisorialFan,
    FaceResult,
    FanError,
    FanReport,
    SeparatedResult,
    Slice,
    check_coherence,
    check_complete,
    check_separated,
    close_under_intersection,
    derive_intersection_certificate,
    enumerate_weights,
    generate_fan,
    intersect_divisors,
    is_face,
    prime_slice,
    slice_fan,
    tail_slice,
    verify_certificate,
)
from .geom import (
    Cone,
    TailedPolyhedron,
    common_refinement,
    covers_space,
    fan_is_complete,
    interval,
    is_polyhedral_complex,
    polyhedron,
    ray_poly,
)
from .io import FanDocument, FormatError, load_document, loads_document, save_document
from .ppdiv import (
    FiberPoset,
    PPDivisor,
    WeightFunction,
    degree,
    evaluate,
    fiber_orbit_poset,
    fiber_polyhedron,
    is_pp,
    localization_identity_check,
    localize,
    weighted_sum,
)
from .render import render_slices

__version__ = "0.1.0"

__all__ = [
    "BaseVariety",
    "Certificate",
    "CoherenceResult",
    "CompleteResult",
    "Cone",
    "DGParams",
    "DivisorialFan",
    "DowngradeData",
    "FaceResult",
    "FanDocument",
    "FanError",
    "FanReport",
    "FiberPoset",
    "FormatError",
    "PPDivisor",
    "Prime",
    "QDivisor",
    "Rank2Chart",
    "SeparatedResult",
    "Slice",
    "TailedPolyhedron",
    "UnsupportedBaseError",
    "WeightFunction",
    "ZERO_DIVISOR",
    "check_coherence",
    "check_complete",
    "check_separated",
    "close_under_intersection",
    "common_refinement",
    "cotangent_fan",
    "covers_space",
    "danilov_gizatullin",
    "degree",
    "derive_intersection_certificate",
    "divisor_degree",
    "downgrade_cone",
    "downgrade_fan",
    "enumerate_weights",
    "evaluate",
    "exists_effective_avoiding",
    "fan_dp6",
    "fan_hirzebruch",
    "fan_is_complete",
    "fan_p1",
    "fan_p2",
    "fiber_orbit_poset",
    "fiber_polyhedron",
    "generate_fan",
    "intersect_divisors",
    "interval",
    "is_face",
    "is_polyhedral_complex",
    "is_pp",
    "is_principal",
    "load_document",
    "loads_document",
    "localization_identity_check",
    "localize",
    "maximal_cells",
    "polyhedron",
    "prime_slice",
    "quotient_fan",
    "rank2_projectivization",
    "ray_poly",
    "render_slices",
    "save_document",
    "slice_fan",
    "tail_slice",
    "verify_certificate",
    "weighted_sum",
]
