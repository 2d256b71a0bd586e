"""Ready-made divisorial fans: the Danilov-Gizatullin family, rank-two
projectivizations over a toric base, and projectivized cotangent fans of
smooth complete toric surfaces.

Everything here returns generator lists; run generate_fan on them to close
under intersection and validate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .base import BaseVariety
from .geom import linalg as la
from .geom.cone import Cone
from .geom.fans import fan_is_complete
from .geom.linalg import primitive_signed, vec
from .geom.polyhedron import TailedPolyhedron
from .ppdiv import PPDivisor


# -- Danilov-Gizatullin -----------------------------------------------------

@dataclass(frozen=True)
class DGParams:
    r: int
    s: int

    def __post_init__(self):
        for name in ("r", "s"):
            v = getattr(self, name)
            try:
                iv = int(v)
            except (TypeError, ValueError):
                raise ValueError("parameters must be positive integers") from None
            if iv != v or iv < 1:
                raise ValueError("parameters must be positive integers")
            object.__setattr__(self, name, iv)


def danilov_gizatullin(r: int, s: int, points=("p0", "p1", "inf")) -> list[PPDivisor]:
    """Generators of the fan of a D-G surface with parameters (r, s):
    a compact interval divisor flanked by two half-line divisors over the
    projective line."""
    p = DGParams(r, s)
    p0, p1, pinf = points
    base = BaseVariety.proj_line(points)
    zero = Cone.zero(1)
    pos = Cone.from_rays([[1]])
    neg = Cone.from_rays([[-1]])
    inner = PPDivisor(base, zero, {
        p0: TailedPolyhedron.proper([[Fraction(-1, p.r)], [0]]),
        p1: TailedPolyhedron.proper([[0], [Fraction(1, p.s)]]),
        pinf: TailedPolyhedron.empty(zero),
    })
    upper = PPDivisor(base, pos, {
        p0: TailedPolyhedron.proper([[0]], [[1]]),
        p1: TailedPolyhedron.proper([[Fraction(1, p.s)]], [[1]]),
        pinf: TailedPolyhedron.proper([[0]], [[1]]),
    })
    lower = PPDivisor(base, neg, {
        p0: TailedPolyhedron.proper([[Fraction(-1, p.r)]], [[-1]]),
        p1: TailedPolyhedron.proper([[0]], [[-1]]),
        pinf: TailedPolyhedron.proper([[0]], [[-1]]),
    })
    return [inner, upper, lower]


# -- rank-two projectivizations ---------------------------------------------

@dataclass(frozen=True)
class Rank2Chart:
    """Linearization data of a split rank-two bundle on one maximal cone:
    the pair of characters of the two summands."""
    cone: Cone
    u1: tuple
    u2: tuple

    @classmethod
    def of(cls, cone: Cone, u1, u2) -> "Rank2Chart":
        return cls(cone, vec(u1), vec(u2))


def _chart_consistency(charts: list[Rank2Chart]):
    """On a shared ray the two jump values must agree as a pair, and when
    they differ the labelling of the larger one must agree too (the top
    flag point of the fiber over that orbit is well defined)."""
    for a, b in combinations(charts, 2):
        shared = set(a.cone.rays) & set(b.cone.rays)
        for v in shared:
            ja = (la.dot(a.u1, v), la.dot(a.u2, v))
            jb = (la.dot(b.u1, v), la.dot(b.u2, v))
            if sorted(ja) != sorted(jb):
                raise ValueError(f"inconsistent jumps {ja} vs {jb} on shared ray {v}")
            if ja[0] != ja[1] and ja != jb:
                raise ValueError(
                    f"jump labels swapped across shared ray {v}: {ja} vs {jb}")


def _halfspace_slice(sigma: Cone, w, c) -> TailedPolyhedron:
    return TailedPolyhedron.cone_poly(sigma).cut_halfspace(w, c)


def rank2_projectivization(charts, point_names=("P1", "P2")) -> list[PPDivisor]:
    """Generators of the fan of P(L1 + L2) over the toric variety of the
    chart cones, viewed along the big torus of the base. Two divisors per
    chart, one for each invariant section; coefficients live at the two
    marked points of the quotient projective line."""
    charts = [c if isinstance(c, Rank2Chart) else Rank2Chart.of(*c) for c in charts]
    if not charts:
        raise ValueError("at least one chart required")
    dim = charts[0].cone.dim
    for c in charts:
        if c.cone.dim != dim or len(c.u1) != dim or len(c.u2) != dim:
            raise ValueError("chart dimensions disagree")
        if c.cone.lines:
            raise ValueError("chart cones must be pointed")
    _chart_consistency(charts)
    name1, name2 = point_names
    base = BaseVariety.proj_line(point_names)
    out = []
    for c in charts:
        w = la.sub(c.u1, c.u2)
        for eps in (1, -1):
            we = la.smul(Fraction(eps), w)
            tail = c.cone.intersect(Cone.from_halfspaces(dim, [we]))
            out.append(PPDivisor(base, tail, {
                name2: _halfspace_slice(c.cone, we, eps),
                name1: _halfspace_slice(c.cone, we, -eps),
            }))
    return out


# -- projectivized cotangent fans ------------------------------------------

def _dual_basis(sigma: Cone):
    rows = [list(r) for r in sigma.rays]
    n = sigma.dim
    if len(rows) != n:
        raise ValueError("cone is not simplicial of full dimension")
    inv = _unimodular_inverse(rows)
    if inv is None:
        raise ValueError(f"cone with rays {sigma.rays} is not smooth")
    return la.transpose(la.mat(inv))  # row i pairs to 1 with ray i


def _unimodular_inverse(rows):
    n = len(rows)
    m = la.mat(rows)
    aug = [list(m[i]) + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    red, piv = la.rref(aug)
    if list(piv) != list(range(n)):
        return None
    inv = [row[n:] for row in red]
    det_unit = True
    for row in inv:
        for x in row:
            if x.denominator != 1:
                det_unit = False
    if not det_unit:
        return None
    return inv


def _perp_name(u) -> str:
    u = primitive_signed(vec(u))
    if len(u) == 2:
        d = primitive_signed((-u[1], u[0]))
        return "P[" + ",".join(str(int(x)) for x in d) + "]"
    return "P[" + ",".join(str(int(x)) for x in u) + "]"


def cotangent_fan(max_cones) -> list[PPDivisor]:
    """Generators of the fan of the projectivized cotangent bundle of a
    smooth complete toric variety: per maximal cone and dual basis index
    one divisor, its coefficients sitting at the hyperplanes orthogonal to
    the dual basis characters."""
    cones = list(max_cones)
    if not cones:
        raise ValueError("at least one cone required")
    if not fan_is_complete(cones):
        raise ValueError("the input fan must be complete")
    n = cones[0].dim
    if n < 2:
        raise ValueError("the cotangent construction needs a fan of rank at least 2")
    duals = [_dual_basis(s) for s in cones]
    prime_names = sorted({_perp_name(u) for us in duals for u in us})
    if n == 2:
        base = BaseVariety.proj_line(prime_names)
    else:
        normals = {name: primitive_signed(vec(u))
                   for us in duals for u in us for name in [_perp_name(u)]}
        extra = []
        for k in range(3, len(prime_names) + 1):
            for names in combinations(prime_names, k):
                if la.rank([normals[nm] for nm in names]) <= n - 1:
                    extra.append(frozenset(names))
        base = BaseVariety.proj_space(
            n - 1, [(nm, 1) for nm in prime_names], incidence=extra)
    out = []
    for sigma, us in zip(cones, duals):
        for i in range(n):
            tail = sigma.intersect(Cone.from_halfspaces(
                n, [la.sub(us[k], us[i]) for k in range(n) if k != i]))
            coeffs = {}
            for j in range(n):
                delta = int(i == j)
                poly = TailedPolyhedron.cone_poly(sigma)
                for k in range(n):
                    if k == i:
                        continue
                    poly = poly.cut_halfspace(la.sub(us[k], us[i]),
                                              delta - int(j == k))
                coeffs[_perp_name(us[j])] = poly
            out.append(PPDivisor(base, tail, coeffs))
    return out


# -- stock fans -------------------------------------------------------------

def fan_p1() -> list[Cone]:
    return [Cone.from_rays([[1]]), Cone.from_rays([[-1]])]


def fan_p2() -> list[Cone]:
    rays = [(1, 0), (0, 1), (-1, -1)]
    return [Cone.from_rays([rays[i], rays[(i + 1) % 3]]) for i in range(3)]


def fan_dp6() -> list[Cone]:
    rays = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    return [Cone.from_rays([rays[i], rays[(i + 1) % 6]]) for i in range(6)]


def fan_hirzebruch(a: int) -> list[Cone]:
    if a < 0:
        raise ValueError("twist must be nonnegative")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return [Cone.from_rays([rays[i], rays[(i + 1) % 4]]) for i in range(4)]
