"""Shared randomized-geometry helpers for the test suite.

The face-enumeration oracle here deliberately avoids the cone kernel: faces
are found through facet normals computed with a local Gaussian elimination
on generator subsets, then closed under intersection of tight sets. Only
plain Fraction arithmetic is used, so a defect in the double-description
sweep cannot leak into the expected values.
"""

import math
from fractions import Fraction
from itertools import combinations

from divfan.base import BaseVariety, QDivisor
from divfan.geom.cone import Cone
from divfan.geom.polyhedron import TailedPolyhedron
from divfan.ppdiv import PPDivisor

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- local exact linear algebra (no imports from divfan.geom.linalg) --------

def _echelon(rows):
    m = [list(r) for r in rows]
    if not m:
        return [], []
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def _rank(rows):
    red, _ = _echelon(rows)
    return len(red)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _solve_homogeneous(rows, ncols):
    """One-dimensional nullspace of the system rows . x = 0, or None when
    the nullspace dimension differs from one."""
    red, pivots = _echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    c0 = free[0]
    x = [_ZERO] * ncols
    x[c0] = _ONE
    for row, p in zip(red, pivots):
        x[p] = -row[c0]
    return tuple(x)


# -- brute-force face enumeration -------------------------------------------

def brute_face_subsets(p: TailedPolyhedron):
    """Faces of a proper polyhedron as pairs (vertex index set, ray index
    set) relative to its canonical generators."""
    verts = p.vertices
    rays = p.tail.rays
    gens = [(*v, _ONE) for v in verts] + [(*r, _ZERO) for r in rays]
    basis, _ = _echelon(gens)
    ldim = len(basis)

    facet_sets = set()
    for sub in combinations(range(len(gens)), ldim - 1):
        chosen = [gens[i] for i in sub]
        if _rank(chosen) != ldim - 1:
            continue
        # normal inside the span, orthogonal to the chosen generators
        system = [[_dot(g, b) for b in basis] for g in chosen]
        coeffs = _solve_homogeneous(system, ldim)
        if coeffs is None:
            continue
        n = tuple(sum(c * b[k] for c, b in zip(coeffs, basis))
                  for k in range(len(gens[0])))
        dots = [_dot(n, g) for g in gens]
        if all(d >= 0 for d in dots):
            pass
        elif all(d <= 0 for d in dots):
            dots = [-d for d in dots]
        else:
            continue
        facet_sets.add(frozenset(i for i, d in enumerate(dots) if d == 0))

    everything = frozenset(range(len(gens)))
    faces = {everything} | facet_sets
    frontier = list(faces)
    while frontier:
        a = frontier.pop()
        for b in list(faces):
            c = a & b
            if c not in faces:
                faces.add(c)
                frontier.append(c)

    nv = len(verts)
    out = set()
    for f in faces:
        vs = frozenset(i for i in f if i < nv)
        if not vs:
            continue  # at infinity: a face of the tail, not of p
        out.add((vs, frozenset(i - nv for i in f if i >= nv)))
    return out


def kernel_face_subsets(p: TailedPolyhedron):
    """The same representation read off from the kernel's face list."""
    vidx = {v: i for i, v in enumerate(p.vertices)}
    ridx = {r: i for i, r in enumerate(p.tail.rays)}
    out = set()
    for f in p.faces():
        out.add((frozenset(vidx[v] for v in f.vertices),
                 frozenset(ridx[r] for r in f.tail.rays)))
    return out


def subset_poly(p: TailedPolyhedron, vs, rs) -> TailedPolyhedron:
    return TailedPolyhedron.proper([p.vertices[i] for i in sorted(vs)],
                                   [p.tail.rays[i] for i in sorted(rs)])


# -- random generators -------------------------------------------------------

def random_pointed_cone(rng, dim, max_rays=3, bound=2) -> Cone:
    while True:
        k = rng.randint(0, max_rays)
        rays = [tuple(rng.randint(-bound, bound) for _ in range(dim))
                for _ in range(k)]
        c = Cone.from_rays([r for r in rays if any(r)], dim=dim)
        if not c.lines:
            return c


def random_polyhedron(rng, dim=None, max_verts=6, allow_rays=True) -> TailedPolyhedron:
    if dim is None:
        dim = rng.choice([1, 2, 2, 3])
    nv = rng.randint(1, max_verts)
    verts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                   for _ in range(dim)) for _ in range(nv)]
    tail = random_pointed_cone(rng, dim) if allow_rays else Cone.zero(dim)
    return TailedPolyhedron.proper(verts, tail.rays)


def random_divisor(rng, base: BaseVariety, dim, empty_rate=0.1) -> PPDivisor:
    if dim == 1:
        tail = rng.choice([Cone.zero(1), Cone.from_rays([[1]]),
                           Cone.from_rays([[-1]])])
    else:
        tail = random_pointed_cone(rng, dim, max_rays=2)
    coeffs = {}
    for nm in base.prime_names:
        r = rng.random()
        if r < 0.2:
            continue  # leave the trivial tail coefficient
        if r < 0.2 + empty_rate:
            coeffs[nm] = TailedPolyhedron.empty(tail)
        else:
            nv = rng.randint(1, 3)
            vs = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                        for _ in range(dim)) for _ in range(nv)]
            coeffs[nm] = TailedPolyhedron.proper(vs, tail.rays)
    return PPDivisor(base, tail, coeffs)


def small_vectors(rng, dim, bound=3):
    """All integer vectors with entries in [-bound, bound], shuffled."""
    if dim == 1:
        out = [(x,) for x in range(-bound, bound + 1)]
    else:
        ranges = [range(-bound, bound + 1)] * dim
        out = []
        def rec(prefix, rest):
            if not rest:
                out.append(tuple(prefix))
                return
            for x in rest[0]:
                rec(prefix + [x], rest[1:])
        rec([], ranges)
    rng.shuffle(out)
    return out


def dual_vector(rng, tp: TailedPolyhedron, dim, bound=3, nonzero=False):
    """An integer vector bounded below on tp, or None."""
    for cand in small_vectors(rng, dim, bound):
        if nonzero and not any(cand):
            continue
        if tp.eval_min(cand) != -math.inf:
            return cand
    return None


def sound_k(d: PPDivisor, w, u, kmin) -> int:
    """Smallest shift multiple past which the localization identity is
    guaranteed: far enough that u + k w selects its minimum on the
    w-minimal face of every coefficient."""
    ks = [Fraction(kmin)]
    for nm in d.support:
        c = d.coeff(nm)
        if c.is_empty:
            continue
        m = c.eval_min(w)
        face = c.face_at(w)
        umin = min(sum(a * b for a, b in zip(u, v)) for v in face.vertices)
        for v in c.vertices:
            wv = sum(a * b for a, b in zip(w, v))
            if wv > m:
                uv = sum(a * b for a, b in zip(u, v))
                ks.append(Fraction(umin - uv, wv - m))
    k = max(ks)
    k = int(k) + 1 if k == int(k) else math.ceil(k)
    return max(k, kmin)
