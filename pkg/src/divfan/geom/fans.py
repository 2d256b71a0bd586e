"""Collections of cones and cells: common refinement, polyhedral-complex
and covering tests.

common_refinement works on cones (fans in either lattice); the complex and
covering predicates work on TailedPolyhedron cells so that slices of
divisorial fans and tail fans go through the same code path. A Cone can be
passed wherever a cell is expected, it is read as the polyhedron with
vertex 0.
"""

from __future__ import annotations

from .cone import Cone
from .linalg import dot, primitive_signed
from .polyhedron import TailedPolyhedron


def _as_cell(c) -> TailedPolyhedron:
    if isinstance(c, Cone):
        if c.lines:
            raise ValueError("cells must have pointed tails; got a cone with lineality")
        return TailedPolyhedron.cone_poly(c)
    return c


# splits recur heavily across refinement calls; sharing the result objects
# also shares their face caches
_split_memo: dict = {}


def _split(piece: Cone, h, dim) -> tuple[Cone, Cone]:
    key = (piece.key(), h)
    got = _split_memo.get(key)
    if got is None:
        if len(_split_memo) > 100000:
            _split_memo.clear()
        hm = tuple(-x for x in h)
        got = (piece.intersect(Cone.from_halfspaces(dim, [h])),
               piece.intersect(Cone.from_halfspaces(dim, [hm])))
        _split_memo[key] = got
    return got


def common_refinement(cones) -> list[Cone]:
    """Coarsest simultaneous refinement of the given cones, returned with
    all faces, deduplicated.

    Every defining hyperplane of every input is collected; each input cone
    is split along each hyperplane that actually cuts it. The resulting
    pieces intersect pairwise in faces by construction.
    """
    cones = list(cones)
    if not cones:
        return []
    dim = cones[0].dim
    hypers: list = []
    seen = set()
    for c in cones:
        for h in list(c.ieqs) + list(c.eqs):
            p = primitive_signed(h)
            if p not in seen:
                seen.add(p)
                hypers.append(p)
    pieces: set[Cone] = set()
    for c in cones:
        chunks = [c]
        for h in hypers:
            nxt = []
            for piece in chunks:
                gens = piece.generators()
                has_pos = any(dot(h, g) > 0 for g in gens)
                has_neg = any(dot(h, g) < 0 for g in gens)
                if has_pos and has_neg:
                    nxt.extend(_split(piece, h, dim))
                else:
                    nxt.append(piece)
            chunks = nxt
        pieces.update(chunks)
    out: set[Cone] = set()
    for p in pieces:
        out.update(p.faces())
    return sorted(out, key=lambda c: (c.cone_dim(), c.key()))


def is_polyhedral_complex(cells) -> bool:
    """Pairwise intersections are faces of both sides. Empty cells are
    ignored; duplicate cells are fine."""
    cs = [_as_cell(c) for c in cells]
    cs = [c for c in cs if not c.is_empty]
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            inter = cs[i].intersect(cs[j])
            if not (inter.is_face_of(cs[i]) and inter.is_face_of(cs[j])):
                return False
    return True


def covers_space(cells) -> bool:
    """Do the cells cover the whole ambient space?

    Assumes the cells form a polyhedral complex. Then covering is
    equivalent to: the maximal cells are full dimensional and every facet
    of a maximal cell is shared with another maximal cell (no free
    boundary)."""
    cs = [_as_cell(c) for c in cells]
    cs = [c for c in cs if not c.is_empty]
    if not cs:
        return False
    dim = cs[0].ambient_dim
    maximal = []
    for c in cs:
        if any(d is not c and d.contains_poly(c) and d != c for d in cs):
            continue
        if any(d == c for d in maximal):
            continue
        maximal.append(c)
    if not maximal:
        return False
    for c in maximal:
        if c.dim() != dim:
            return False
    for c in maximal:
        for f in c.faces():
            if f.dim() != dim - 1:
                continue
            if not any(d.contains_poly(f) for d in maximal if d != c):
                return False
    return True


def fan_is_complete(cones) -> bool:
    """Does the fan given by these cones cover N_Q?"""
    maximal = [c for c in cones if not any(d.contains_cone(c) and d != c for d in cones)]
    return covers_space(maximal)
